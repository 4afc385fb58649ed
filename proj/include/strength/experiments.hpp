#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "strength/agents.hpp"
#include "strength/datagen.hpp"
#include "strength/elo.hpp"
#include "strength/profile.hpp"
#include "strength/training.hpp"

namespace strength::eval {

// --- small statistics helpers ---------------------------------------------

// Spearman rank correlation with average ranks on ties.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// 95% normal-approximation interval for a proportion.
std::pair<double, double> proportion_ci(double p, int n);

// Two-proportion z statistic (pooled).
double two_proportion_z(double wins_a, int n_a, double wins_b, int n_b);

// --- agent construction -----------------------------------------------------

// Agent spec strings: "tier:<k>:<sims>[:<temperature>]", "vanilla[:<sims>]",
// "se:<rank>[:<sims>[:<c1>]]" (needs a profile), "sa:<z>[:<sims>[:<R>]]".
std::unique_ptr<agent::Agent> make_agent(
    const std::string& text, const scorer::ScorerParams& params,
    const infer::StrengthProfile* profile, int default_sims, double c_puct,
    double default_c1);

// --- tournaments ------------------------------------------------------------

struct MatchResult {
  int wins_first = 0;  // counted for agents[i] playing first
  double score_a = 0.0;
};

// Every unordered pair plays games_per_pair games, colors split evenly
// (odd remainders give the lower-index agent the extra first-player game).
// Tic-tac-toe draws score 0.5 for each side.
WinTable round_robin(const std::vector<agent::Agent*>& agents,
                     const game::GameSpec& spec, int games_per_pair,
                     uint64_t seed, int opening_plies = 2);

// Plays `games` between a and b with colors alternating (a first on even
// game indices); returns a's score (wins + half draws). Consecutive games
// with opposite colors share a seeded random opening, so deterministic
// agents still produce varied, color-balanced matches.
double play_match(agent::Agent& a, agent::Agent& b, const game::GameSpec& spec,
                  int games, uint64_t seed, int opening_plies = 2);

// --- paper-shaped experiments ----------------------------------------------

struct SweepCell {
  int target_rank = 0;
  double score = 0.0;  // target agent's score vs the baseline
  int games = 0;
  double win_rate = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  double spearman = 0.0;  // rank index vs win rate
};

// Strength-targeted agents (SE at each target rank, or SA at the given z per
// rank) against a fixed SE baseline at baseline_rank.
SweepResult strength_sweep(const scorer::ScorerParams& params,
                           const infer::StrengthProfile& profile,
                           search::SearchMode mode,
                           const std::vector<int>& target_ranks,
                           const std::vector<double>& sa_z_by_target,
                           int baseline_rank, const game::GameSpec& spec,
                           int games_per_cell, int simulations, double c_puct,
                           double c1, uint64_t seed, int opening_plies = 2,
                           bool per_depth_targets = false);

struct MoveAccuracy {
  int rank = 0;
  int positions = 0;
  int matches = 0;
  double accuracy = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
};

// Fraction of recorded positions where the configured search picks the
// recorded move. SE targets the given rank; SA samples its decision.
MoveAccuracy move_prediction_accuracy(
    const scorer::ScorerParams& params, const infer::StrengthProfile* profile,
    search::SearchMode mode, int rank,
    const std::vector<data::GameRecord>& games, int simulations, double c_puct,
    double c1, double sa_z, double sa_filter_ratio, uint64_t seed);

// Bisects z until SA-MCTS at z scores about 50% against the SE agent at the
// given rank.
double calibrate_sa_z(const scorer::ScorerParams& params,
                      const infer::StrengthProfile& profile, int rank,
                      const game::GameSpec& spec, int simulations,
                      double c_puct, double c1, int games_per_probe,
                      int iterations, uint64_t seed, int opening_plies = 2,
                      bool per_depth_targets = false);

struct LimitedRankResult {
  scorer::ScorerParams params;
  infer::StrengthProfile profile;  // built from the full candidate set
  infer::AccuracyCurve curve;      // over the full query set
  bool betas_strictly_descending = false;
};

// Retrains from scratch on the kept tiers only, then profiles and predicts
// across every tier.
LimitedRankResult limited_rank_experiment(
    const data::RankDataset& train_set, const data::RankDataset& candidate,
    const data::RankDataset& query, const std::vector<int>& kept_tiers,
    const scorer::ScorerSpec& scorer_spec, const train::TrainConfig& config,
    const std::vector<int>& game_counts, const infer::PredictionConfig& pred);

// Mean strength score of candidate pairs perturbed to random legal actions
// (the synthetic weakest rank), for profile ordering checks.
double infinity_rank_mean(const scorer::ScorerParams& params,
                          const data::RankDataset& candidate, uint64_t seed);

}  // namespace strength::eval
