#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strength/records.hpp"
#include "strength/rng.hpp"
#include "strength/scorer.hpp"

namespace strength::train {

struct TrainConfig {
  int pairs_per_rank = 7;  // m
  double learning_rate = 0.01;
  // Step after which the learning rate is halved; 0 picks 10/13 of the total
  // (the published schedule's proportion).
  int lr_drop_step = 0;
  int steps = 0;
  bool include_r_infinity = true;
  double w_policy = 1.0;
  double w_value = 1.0;
  double w_strength = 1.0;
  double w_sl = 0.0;  // rank classification head (baseline), off by default
  int log_interval = 100;
  int checkpoint_interval = 0;  // 0 = only at the end
  uint64_t seed = 1;

  void validate() const;
};

struct RankBatch {
  int pairs_per_rank = 0;
  bool has_infinity = false;
  // rows[i] holds rank rank_ids[i]'s pairs; when has_infinity, the last row
  // holds the perturbed pairs and rank_ids has no entry for it.
  std::vector<int> rank_ids;
  std::vector<std::vector<game::StateActionPair>> rows;
  std::vector<std::vector<int>> outcomes;  // first-player view, per pair
  // Filled by scoring: one beta per pair, one mean per row.
  std::vector<std::vector<double>> betas;
  std::vector<double> row_means;
};

struct LossReport {
  int step = 0;
  double learning_rate = 0.0;
  double strength_loss = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double sl_loss = 0.0;
  std::vector<double> row_means;  // per rank, infinity row last when present
};

struct TrainResult {
  scorer::ScorerParams params;
  std::vector<LossReport> log;
};

// Same state, uniformly random legal action, rank label set to the infinity
// sentinel.
game::StateActionPair perturb_to_infinity(const game::StateActionPair& pair,
                                          Rng& rng);

// m pairs per rank, without replacement within the step. The infinity row
// draws source pairs uniformly over all ranks before perturbing.
RankBatch sample_rank_batch(const data::RankDataset& dataset,
                            const TrainConfig& config, Rng& rng);

// Scores the batch, applies one SGD update of
//   w_strength * L_strength + w_policy * L_policy + w_value * L_value
// (+ w_sl * L_rank when a rank head is present). Policy, value and rank
// losses are averaged over the non-infinity pairs; infinity pairs feed only
// the strength loss. The strength gradient reaches each pair's beta through
// the row mean with a 1/m factor.
std::pair<scorer::ScorerParams, LossReport> train_step(
    const scorer::ScorerParams& params, RankBatch& batch,
    const TrainConfig& config, double learning_rate);

// Full loop: init from config.seed, per-step sampling and updates, halving
// the learning rate after lr_drop_step. Writes an append-only text log (one
// row per logged step) and optional periodic checkpoints when paths are
// given.
TrainResult train(const data::RankDataset& dataset,
                  const scorer::ScorerSpec& scorer_spec,
                  const TrainConfig& config,
                  const std::string& log_path = "",
                  const std::string& checkpoint_path = "");

// Value target for a pair: game outcome seen from the player who made the
// action.
double value_target(const game::StateActionPair& pair, int outcome_first_view);

}  // namespace strength::train
