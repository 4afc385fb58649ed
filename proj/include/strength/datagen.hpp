#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "strength/agents.hpp"
#include "strength/records.hpp"

namespace strength::datagen {

struct TierSpec {
  int tier = 0;  // 1 = strongest
  int simulations = 1;
  double temperature = 0.3;
};

struct DatagenConfig {
  game::GameSpec spec;
  std::vector<TierSpec> tiers;
  int train_games = 0;
  int candidate_games = 0;
  int query_games = 0;
  uint64_t seed = 0;

  // Budgets strictly decreasing or temperatures strictly increasing across
  // tiers.
  void validate() const;
};

std::unique_ptr<agent::Agent> make_tier_agent(const TierSpec& tier,
                                              const scorer::ScorerParams& params,
                                              uint64_t seed);

// Alternating play to termination. Both agents are reseeded from the game
// seed, so the record is a pure function of (agents' definitions, seed).
// An optional opening prefix is applied before the agents move; it becomes
// part of the recorded move list.
data::GameRecord play_game(agent::Agent& first, agent::Agent& second,
                           const game::GameSpec& spec, uint64_t seed,
                           const std::string& id, int first_label,
                           int second_label,
                           const std::vector<game::Action>* opening = nullptr);

// Uniformly random legal opening prefix (stops early at terminal states).
std::vector<game::Action> random_opening(const game::GameSpec& spec, int plies,
                                         uint64_t seed);

// Self-play per tier, split disjointly into train/candidate/query record
// files under out_dir (train/tier_<k>.jsonl etc.).
struct DatasetSummary {
  std::vector<std::string> files;
  int total_games = 0;
};

DatasetSummary generate_dataset(const DatagenConfig& config,
                                const scorer::ScorerParams& params,
                                const std::string& out_dir);

}  // namespace strength::datagen
