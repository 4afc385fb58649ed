#include "strength/datagen.hpp"

#include <filesystem>
#include <stdexcept>

namespace strength::datagen {

void DatagenConfig::validate() const {
  if (tiers.size() < 2) {
    throw std::invalid_argument("need at least 2 tiers");
  }
  bool budgets_decreasing = true;
  bool temps_increasing = true;
  for (size_t i = 1; i < tiers.size(); ++i) {
    if (tiers[i].simulations >= tiers[i - 1].simulations) {
      budgets_decreasing = false;
    }
    if (tiers[i].temperature <= tiers[i - 1].temperature) {
      temps_increasing = false;
    }
  }
  if (!budgets_decreasing && !temps_increasing) {
    throw std::invalid_argument(
        "tiers must have strictly decreasing budgets or strictly increasing "
        "temperatures");
  }
  if (train_games < 0 || candidate_games < 0 || query_games < 0) {
    throw std::invalid_argument("split sizes must be non-negative");
  }
}

std::unique_ptr<agent::Agent> make_tier_agent(const TierSpec& tier,
                                              const scorer::ScorerParams& params,
                                              uint64_t seed) {
  if (tier.simulations < 1) {
    throw std::invalid_argument("tier simulations must be >= 1");
  }
  return std::make_unique<agent::TierAgent>(tier.tier, tier.simulations,
                                            tier.temperature, params, seed);
}

std::vector<game::Action> random_opening(const game::GameSpec& spec, int plies,
                                         uint64_t seed) {
  Rng rng(seed);
  std::vector<game::Action> opening;
  game::GameState state = game::initial_state(spec);
  for (int k = 0; k < plies && !state.is_terminal(); ++k) {
    const auto legal = game::legal_actions(state);
    const game::Action move = legal[rng.uniform_index(legal.size())];
    opening.push_back(move);
    state = game::apply(state, move);
  }
  return opening;
}

data::GameRecord play_game(agent::Agent& first, agent::Agent& second,
                           const game::GameSpec& spec, uint64_t seed,
                           const std::string& id, int first_label,
                           int second_label,
                           const std::vector<game::Action>* opening) {
  first.reseed(mix_seed(seed, 1));
  second.reseed(mix_seed(seed, 2));

  data::GameRecord record;
  record.id = id;
  record.spec = spec;
  record.first_label = first_label;
  record.second_label = second_label;
  record.seed = seed;

  game::GameState state = game::initial_state(spec);
  if (opening != nullptr) {
    for (const game::Action move : *opening) {
      if (state.is_terminal()) break;
      record.moves.push_back(move);
      state = game::apply(state, move);
    }
  }
  while (!state.is_terminal()) {
    agent::Agent& mover =
        state.to_move == game::Player::kFirst ? first : second;
    const game::Action move = mover.act(state);
    record.moves.push_back(move);
    state = game::apply(state, move);
  }
  record.outcome = *game::terminal_value(state);
  return record;
}

DatasetSummary generate_dataset(const DatagenConfig& config,
                                const scorer::ScorerParams& params,
                                const std::string& out_dir) {
  namespace fs = std::filesystem;
  config.validate();

  const char* split_names[3] = {"train", "candidate", "query"};
  const int split_sizes[3] = {config.train_games, config.candidate_games,
                              config.query_games};
  for (const char* name : split_names) {
    fs::create_directories(fs::path(out_dir) / name);
  }

  DatasetSummary summary;
  for (const TierSpec& tier : config.tiers) {
    std::unique_ptr<agent::Agent> a = make_tier_agent(tier, params, 0);
    std::unique_ptr<agent::Agent> b = make_tier_agent(tier, params, 0);

    int game_index = 0;
    for (int split = 0; split < 3; ++split) {
      std::vector<data::GameRecord> records;
      records.reserve(split_sizes[split]);
      for (int g = 0; g < split_sizes[split]; ++g, ++game_index) {
        const uint64_t game_seed = mix_seed(
            config.seed,
            (static_cast<uint64_t>(tier.tier) << 32) | game_index);
        const std::string game_id = "t" + std::to_string(tier.tier) + "-g" +
                                    std::to_string(game_index);
        records.push_back(play_game(*a, *b, config.spec, game_seed, game_id,
                                    tier.tier, tier.tier));
      }
      const std::string path =
          (fs::path(out_dir) / split_names[split] /
           ("tier_" + std::to_string(tier.tier) + ".jsonl"))
              .string();
      data::write_records(path, config.spec, records);
      summary.files.push_back(path);
      summary.total_games += static_cast<int>(records.size());
    }
  }
  return summary;
}

}  // namespace strength::datagen
