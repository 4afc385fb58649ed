#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strength/game.hpp"

namespace strength::data {

struct GameRecord {
  std::string id;
  game::GameSpec spec;
  int first_label = 0;   // tier/rank of the first player
  int second_label = 0;  // tier/rank of the second player
  std::vector<game::Action> moves;
  int outcome = 0;  // first-player view
  uint64_t seed = 0;
};

// One JSON object per line; first line is a versioned header. Field order is
// fixed: id, game, side_labels, moves, outcome, seed.
void write_records(const std::string& path, const game::GameSpec& spec,
                   const std::vector<GameRecord>& records);
std::vector<GameRecord> read_records(const std::string& path);

// Replays the move list from the initial state; throws if any move is
// illegal or the recorded outcome does not match the reached terminal state.
// Returns the state before each move (size == moves.size()).
std::vector<game::GameState> replay_states(const GameRecord& record);

void validate_replay(const GameRecord& record);

// Labeled games grouped by rank, with every state-action pair materialized
// for sampling. Ranks are sorted ascending (1 strongest first).
struct RankDataset {
  game::GameSpec spec;
  std::vector<int> rank_ids;
  std::vector<std::vector<GameRecord>> records;           // [rank_index]
  std::vector<std::vector<game::StateActionPair>> pairs;  // [rank_index]
  // Final outcome (first-player view) of the game each pair came from.
  std::vector<std::vector<int>> pair_outcomes;

  int rank_count() const { return static_cast<int>(rank_ids.size()); }
  int index_of(int rank_id) const;
};

RankDataset make_rank_dataset(const game::GameSpec& spec,
                              const std::vector<GameRecord>& records);

// Reads every *.jsonl file under `dir` (sorted by filename) into one dataset.
RankDataset load_rank_dataset(const std::string& dir);

// Drops all ranks not listed in `kept` (ids, not indices).
RankDataset filter_ranks(const RankDataset& dataset, const std::vector<int>& kept);

}  // namespace strength::data
