#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "strength/rng.hpp"

namespace strength::game {

enum class GameKind : uint8_t { kTicTacToe, kHex };

enum class Cell : uint8_t { kEmpty = 0, kFirst = 1, kSecond = 2 };
enum class Player : uint8_t { kFirst = 0, kSecond = 1 };

// Rank labels are 1-based with 1 strongest; this sentinel marks the synthetic
// weakest rank made of random legal actions.
constexpr int kRankInfinity = std::numeric_limits<int>::max();

struct GameSpec {
  GameKind kind = GameKind::kTicTacToe;
  int board_size = 3;  // Hex: 3..11; ignored for tic-tac-toe (fixed 3x3)
  int encoding_version = 1;

  int action_count() const {
    return kind == GameKind::kTicTacToe ? 9 : board_size * board_size;
  }
  // Layout: first-player plane, second-player plane, to-move flag, action
  // one-hot. See encode_features.
  int feature_length() const { return 3 * action_count() + 1; }
  int action_slot_offset() const { return 2 * action_count() + 1; }

  bool operator==(const GameSpec&) const = default;
};

GameSpec make_spec(GameKind kind, int board_size);
GameSpec make_spec(const std::string& kind_name, int board_size);
std::string kind_name(GameKind kind);

using Action = int;  // cell index in [0, action_count)

struct GameState {
  GameSpec spec;
  std::vector<Cell> cells;
  Player to_move = Player::kFirst;
  int move_count = 0;
  // +1 first-player win, -1 second-player win, 0 draw; empty while running.
  std::optional<int> outcome;

  bool is_terminal() const { return outcome.has_value(); }

  bool operator==(const GameState& other) const {
    return spec == other.spec && cells == other.cells &&
           to_move == other.to_move && move_count == other.move_count;
  }

  // Hex connectivity bookkeeping; kept in sync by apply.
  std::vector<int16_t> dsu_parent;
};

struct StateActionPair {
  GameState state;
  Action action = 0;
  int rank = 0;   // 1..n, or kRankInfinity
  int depth = 0;  // equals state.move_count

  StateActionPair() = default;
  StateActionPair(GameState s, Action a, int r)
      : state(std::move(s)), action(a), rank(r), depth(state.move_count) {}
};

using FeatureVector = std::vector<double>;

GameState initial_state(const GameSpec& spec);
std::vector<Action> legal_actions(const GameState& state);
GameState apply(const GameState& state, Action action);
std::optional<int> terminal_value(const GameState& state);
bool is_legal(const GameState& state, Action action);

FeatureVector encode_features(const GameSpec& spec, const StateActionPair& pair);

// The state-only prefix of encode_features: occupancy planes and the to-move
// flag, with every action slot left at zero. Full length, so a one-hot write
// at action_slot_offset() + a reproduces encode_features exactly.
FeatureVector encode_state_features(const GameSpec& spec, const GameState& state);

}  // namespace strength::game
