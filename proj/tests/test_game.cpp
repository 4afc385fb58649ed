#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "strength/game.hpp"
#include "strength/rng.hpp"

using namespace strength;
using game::Cell;
using game::GameState;
using game::Player;

TEST_CASE("initial state") {
  const auto ttt = game::initial_state(game::make_spec("tictactoe", 3));
  CHECK(ttt.cells.size() == 9);
  CHECK(ttt.move_count == 0);
  CHECK(ttt.to_move == Player::kFirst);
  CHECK_FALSE(ttt.is_terminal());

  const auto hex = game::initial_state(game::make_spec("hex", 5));
  CHECK(hex.cells.size() == 25);
  for (const Cell c : hex.cells) CHECK(c == Cell::kEmpty);

  CHECK_THROWS(game::make_spec("hex", 2));
  CHECK_THROWS(game::make_spec("hex", 12));
  CHECK_THROWS(game::make_spec("checkers", 8));
}

TEST_CASE("legal actions") {
  auto state = game::initial_state(game::make_spec("tictactoe", 3));
  CHECK(game::legal_actions(state).size() == 9);
  state = game::apply(state, 4);
  CHECK(game::legal_actions(state).size() == 8);

  // Drive to a full-board draw: 0 1 2 4 3 5 7 6 8 ends with no line.
  auto draw = game::initial_state(game::make_spec("tictactoe", 3));
  for (const int move : {0, 1, 2, 4, 3, 5, 7, 6, 8}) {
    draw = game::apply(draw, move);
  }
  CHECK(draw.is_terminal());
  CHECK(game::terminal_value(draw) == 0);
  CHECK_THROWS(game::legal_actions(draw));
}

TEST_CASE("apply mechanics and errors") {
  auto state = game::initial_state(game::make_spec("tictactoe", 3));
  const auto next = game::apply(state, 4);
  CHECK(next.move_count == 1);
  CHECK(next.cells[4] == Cell::kFirst);
  CHECK(next.to_move == Player::kSecond);
  CHECK(state.cells[4] == Cell::kEmpty);  // value semantics

  CHECK_THROWS(game::apply(next, 4));   // occupied
  CHECK_THROWS(game::apply(next, 9));   // out of range
  CHECK_THROWS(game::apply(next, -1));
}

TEST_CASE("two applies on distinct cells touch the same squares") {
  const auto start = game::initial_state(game::make_spec("tictactoe", 3));
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) {
      if (a == b) continue;
      const auto ab = game::apply(game::apply(start, a), b);
      const auto ba = game::apply(game::apply(start, b), a);
      CHECK(ab.move_count == ba.move_count);
      CHECK(ab.to_move == ba.to_move);
      // Same cells occupied; ownership follows the move order.
      for (int k = 0; k < 9; ++k) {
        CHECK((ab.cells[k] == Cell::kEmpty) == (ba.cells[k] == Cell::kEmpty));
      }
      CHECK(ab.cells[a] == Cell::kFirst);
      CHECK(ab.cells[b] == Cell::kSecond);
      CHECK(ba.cells[b] == Cell::kFirst);
      CHECK(ba.cells[a] == Cell::kSecond);
    }
  }
}

TEST_CASE("tictactoe terminal values") {
  // Top row for the first player: moves 0,3,1,4,2.
  auto state = game::initial_state(game::make_spec("tictactoe", 3));
  for (const int move : {0, 3, 1, 4, 2}) state = game::apply(state, move);
  CHECK(state.is_terminal());
  CHECK(game::terminal_value(state) == 1);

  // Column for the second player: 0,3,1,4,8,5.
  auto loss = game::initial_state(game::make_spec("tictactoe", 3));
  for (const int move : {0, 3, 1, 4, 8, 5}) loss = game::apply(loss, move);
  CHECK(game::terminal_value(loss) == -1);
}

TEST_CASE("hex win detection matches flood-fill oracle on random playouts") {
  for (const int n : {3, 5, 7}) {
    const auto spec = game::make_spec("hex", n);
    Rng rng(1234 + n);
    for (int g = 0; g < 60; ++g) {
      auto state = game::initial_state(spec);
      while (!state.is_terminal()) {
        const auto legal = game::legal_actions(state);
        CHECK_FALSE(legal.empty());
        const Player mover = state.to_move;
        state = game::apply(state, legal[rng.uniform_index(legal.size())]);
        const auto outcome = game::terminal_value(state);
        const bool first_connected =
            oracles::hex_connected(state.cells, n, Player::kFirst);
        const bool second_connected =
            oracles::hex_connected(state.cells, n, Player::kSecond);
        if (outcome.has_value()) {
          CHECK(*outcome != 0);  // hex has no draws
          if (*outcome == 1) {
            CHECK(first_connected);
            CHECK(mover == Player::kFirst);
          } else {
            CHECK(second_connected);
            CHECK(mover == Player::kSecond);
          }
        } else {
          CHECK_FALSE(first_connected);
          CHECK_FALSE(second_connected);
        }
      }
      CHECK(state.move_count <= n * n);
    }
  }
}

TEST_CASE("hex 3x3 full boards: exactly one side connects") {
  // Every arrangement of 5 first-player and 4 second-player stones.
  const int n = 3;
  int boards = 0;
  for (int mask = 0; mask < (1 << 9); ++mask) {
    if (__builtin_popcount(mask) != 5) continue;
    std::vector<Cell> cells(9, Cell::kSecond);
    for (int k = 0; k < 9; ++k) {
      if (mask & (1 << k)) cells[k] = Cell::kFirst;
    }
    const bool first = oracles::hex_connected(cells, n, Player::kFirst);
    const bool second = oracles::hex_connected(cells, n, Player::kSecond);
    CHECK(first != second);
    ++boards;
  }
  CHECK(boards == 126);
}

TEST_CASE("depth counter equals applied moves") {
  Rng rng(99);
  auto state = game::initial_state(game::make_spec("hex", 5));
  int moves = 0;
  while (!state.is_terminal()) {
    const auto legal = game::legal_actions(state);
    state = game::apply(state, legal[rng.uniform_index(legal.size())]);
    ++moves;
    CHECK(state.move_count == moves);
  }
}

TEST_CASE("feature encoding basics") {
  const auto spec = game::make_spec("tictactoe", 3);
  CHECK(spec.feature_length() == 28);
  CHECK(game::make_spec("hex", 5).feature_length() == 76);

  const auto state = game::initial_state(spec);
  const game::StateActionPair pair(state, 0, 1);
  const auto x1 = game::encode_features(spec, pair);
  const auto x2 = game::encode_features(spec, pair);
  CHECK(x1 == x2);
  CHECK(static_cast<int>(x1.size()) == spec.feature_length());

  const game::StateActionPair other(state, 1, 1);
  const auto y = game::encode_features(spec, other);
  int differing = 0;
  for (size_t i = 0; i < x1.size(); ++i) {
    if (x1[i] != y[i]) ++differing;
  }
  CHECK(differing == 2);  // only the two action slots

  // Action slots sit past the state prefix.
  const auto base = game::encode_state_features(spec, state);
  auto patched = base;
  patched[spec.action_slot_offset() + 0] = 1.0;
  CHECK(patched == x1);

  CHECK_THROWS(game::encode_features(
      spec, game::StateActionPair(game::apply(state, 3), 3, 1)));
}

TEST_CASE("feature encoding is injective on reachable tictactoe pairs") {
  const auto spec = game::make_spec("tictactoe", 3);
  const auto states = oracles::ttt_reachable_states();
  std::set<std::vector<double>> seen;
  size_t pairs = 0;
  for (const auto& state : states) {
    if (state.is_terminal()) continue;
    for (const auto action : game::legal_actions(state)) {
      const auto x =
          game::encode_features(spec, game::StateActionPair(state, action, 1));
      CHECK(seen.insert(x).second);
      ++pairs;
    }
  }
  CHECK(pairs > 10000);
  CHECK(states.size() == 5478);
}
