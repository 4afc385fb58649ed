#pragma once

// Test-only reference implementations, independent of the library paths they
// check.

#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "strength/game.hpp"

namespace oracles {

using strength::game::Cell;
using strength::game::GameState;
using strength::game::Player;

// Flood fill: does `player` connect their two edges on an n x n hex board?
// First player connects row 0 to row n-1, second connects column 0 to n-1.
inline bool hex_connected(const std::vector<Cell>& cells, int n,
                          Player player) {
  const Cell stone = player == Player::kFirst ? Cell::kFirst : Cell::kSecond;
  std::vector<bool> seen(n * n, false);
  std::deque<int> frontier;
  for (int k = 0; k < n; ++k) {
    const int idx = player == Player::kFirst ? k : k * n;
    if (cells[idx] == stone) {
      seen[idx] = true;
      frontier.push_back(idx);
    }
  }
  const int offsets[6][2] = {{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}};
  while (!frontier.empty()) {
    const int idx = frontier.front();
    frontier.pop_front();
    const int r = idx / n, c = idx % n;
    if (player == Player::kFirst && r == n - 1) return true;
    if (player == Player::kSecond && c == n - 1) return true;
    for (const auto& off : offsets) {
      const int rr = r + off[0], cc = c + off[1];
      if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
      const int next = rr * n + cc;
      if (!seen[next] && cells[next] == stone) {
        seen[next] = true;
        frontier.push_back(next);
      }
    }
  }
  return false;
}

inline std::string ttt_key(const GameState& state) {
  std::string key;
  key.reserve(10);
  for (const Cell c : state.cells) key += static_cast<char>('0' + static_cast<int>(c));
  key += state.to_move == Player::kFirst ? 'a' : 'b';
  return key;
}

// Exhaustive negamax value of a tic-tac-toe state, first-player view.
inline int ttt_minimax(const GameState& state,
                       std::map<std::string, int>* memo = nullptr) {
  static std::map<std::string, int> local;
  std::map<std::string, int>& cache = memo ? *memo : local;
  if (const auto v = strength::game::terminal_value(state)) return *v;
  const std::string key = ttt_key(state);
  if (const auto it = cache.find(key); it != cache.end()) return it->second;
  const bool maximizing = state.to_move == Player::kFirst;
  int best = maximizing ? -2 : 2;
  for (const auto action : strength::game::legal_actions(state)) {
    const int v = ttt_minimax(strength::game::apply(state, action), &cache);
    best = maximizing ? std::max(best, v) : std::min(best, v);
  }
  cache[key] = best;
  return best;
}

// Every state reachable by legal play from the empty tic-tac-toe board,
// terminal states included.
inline std::vector<GameState> ttt_reachable_states() {
  std::vector<GameState> states;
  std::map<std::string, bool> seen;
  std::deque<GameState> frontier;
  frontier.push_back(
      strength::game::initial_state(strength::game::make_spec("tictactoe", 3)));
  seen[ttt_key(frontier.front())] = true;
  while (!frontier.empty()) {
    GameState state = frontier.front();
    frontier.pop_front();
    states.push_back(state);
    if (state.is_terminal()) continue;
    for (const auto action : strength::game::legal_actions(state)) {
      GameState next = strength::game::apply(state, action);
      const std::string key = ttt_key(next);
      if (!seen[key]) {
        seen[key] = true;
        frontier.push_back(next);
      }
    }
  }
  return states;
}

// Central finite difference of f along coordinate i of x.
inline double central_diff(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> x, size_t i, double eps) {
  const double saved = x[i];
  x[i] = saved + eps;
  const double hi = f(x);
  x[i] = saved - eps;
  const double lo = f(x);
  x[i] = saved;
  return (hi - lo) / (2.0 * eps);
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// Wilson-Hilferty approximation of the chi-square quantile.
inline double chi_square_quantile(int dof, double z_score) {
  const double k = dof;
  const double t = 1.0 - 2.0 / (9.0 * k) + z_score * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

}  // namespace oracles
