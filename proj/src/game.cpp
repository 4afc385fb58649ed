#include "strength/game.hpp"

#include <array>
#include <stdexcept>

namespace strength::game {

namespace {

constexpr int kHexMinSize = 3;
constexpr int kHexMaxSize = 11;

// Virtual union-find nodes appended after the board cells. First player
// connects top row to bottom row, second player connects left column to
// right column.
enum VirtualNode { kTop = 0, kBottom = 1, kLeft = 2, kRight = 3 };

int dsu_find(std::vector<int16_t>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];  // path halving
    x = parent[x];
  }
  return x;
}

void dsu_union(std::vector<int16_t>& parent, int a, int b) {
  a = dsu_find(parent, a);
  b = dsu_find(parent, b);
  if (a != b) parent[b] = static_cast<int16_t>(a);
}

const std::array<std::pair<int, int>, 6> kHexNeighbors = {{
    {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0},
}};

std::optional<int> tictactoe_outcome(const std::vector<Cell>& c) {
  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                       {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
                                       {0, 4, 8}, {2, 4, 6}};
  for (const auto& line : kLines) {
    const Cell v = c[line[0]];
    if (v != Cell::kEmpty && c[line[1]] == v && c[line[2]] == v) {
      return v == Cell::kFirst ? 1 : -1;
    }
  }
  for (const Cell v : c) {
    if (v == Cell::kEmpty) return std::nullopt;
  }
  return 0;  // full board, no line
}

}  // namespace

GameSpec make_spec(GameKind kind, int board_size) {
  GameSpec spec;
  spec.kind = kind;
  if (kind == GameKind::kTicTacToe) {
    spec.board_size = 3;
  } else {
    if (board_size < kHexMinSize || board_size > kHexMaxSize) {
      throw std::invalid_argument("hex board size must be in [3, 11], got " +
                                  std::to_string(board_size));
    }
    spec.board_size = board_size;
  }
  return spec;
}

GameSpec make_spec(const std::string& kind_name, int board_size) {
  if (kind_name == "tictactoe") return make_spec(GameKind::kTicTacToe, 3);
  if (kind_name == "hex") return make_spec(GameKind::kHex, board_size);
  throw std::invalid_argument("unknown game kind: " + kind_name);
}

std::string kind_name(GameKind kind) {
  return kind == GameKind::kTicTacToe ? "tictactoe" : "hex";
}

GameState initial_state(const GameSpec& spec) {
  // Re-validate through make_spec so hand-built specs get the same bounds.
  GameState state;
  state.spec = make_spec(spec.kind, spec.board_size);
  state.spec.encoding_version = spec.encoding_version;
  state.cells.assign(state.spec.action_count(), Cell::kEmpty);
  if (spec.kind == GameKind::kHex) {
    const int n2 = state.spec.action_count();
    state.dsu_parent.resize(n2 + 4);
    for (int i = 0; i < n2 + 4; ++i) {
      state.dsu_parent[i] = static_cast<int16_t>(i);
    }
  }
  return state;
}

std::vector<Action> legal_actions(const GameState& state) {
  if (state.is_terminal()) {
    throw std::logic_error("legal_actions called on a terminal state");
  }
  std::vector<Action> actions;
  actions.reserve(state.cells.size() - state.move_count);
  for (size_t i = 0; i < state.cells.size(); ++i) {
    if (state.cells[i] == Cell::kEmpty) actions.push_back(static_cast<int>(i));
  }
  return actions;
}

bool is_legal(const GameState& state, Action action) {
  return !state.is_terminal() && action >= 0 &&
         action < state.spec.action_count() &&
         state.cells[action] == Cell::kEmpty;
}

GameState apply(const GameState& state, Action action) {
  if (state.is_terminal()) {
    throw std::logic_error("apply called on a terminal state");
  }
  if (action < 0 || action >= state.spec.action_count() ||
      state.cells[action] != Cell::kEmpty) {
    throw std::invalid_argument("illegal action " + std::to_string(action));
  }

  GameState next = state;
  const Player mover = state.to_move;
  const Cell stone = mover == Player::kFirst ? Cell::kFirst : Cell::kSecond;
  next.cells[action] = stone;
  next.to_move = mover == Player::kFirst ? Player::kSecond : Player::kFirst;
  next.move_count = state.move_count + 1;

  if (state.spec.kind == GameKind::kTicTacToe) {
    next.outcome = tictactoe_outcome(next.cells);
    return next;
  }

  // Hex: union the new stone with same-colored neighbors and edge nodes,
  // then test the mover's edge-to-edge connection.
  const int n = state.spec.board_size;
  const int n2 = n * n;
  const int r = action / n;
  const int c = action % n;
  auto& parent = next.dsu_parent;

  if (mover == Player::kFirst) {
    if (r == 0) dsu_union(parent, n2 + kTop, action);
    if (r == n - 1) dsu_union(parent, n2 + kBottom, action);
  } else {
    if (c == 0) dsu_union(parent, n2 + kLeft, action);
    if (c == n - 1) dsu_union(parent, n2 + kRight, action);
  }
  for (const auto& [dr, dc] : kHexNeighbors) {
    const int rr = r + dr;
    const int cc = c + dc;
    if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
    const int idx = rr * n + cc;
    if (next.cells[idx] == stone) dsu_union(parent, action, idx);
  }

  if (mover == Player::kFirst) {
    if (dsu_find(parent, n2 + kTop) == dsu_find(parent, n2 + kBottom)) {
      next.outcome = 1;
    }
  } else {
    if (dsu_find(parent, n2 + kLeft) == dsu_find(parent, n2 + kRight)) {
      next.outcome = -1;
    }
  }
  return next;
}

std::optional<int> terminal_value(const GameState& state) {
  return state.outcome;
}

FeatureVector encode_state_features(const GameSpec& spec,
                                    const GameState& state) {
  if (state.spec.kind != spec.kind ||
      state.spec.board_size != spec.board_size) {
    throw std::invalid_argument("state does not match spec");
  }
  const int a = spec.action_count();
  FeatureVector x(spec.feature_length(), 0.0);
  for (int i = 0; i < a; ++i) {
    if (state.cells[i] == Cell::kFirst) {
      x[i] = 1.0;
    } else if (state.cells[i] == Cell::kSecond) {
      x[a + i] = 1.0;
    }
  }
  x[2 * a] = state.to_move == Player::kFirst ? 1.0 : 0.0;
  return x;
}

FeatureVector encode_features(const GameSpec& spec,
                              const StateActionPair& pair) {
  if (!is_legal(pair.state, pair.action)) {
    throw std::invalid_argument("encode_features: action is not legal");
  }
  FeatureVector x = encode_state_features(spec, pair.state);
  x[spec.action_slot_offset() + pair.action] = 1.0;
  return x;
}

}  // namespace strength::game
