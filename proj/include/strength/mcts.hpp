#pragma once

#include <memory>
#include <span>
#include <vector>

#include "strength/game.hpp"
#include "strength/profile.hpp"
#include "strength/rng.hpp"
#include "strength/scorer.hpp"

namespace strength::search {

enum class SearchMode { kVanilla, kSe, kSa };

SearchMode parse_mode(const std::string& name);
std::string mode_name(SearchMode mode);

struct SearchConfig {
  int simulations = 800;
  double c_puct = 1.25;
  SearchMode mode = SearchMode::kVanilla;

  // SE: fixed target score, or targets from a profile (the target at the
  // root's depth is used for the whole search). With a profile,
  // use_depth_targets picks between the per-depth curve and the overall
  // per-rank mean.
  double c1 = 1.0;
  double beta_target = 0.0;
  const infer::StrengthProfile* depth_targets = nullptr;  // non-owning
  int target_rank = 0;                                    // with depth_targets
  bool use_depth_targets = true;

  // SA final decision.
  double sa_z = 1.0;
  double sa_filter_ratio = 0.1;  // R

  uint64_t seed = 0;

  // When set, every selection's edge index is appended here (debug hook).
  std::vector<int>* selection_trace = nullptr;
};

// One tree edge, identified with the state-action pair it leads through.
// value_estimate and beta_edge come from the network evaluation of the pair
// at creation; value_sum/beta_sum accumulate through backups.
struct Node;
struct Edge {
  game::Action action = 0;
  double prior = 0.0;
  double value_estimate = 0.0;  // from the mover's perspective
  double beta_edge = 0.0;
  int visits = 0;
  double value_sum = 0.0;
  double beta_sum = 0.0;
  std::unique_ptr<Node> child;

  double q() const { return visits > 0 ? value_sum / visits : 0.0; }
  double beta_mean() const { return beta_sum / visits; }  // needs visits > 0
};

struct Node {
  std::vector<Edge> edges;
  bool expanded() const { return !edges.empty(); }
};

// Running min/max of strength differences observed in the tree; bounds only
// widen during a search.
struct DeltaBounds {
  bool initialized = false;
  double lo = 0.0;
  double hi = 0.0;

  void update(double d);
  // (d - lo) / (hi - lo); 0 when uninitialized or degenerate.
  double normalize(double d) const;
};

// argmax_a { Q + c * P * sqrt(sum_b N_b) / (1 + N_a) }; unvisited edges use
// Q = 0; ties go to the lowest edge index. Returns the edge index.
int puct_select(const Node& node, double c);

// argmax_a { Q + c * (P - c1 * delta_hat) * sqrt(sum_b N_b) / (1 + N_a) }.
// The modified prior term is not clamped. Unvisited edges use delta_hat = 0.
int se_puct_select(const Node& node, double c, double c1, double beta_target,
                   const DeltaBounds& bounds);

// Min-max normalization of a set of difference values; all zero when the
// spread is degenerate.
std::vector<double> normalize_delta(std::span<const double> deltas);

// Along the root-to-leaf path: N += 1, W += v with the sign alternating per
// ply (the leaf edge gets +v), B += the expanded leaf's beta.
void backup(std::vector<Edge*>& path, double leaf_value, double leaf_beta);

// Samples an index proportionally to N_i^z after removing entries with
// N_j < R * N_max. z = 0 weighs all survivors equally; for z != 0 unvisited
// entries are never sampled.
int sa_decide(std::span<const double> visit_counts, double z,
              double filter_ratio, Rng& rng);

struct ActionStats {
  game::Action action = 0;
  int visits = 0;
  double q = 0.0;
  double prior = 0.0;
  double beta_mean = 0.0;  // valid when visits > 0
  double delta_hat = 0.0;
};

struct SearchResult {
  std::vector<ActionStats> root;
  game::Action chosen_action = -1;
  std::vector<game::Action> principal_variation;
  int simulations = 0;
  double beta_target = 0.0;  // resolved target (SE mode)
};

// Max-visits decision (ties to the lowest action index) for vanilla and SE;
// SA samples via sa_decide.
game::Action decide(const SearchResult& result, const SearchConfig& config,
                    Rng& rng);

// Full search: one simulation expands the root, every further simulation
// selects to an unexpanded or terminal leaf, evaluates and backs up once.
// Terminal leaves back up the exact game outcome. Deterministic given the
// config seed.
SearchResult mcts_search(const scorer::ScorerParams& params,
                         const game::GameState& state,
                         const SearchConfig& config);

// Text table of per-action root statistics (debug output).
std::string format_search_result(const SearchResult& result);

}  // namespace strength::search
