#include "strength/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace strength::search {

SearchMode parse_mode(const std::string& name) {
  if (name == "vanilla") return SearchMode::kVanilla;
  if (name == "se") return SearchMode::kSe;
  if (name == "sa") return SearchMode::kSa;
  throw std::invalid_argument("unknown search mode: " + name);
}

std::string mode_name(SearchMode mode) {
  switch (mode) {
    case SearchMode::kVanilla: return "vanilla";
    case SearchMode::kSe: return "se";
    case SearchMode::kSa: return "sa";
  }
  return "?";
}

void DeltaBounds::update(double d) {
  if (!initialized) {
    lo = hi = d;
    initialized = true;
    return;
  }
  lo = std::min(lo, d);
  hi = std::max(hi, d);
}

double DeltaBounds::normalize(double d) const {
  if (!initialized || hi <= lo) return 0.0;
  return (d - lo) / (hi - lo);
}

int puct_select(const Node& node, double c) {
  if (node.edges.empty()) {
    throw std::logic_error("puct_select: node has no children");
  }
  double total = 0.0;
  for (const Edge& e : node.edges) total += e.visits;
  const double sqrt_total = std::sqrt(total);

  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < node.edges.size(); ++i) {
    const Edge& e = node.edges[i];
    const double score =
        e.q() + c * e.prior * sqrt_total / (1.0 + e.visits);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int se_puct_select(const Node& node, double c, double c1, double beta_target,
                   const DeltaBounds& bounds) {
  if (node.edges.empty()) {
    throw std::logic_error("se_puct_select: node has no children");
  }
  double total = 0.0;
  for (const Edge& e : node.edges) total += e.visits;
  const double sqrt_total = std::sqrt(total);

  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < node.edges.size(); ++i) {
    const Edge& e = node.edges[i];
    const double delta_hat =
        e.visits > 0 ? bounds.normalize(std::abs(e.beta_mean() - beta_target))
                     : 0.0;
    const double score =
        e.q() + c * (e.prior - c1 * delta_hat) * sqrt_total / (1.0 + e.visits);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<double> normalize_delta(std::span<const double> deltas) {
  std::vector<double> out(deltas.size(), 0.0);
  if (deltas.empty()) return out;
  double lo = deltas[0], hi = deltas[0];
  for (const double d : deltas) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi <= lo) return out;
  for (size_t i = 0; i < deltas.size(); ++i) {
    out[i] = (deltas[i] - lo) / (hi - lo);
  }
  return out;
}

void backup(std::vector<Edge*>& path, double leaf_value, double leaf_beta) {
  const size_t depth = path.size();
  for (size_t i = depth; i-- > 0;) {
    Edge* e = path[i];
    const size_t plies_above_leaf = depth - 1 - i;
    e->visits += 1;
    e->value_sum += (plies_above_leaf % 2 == 0) ? leaf_value : -leaf_value;
    e->beta_sum += leaf_beta;
  }
}

int sa_decide(std::span<const double> visit_counts, double z,
              double filter_ratio, Rng& rng) {
  if (visit_counts.empty()) {
    throw std::invalid_argument("sa_decide: no visit counts");
  }
  const double n_max =
      *std::max_element(visit_counts.begin(), visit_counts.end());
  if (n_max <= 0.0) {
    return rng.uniform_index(visit_counts.size());
  }
  const double threshold = filter_ratio * n_max;

  // Weights exp(z * ln N) computed relative to the largest exponent.
  std::vector<double> exponents(visit_counts.size(),
                                -std::numeric_limits<double>::infinity());
  double max_exp = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < visit_counts.size(); ++i) {
    const double n = visit_counts[i];
    if (n < threshold) continue;  // filtered out
    if (n <= 0.0) {
      if (z == 0.0) exponents[i] = 0.0;  // N^0 = 1
      continue;
    }
    exponents[i] = z * std::log(n);
    max_exp = std::max(max_exp, exponents[i]);
  }
  if (z == 0.0) max_exp = 0.0;

  std::vector<double> weights(visit_counts.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (std::isfinite(exponents[i])) {
      weights[i] = std::exp(exponents[i] - max_exp);
      total += weights[i];
    }
  }
  double u = rng.uniform_double() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u <= 0.0 && weights[i] > 0.0) return static_cast<int>(i);
  }
  for (size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return static_cast<int>(i);
  }
  return 0;
}

game::Action decide(const SearchResult& result, const SearchConfig& config,
                    Rng& rng) {
  if (result.root.empty()) throw std::logic_error("decide: empty result");
  if (config.mode == SearchMode::kSa) {
    std::vector<double> counts(result.root.size());
    for (size_t i = 0; i < result.root.size(); ++i) {
      counts[i] = result.root[i].visits;
    }
    const int idx = sa_decide(counts, config.sa_z, config.sa_filter_ratio, rng);
    return result.root[idx].action;
  }
  int best = 0;
  for (size_t i = 1; i < result.root.size(); ++i) {
    if (result.root[i].visits > result.root[best].visits) {
      best = static_cast<int>(i);
    }
  }
  return result.root[best].action;
}

namespace {

void expand(Node& node, const game::GameState& state,
            const scorer::EdgeEvaluator& evaluator) {
  const std::vector<game::Action> actions = game::legal_actions(state);
  const game::FeatureVector base =
      game::encode_state_features(state.spec, state);
  const std::vector<scorer::EdgeEval> evals =
      evaluator.evaluate(base, state.spec.action_slot_offset(), actions);

  std::vector<double> logits(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) logits[i] = evals[i].policy_logit;
  const std::vector<double> priors = scorer::softmax(logits);

  node.edges.resize(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    Edge& e = node.edges[i];
    e.action = actions[i];
    e.prior = priors[i];
    e.value_estimate = evals[i].value;
    e.beta_edge = evals[i].beta;
  }
}

}  // namespace

SearchResult mcts_search(const scorer::ScorerParams& params,
                         const game::GameState& root_state,
                         const SearchConfig& config) {
  if (root_state.is_terminal()) {
    throw std::invalid_argument("mcts_search: root state is terminal");
  }
  if (config.simulations < 1) {
    throw std::invalid_argument("mcts_search: simulations must be >= 1");
  }

  double beta_target = config.beta_target;
  if (config.mode == SearchMode::kSe && config.depth_targets != nullptr) {
    beta_target =
        config.use_depth_targets
            ? config.depth_targets->target_score(config.target_rank,
                                                 root_state.move_count)
            : config.depth_targets
                  ->overall[config.depth_targets->index_of(config.target_rank)];
  }

  const scorer::EdgeEvaluator evaluator(params);
  Node root;
  expand(root, root_state, evaluator);  // consumes the first simulation

  DeltaBounds bounds;
  std::vector<Edge*> path;
  for (int sim = 1; sim < config.simulations; ++sim) {
    Node* node = &root;
    game::GameState state = root_state;
    path.clear();
    double leaf_value = 0.0;
    double leaf_beta = 0.0;

    while (true) {
      const int idx =
          config.mode == SearchMode::kSe
              ? se_puct_select(*node, config.c_puct, config.c1, beta_target,
                               bounds)
              : puct_select(*node, config.c_puct);
      if (config.selection_trace) config.selection_trace->push_back(idx);
      Edge& e = node->edges[idx];
      path.push_back(&e);
      const game::Player mover = state.to_move;
      state = game::apply(state, e.action);

      if (state.is_terminal()) {
        const int outcome = *game::terminal_value(state);
        leaf_value = mover == game::Player::kFirst ? outcome : -outcome;
        leaf_beta = e.beta_edge;
        break;
      }
      if (!e.child) e.child = std::make_unique<Node>();
      if (!e.child->expanded()) {
        expand(*e.child, state, evaluator);
        leaf_value = e.value_estimate;
        leaf_beta = e.beta_edge;
        break;
      }
      node = e.child.get();
    }

    backup(path, leaf_value, leaf_beta);
    if (config.mode == SearchMode::kSe) {
      for (const Edge* e : path) {
        bounds.update(std::abs(e->beta_mean() - beta_target));
      }
    }
  }

  SearchResult result;
  result.simulations = config.simulations;
  result.beta_target = beta_target;
  result.root.reserve(root.edges.size());
  for (const Edge& e : root.edges) {
    ActionStats stats;
    stats.action = e.action;
    stats.visits = e.visits;
    stats.q = e.q();
    stats.prior = e.prior;
    if (e.visits > 0) {
      stats.beta_mean = e.beta_mean();
      if (config.mode == SearchMode::kSe) {
        stats.delta_hat =
            bounds.normalize(std::abs(stats.beta_mean - beta_target));
      }
    }
    result.root.push_back(stats);
  }

  // Principal variation: max-visits edges while visited nodes remain.
  const Node* node = &root;
  while (node != nullptr && node->expanded()) {
    const Edge* best = nullptr;
    for (const Edge& e : node->edges) {
      if (e.visits == 0) continue;
      if (best == nullptr || e.visits > best->visits) best = &e;
    }
    if (best == nullptr) break;
    result.principal_variation.push_back(best->action);
    node = best->child.get();
  }

  Rng rng(config.seed);
  result.chosen_action = decide(result, config, rng);
  return result;
}

std::string format_search_result(const SearchResult& result) {
  std::string out =
      "action visits Q prior beta_mean delta_hat\n";
  char buf[160];
  for (const ActionStats& s : result.root) {
    std::snprintf(buf, sizeof(buf), "%d %d %.6f %.6f %.6f %.6f\n", s.action,
                  s.visits, s.q, s.prior, s.beta_mean, s.delta_hat);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "chosen %d\n", result.chosen_action);
  out += buf;
  return out;
}

}  // namespace strength::search
