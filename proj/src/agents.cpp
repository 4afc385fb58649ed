#include "strength/agents.hpp"

#include <algorithm>
#include <cmath>

namespace strength::agent {

TierAgent::TierAgent(int tier, int simulations, double temperature,
                     const scorer::ScorerParams& params, uint64_t seed)
    : tier_(tier), temperature_(temperature), params_(params), rng_(seed) {
  config_.mode = search::SearchMode::kVanilla;
  config_.simulations = simulations;
}

std::string TierAgent::name() const { return "tier:" + std::to_string(tier_); }

game::Action TierAgent::act(const game::GameState& state) {
  const search::SearchResult result =
      search::mcts_search(params_, state, config_);

  int total_visits = 0;
  for (const auto& s : result.root) total_visits += s.visits;

  if (total_visits == 0) {
    // Budget 1: only the root expansion ran; play from the priors.
    double u = rng_.uniform_double();
    for (const auto& s : result.root) {
      u -= s.prior;
      if (u <= 0.0) return s.action;
    }
    return result.root.back().action;
  }

  if (temperature_ <= 0.0) {
    int best = 0;
    for (size_t i = 1; i < result.root.size(); ++i) {
      if (result.root[i].visits > result.root[best].visits) {
        best = static_cast<int>(i);
      }
    }
    return result.root[best].action;
  }

  // softmax(N / temperature) over all root actions
  double max_n = 0.0;
  for (const auto& s : result.root) {
    max_n = std::max(max_n, static_cast<double>(s.visits));
  }
  std::vector<double> weights(result.root.size());
  double total = 0.0;
  for (size_t i = 0; i < result.root.size(); ++i) {
    weights[i] = std::exp((result.root[i].visits - max_n) / temperature_);
    total += weights[i];
  }
  double u = rng_.uniform_double() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u <= 0.0) return result.root[i].action;
  }
  return result.root.back().action;
}

SearchAgent::SearchAgent(std::string name, const scorer::ScorerParams& params,
                         search::SearchConfig config, uint64_t seed)
    : name_(std::move(name)), params_(params), config_(config), rng_(seed) {}

game::Action SearchAgent::act(const game::GameState& state) {
  search::SearchConfig cfg = config_;
  cfg.seed = rng_.next_u64();  // fresh draw for the SA decision
  return search::mcts_search(params_, state, cfg).chosen_action;
}

}  // namespace strength::agent
