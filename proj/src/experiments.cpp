#include "strength/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace strength::eval {

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + j) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> fields;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ':')) fields.push_back(field);
  return fields;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman_rho: need two equal-length series");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::pair<double, double> proportion_ci(double p, int n) {
  const double hw = 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
  return {std::max(0.0, p - hw), std::min(1.0, p + hw)};
}

double two_proportion_z(double wins_a, int n_a, double wins_b, int n_b) {
  const double p_a = wins_a / n_a;
  const double p_b = wins_b / n_b;
  const double pooled = (wins_a + wins_b) / (n_a + n_b);
  const double se =
      std::sqrt(pooled * (1.0 - pooled) * (1.0 / n_a + 1.0 / n_b));
  if (se == 0.0) return 0.0;
  return (p_a - p_b) / se;
}

std::unique_ptr<agent::Agent> make_agent(const std::string& text,
                                         const scorer::ScorerParams& params,
                                         const infer::StrengthProfile* profile,
                                         int default_sims, double c_puct,
                                         double default_c1) {
  const std::vector<std::string> f = split_fields(text);
  if (f.empty()) throw std::invalid_argument("empty agent spec");

  search::SearchConfig cfg;
  cfg.simulations = default_sims;
  cfg.c_puct = c_puct;

  if (f[0] == "tier") {
    if (f.size() < 3) {
      throw std::invalid_argument("tier agent needs tier:<k>:<sims>");
    }
    const int tier = std::stoi(f[1]);
    const int sims = std::stoi(f[2]);
    const double temp = f.size() > 3 ? std::stod(f[3]) : 0.3;
    return std::make_unique<agent::TierAgent>(tier, sims, temp, params, 0);
  }
  if (f[0] == "vanilla") {
    if (f.size() > 1) cfg.simulations = std::stoi(f[1]);
    cfg.mode = search::SearchMode::kVanilla;
    return std::make_unique<agent::SearchAgent>(text, params, cfg, 0);
  }
  if (f[0] == "se") {
    if (f.size() < 2) throw std::invalid_argument("se agent needs se:<rank>");
    if (profile == nullptr) {
      throw std::invalid_argument("se agent needs a strength profile");
    }
    cfg.mode = search::SearchMode::kSe;
    cfg.target_rank = std::stoi(f[1]);
    cfg.depth_targets = profile;
    if (f.size() > 2) cfg.simulations = std::stoi(f[2]);
    cfg.c1 = f.size() > 3 ? std::stod(f[3]) : default_c1;
    return std::make_unique<agent::SearchAgent>(text, params, cfg, 0);
  }
  if (f[0] == "sa") {
    if (f.size() < 2) throw std::invalid_argument("sa agent needs sa:<z>");
    cfg.mode = search::SearchMode::kSa;
    cfg.sa_z = std::stod(f[1]);
    if (f.size() > 2) cfg.simulations = std::stoi(f[2]);
    if (f.size() > 3) cfg.sa_filter_ratio = std::stod(f[3]);
    return std::make_unique<agent::SearchAgent>(text, params, cfg, 0);
  }
  throw std::invalid_argument("unknown agent spec: " + text);
}

namespace {

// Returns first player's score for one game: 1 win, 0 loss, 0.5 draw.
double play_scored_game(agent::Agent& first, agent::Agent& second,
                        const game::GameSpec& spec, uint64_t seed,
                        const std::vector<game::Action>* opening) {
  const data::GameRecord record =
      datagen::play_game(first, second, spec, seed, "match", 0, 0, opening);
  if (record.outcome > 0) return 1.0;
  if (record.outcome < 0) return 0.0;
  return 0.5;
}

}  // namespace

double play_match(agent::Agent& a, agent::Agent& b, const game::GameSpec& spec,
                  int games, uint64_t seed, int opening_plies) {
  double score = 0.0;
  for (int g = 0; g < games; ++g) {
    const uint64_t game_seed = mix_seed(seed, g);
    // Color-swapped game pairs share one opening.
    std::vector<game::Action> opening;
    if (opening_plies > 0) {
      opening = datagen::random_opening(spec, opening_plies,
                                        mix_seed(seed, 0xb00c + g / 2));
    }
    const auto* prefix = opening_plies > 0 ? &opening : nullptr;
    if (g % 2 == 0) {
      score += play_scored_game(a, b, spec, game_seed, prefix);
    } else {
      score += 1.0 - play_scored_game(b, a, spec, game_seed, prefix);
    }
  }
  return score;
}

WinTable round_robin(const std::vector<agent::Agent*>& agents,
                     const game::GameSpec& spec, int games_per_pair,
                     uint64_t seed, int opening_plies) {
  const int n = static_cast<int>(agents.size());
  if (n < 2) throw std::invalid_argument("round_robin: need >= 2 agents");
  if (games_per_pair < 1) {
    throw std::invalid_argument("round_robin: games_per_pair must be >= 1");
  }
  WinTable table;
  table.games_per_pair = games_per_pair;
  table.wins.assign(n, std::vector<double>(n, 0.0));
  for (const agent::Agent* a : agents) table.names.push_back(a->name());

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const uint64_t pair_seed =
          mix_seed(seed, (static_cast<uint64_t>(i) << 20) | j);
      const double score_i = play_match(*agents[i], *agents[j], spec,
                                        games_per_pair, pair_seed,
                                        opening_plies);
      table.wins[i][j] = score_i;
      table.wins[j][i] = games_per_pair - score_i;
    }
  }
  table.validate();
  return table;
}

SweepResult strength_sweep(const scorer::ScorerParams& params,
                           const infer::StrengthProfile& profile,
                           search::SearchMode mode,
                           const std::vector<int>& target_ranks,
                           const std::vector<double>& sa_z_by_target,
                           int baseline_rank, const game::GameSpec& spec,
                           int games_per_cell, int simulations, double c_puct,
                           double c1, uint64_t seed, int opening_plies,
                           bool per_depth_targets) {
  if (mode == search::SearchMode::kSa &&
      sa_z_by_target.size() != target_ranks.size()) {
    throw std::invalid_argument("sa sweep needs one z per target rank");
  }

  search::SearchConfig baseline_cfg;
  baseline_cfg.mode = search::SearchMode::kSe;
  baseline_cfg.simulations = simulations;
  baseline_cfg.c_puct = c_puct;
  baseline_cfg.c1 = c1;
  baseline_cfg.depth_targets = &profile;
  baseline_cfg.target_rank = baseline_rank;
  baseline_cfg.use_depth_targets = per_depth_targets;

  SweepResult result;
  std::vector<double> xs, ys;
  for (size_t t = 0; t < target_ranks.size(); ++t) {
    agent::SearchAgent baseline("se:" + std::to_string(baseline_rank), params,
                                baseline_cfg, 0);
    std::unique_ptr<agent::Agent> target;
    if (mode == search::SearchMode::kSe) {
      search::SearchConfig cfg = baseline_cfg;
      cfg.target_rank = target_ranks[t];
      target = std::make_unique<agent::SearchAgent>(
          "se:" + std::to_string(target_ranks[t]), params, cfg, 0);
    } else {
      search::SearchConfig cfg;
      cfg.mode = search::SearchMode::kSa;
      cfg.simulations = simulations;
      cfg.c_puct = c_puct;
      cfg.sa_z = sa_z_by_target[t];
      target = std::make_unique<agent::SearchAgent>(
          "sa:" + std::to_string(target_ranks[t]), params, cfg, 0);
    }

    const double score = play_match(*target, baseline, spec, games_per_cell,
                                    mix_seed(seed, 100 + target_ranks[t]),
                                    opening_plies);
    SweepCell cell;
    cell.target_rank = target_ranks[t];
    cell.score = score;
    cell.games = games_per_cell;
    cell.win_rate = score / games_per_cell;
    std::tie(cell.ci_low, cell.ci_high) =
        proportion_ci(cell.win_rate, games_per_cell);
    result.cells.push_back(cell);
    xs.push_back(static_cast<double>(target_ranks[t]));
    ys.push_back(cell.win_rate);
  }
  result.spearman = spearman_rho(xs, ys);
  return result;
}

MoveAccuracy move_prediction_accuracy(
    const scorer::ScorerParams& params, const infer::StrengthProfile* profile,
    search::SearchMode mode, int rank,
    const std::vector<data::GameRecord>& games, int simulations, double c_puct,
    double c1, double sa_z, double sa_filter_ratio, uint64_t seed) {
  search::SearchConfig cfg;
  cfg.mode = mode;
  cfg.simulations = simulations;
  cfg.c_puct = c_puct;
  if (mode == search::SearchMode::kSe) {
    if (profile == nullptr) {
      throw std::invalid_argument("se move accuracy needs a profile");
    }
    cfg.c1 = c1;
    cfg.depth_targets = profile;
    cfg.target_rank = rank;
  } else if (mode == search::SearchMode::kSa) {
    cfg.sa_z = sa_z;
    cfg.sa_filter_ratio = sa_filter_ratio;
  }

  MoveAccuracy acc;
  acc.rank = rank;
  for (size_t g = 0; g < games.size(); ++g) {
    const std::vector<game::GameState> states = data::replay_states(games[g]);
    for (size_t i = 0; i < states.size(); ++i) {
      cfg.seed = mix_seed(seed, (g << 16) | i);
      const search::SearchResult result =
          search::mcts_search(params, states[i], cfg);
      acc.positions += 1;
      if (result.chosen_action == games[g].moves[i]) acc.matches += 1;
    }
  }
  if (acc.positions == 0) {
    throw std::invalid_argument("move_prediction_accuracy: no positions");
  }
  acc.accuracy = static_cast<double>(acc.matches) / acc.positions;
  std::tie(acc.ci_low, acc.ci_high) = proportion_ci(acc.accuracy, acc.positions);
  return acc;
}

double calibrate_sa_z(const scorer::ScorerParams& params,
                      const infer::StrengthProfile& profile, int rank,
                      const game::GameSpec& spec, int simulations,
                      double c_puct, double c1, int games_per_probe,
                      int iterations, uint64_t seed, int opening_plies,
                      bool per_depth_targets) {
  search::SearchConfig se_cfg;
  se_cfg.mode = search::SearchMode::kSe;
  se_cfg.simulations = simulations;
  se_cfg.c_puct = c_puct;
  se_cfg.c1 = c1;
  se_cfg.depth_targets = &profile;
  se_cfg.target_rank = rank;
  se_cfg.use_depth_targets = per_depth_targets;

  auto probe = [&](double z, int round) {
    agent::SearchAgent se("se", params, se_cfg, 0);
    search::SearchConfig sa_cfg;
    sa_cfg.mode = search::SearchMode::kSa;
    sa_cfg.simulations = simulations;
    sa_cfg.c_puct = c_puct;
    sa_cfg.sa_z = z;
    agent::SearchAgent sa("sa", params, sa_cfg, 0);
    const double score = play_match(sa, se, spec, games_per_probe,
                                    mix_seed(seed, 1000 * rank + round),
                                    opening_plies);
    return score / games_per_probe - 0.5;  // > 0 means SA too strong
  };

  double lo = -2.0, hi = 4.0;
  if (probe(lo, 0) > 0.0) return lo;
  if (probe(hi, 1) < 0.0) return hi;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < iterations; ++it) {
    mid = 0.5 * (lo + hi);
    if (probe(mid, 2 + it) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LimitedRankResult limited_rank_experiment(
    const data::RankDataset& train_set, const data::RankDataset& candidate,
    const data::RankDataset& query, const std::vector<int>& kept_tiers,
    const scorer::ScorerSpec& scorer_spec, const train::TrainConfig& config,
    const std::vector<int>& game_counts, const infer::PredictionConfig& pred) {
  if (kept_tiers.size() < 2) {
    throw std::invalid_argument("limited_rank_experiment: need >= 2 kept tiers");
  }
  const data::RankDataset kept = data::filter_ranks(train_set, kept_tiers);
  if (kept.rank_count() != static_cast<int>(kept_tiers.size())) {
    throw std::invalid_argument("a kept tier is missing from the train set");
  }

  LimitedRankResult result;
  result.params = train::train(kept, scorer_spec, config).params;
  result.profile = infer::build_profile(result.params, candidate);
  result.curve = infer::accuracy_curve(result.params, result.profile, query,
                                       game_counts, pred);
  result.betas_strictly_descending = true;
  for (int i = 1; i < result.profile.rank_count(); ++i) {
    if (!(result.profile.overall[i - 1] > result.profile.overall[i])) {
      result.betas_strictly_descending = false;
    }
  }
  return result;
}

double infinity_rank_mean(const scorer::ScorerParams& params,
                          const data::RankDataset& candidate, uint64_t seed) {
  Rng rng(seed);
  double sum = 0.0;
  int64_t count = 0;
  for (int r = 0; r < candidate.rank_count(); ++r) {
    for (const auto& pair : candidate.pairs[r]) {
      const game::StateActionPair inf_pair =
          train::perturb_to_infinity(pair, rng);
      const game::FeatureVector x =
          game::encode_features(candidate.spec, inf_pair);
      sum += scorer::forward(params, x).beta;
      count += 1;
    }
  }
  if (count == 0) throw std::invalid_argument("empty candidate set");
  return sum / static_cast<double>(count);
}

}  // namespace strength::eval
