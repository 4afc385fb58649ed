#include "strength/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include "strength/bt.hpp"

namespace strength::infer {

namespace {

constexpr const char* kProfileMagic = "strengthkit-profile";
constexpr int kProfileVersion = 1;

double ci_halfwidth(double p, int n) {
  return 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

}  // namespace

int StrengthProfile::index_of(int rank_id) const {
  for (int i = 0; i < rank_count(); ++i) {
    if (rank_ids[i] == rank_id) return i;
  }
  throw std::invalid_argument("profile has no rank " + std::to_string(rank_id));
}

double StrengthProfile::target_score(int rank_id, int depth) const {
  const int i = index_of(rank_id);
  if (depth >= 0 && depth < depth_cutoff && per_depth_count[i][depth] > 0) {
    return per_depth[i][depth];
  }
  return overall[i];
}

MoveFilter parse_filter(const std::string& text) {
  if (text == "all") return {FilterKind::kAll, 0};
  if (text == "one-per-game") return {FilterKind::kOnePerGame, 0};
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    const int k = std::stoi(text.substr(colon + 1));
    if (k < 1) throw std::invalid_argument("filter count must be >= 1");
    if (head == "first") return {FilterKind::kFirstK, k};
    if (head == "last") return {FilterKind::kLastK, k};
  }
  throw std::invalid_argument("unknown move filter: " + text);
}

std::string filter_name(const MoveFilter& filter) {
  switch (filter.kind) {
    case FilterKind::kAll: return "all";
    case FilterKind::kOnePerGame: return "one-per-game";
    case FilterKind::kFirstK: return "first:" + std::to_string(filter.k);
    case FilterKind::kLastK: return "last:" + std::to_string(filter.k);
  }
  return "?";
}

std::vector<std::pair<int, double>> score_game(
    const scorer::ScorerParams& params, const data::GameRecord& record,
    const MoveFilter& filter, Rng* rng) {
  const std::vector<game::GameState> states = data::replay_states(record);
  const size_t total = states.size();

  size_t from = 0, to = total;
  switch (filter.kind) {
    case FilterKind::kAll:
      break;
    case FilterKind::kFirstK:
      to = std::min<size_t>(filter.k, total);
      break;
    case FilterKind::kLastK:
      from = total > static_cast<size_t>(filter.k) ? total - filter.k : 0;
      break;
    case FilterKind::kOnePerGame: {
      if (rng == nullptr) {
        throw std::invalid_argument("one-per-game filter needs an rng");
      }
      from = rng->uniform_int(total);
      to = from + 1;
      break;
    }
  }

  std::vector<std::pair<int, double>> scores;
  scores.reserve(to - from);
  for (size_t i = from; i < to; ++i) {
    game::StateActionPair pair(states[i], record.moves[i], record.first_label);
    const game::FeatureVector x = game::encode_features(record.spec, pair);
    scores.emplace_back(static_cast<int>(i), scorer::forward(params, x).beta);
  }
  return scores;
}

StrengthProfile build_profile(const scorer::ScorerParams& params,
                              const data::RankDataset& candidate) {
  if (candidate.rank_count() == 0) {
    throw std::invalid_argument("build_profile: empty candidate set");
  }
  StrengthProfile profile;
  profile.rank_ids = candidate.rank_ids;

  int max_depth = -1;
  for (const auto& pairs : candidate.pairs) {
    if (pairs.empty()) {
      throw std::invalid_argument("build_profile: a rank has no pairs");
    }
    for (const auto& pair : pairs) max_depth = std::max(max_depth, pair.depth);
  }
  profile.depth_cutoff = max_depth + 1;

  const int n = candidate.rank_count();
  profile.overall.assign(n, 0.0);
  profile.overall_count.assign(n, 0);
  profile.per_depth.assign(n, std::vector<double>(profile.depth_cutoff, 0.0));
  profile.per_depth_count.assign(n,
                                 std::vector<int64_t>(profile.depth_cutoff, 0));

  for (int r = 0; r < n; ++r) {
    auto& sums = profile.per_depth[r];
    auto& counts = profile.per_depth_count[r];
    double total = 0.0;
    for (const auto& pair : candidate.pairs[r]) {
      const game::FeatureVector x = game::encode_features(candidate.spec, pair);
      const double beta = scorer::forward(params, x).beta;
      total += beta;
      sums[pair.depth] += beta;
      counts[pair.depth] += 1;
    }
    profile.overall_count[r] =
        static_cast<int64_t>(candidate.pairs[r].size());
    profile.overall[r] = total / static_cast<double>(profile.overall_count[r]);
    for (int d = 0; d < profile.depth_cutoff; ++d) {
      if (counts[d] > 0) sums[d] /= static_cast<double>(counts[d]);
    }
  }
  return profile;
}

int predict_rank(const StrengthProfile& profile, double query_mean) {
  if (profile.rank_count() == 0) {
    throw std::invalid_argument("predict_rank: empty profile");
  }
  int best = 0;
  double best_dist = std::abs(query_mean - profile.overall[0]);
  for (int i = 1; i < profile.rank_count(); ++i) {
    const double dist = std::abs(query_mean - profile.overall[i]);
    if (dist < best_dist) {  // ties keep the earlier (stronger) rank
      best = i;
      best_dist = dist;
    }
  }
  return profile.rank_ids[best];
}

AccuracyCurve accuracy_curve(const scorer::ScorerParams& params,
                             const StrengthProfile& profile,
                             const data::RankDataset& query,
                             const std::vector<int>& game_counts,
                             const PredictionConfig& config) {
  if (config.repeats < 1) {
    throw std::invalid_argument("accuracy_curve: repeats must be >= 1");
  }
  const int n_ranks = query.rank_count();

  // Score every query game once (all moves); filters subset afterwards.
  std::vector<std::vector<std::vector<std::pair<int, double>>>> scored(n_ranks);
  for (int r = 0; r < n_ranks; ++r) {
    scored[r].reserve(query.records[r].size());
    for (const auto& rec : query.records[r]) {
      scored[r].push_back(score_game(params, rec, {FilterKind::kAll, 0}));
    }
  }

  Rng rng(config.seed);
  AccuracyCurve curve;
  curve.game_counts = game_counts;
  for (const int n_games : game_counts) {
    double acc_sum = 0.0;
    for (int r = 0; r < n_ranks; ++r) {
      const int available = static_cast<int>(scored[r].size());
      if (n_games > available) {
        throw std::invalid_argument(
            "accuracy_curve: N exceeds the games available for rank " +
            std::to_string(query.rank_ids[r]));
      }
      int correct = 0;
      for (int rep = 0; rep < config.repeats; ++rep) {
        const std::vector<int> picks =
            rng.sample_without_replacement(available, n_games);
        double sum = 0.0;
        int count = 0;
        for (const int g : picks) {
          const auto& moves = scored[r][g];
          size_t from = 0, to = moves.size();
          switch (config.filter.kind) {
            case FilterKind::kAll:
              break;
            case FilterKind::kFirstK:
              to = std::min<size_t>(config.filter.k, moves.size());
              break;
            case FilterKind::kLastK:
              from = moves.size() > static_cast<size_t>(config.filter.k)
                         ? moves.size() - config.filter.k
                         : 0;
              break;
            case FilterKind::kOnePerGame:
              from = rng.uniform_int(moves.size());
              to = from + 1;
              break;
          }
          for (size_t i = from; i < to; ++i) {
            sum += moves[i].second;
            ++count;
          }
        }
        const int predicted = predict_rank(profile, sum / count);
        const int pred_idx = profile.index_of(predicted);
        const int true_idx = profile.index_of(query.rank_ids[r]);
        if (std::abs(pred_idx - true_idx) <= config.tolerance) ++correct;
      }
      AccuracyCell cell;
      cell.games = n_games;
      cell.rank_id = query.rank_ids[r];
      cell.accuracy = static_cast<double>(correct) / config.repeats;
      const double hw = ci_halfwidth(cell.accuracy, config.repeats);
      cell.ci_low = std::max(0.0, cell.accuracy - hw);
      cell.ci_high = std::min(1.0, cell.accuracy + hw);
      curve.cells.push_back(cell);
      acc_sum += cell.accuracy;
    }
    curve.mean_accuracy.push_back(acc_sum / n_ranks);
  }
  return curve;
}

namespace {

std::vector<std::vector<double>> rank_probs_per_position(
    const scorer::ScorerParams& params,
    const std::vector<data::GameRecord>& games, const MoveFilter& filter,
    Rng* rng) {
  if (params.spec.rank_head_size <= 0) {
    throw std::invalid_argument("rank classification head is not present");
  }
  std::vector<std::vector<double>> probs;
  for (const auto& rec : games) {
    const std::vector<game::GameState> states = data::replay_states(rec);
    size_t from = 0, to = states.size();
    switch (filter.kind) {
      case FilterKind::kAll:
        break;
      case FilterKind::kFirstK:
        to = std::min<size_t>(filter.k, states.size());
        break;
      case FilterKind::kLastK:
        from = states.size() > static_cast<size_t>(filter.k)
                   ? states.size() - filter.k
                   : 0;
        break;
      case FilterKind::kOnePerGame:
        if (rng == nullptr) {
          throw std::invalid_argument("one-per-game filter needs an rng");
        }
        from = rng->uniform_int(states.size());
        to = from + 1;
        break;
    }
    for (size_t i = from; i < to; ++i) {
      game::StateActionPair pair(states[i], rec.moves[i], rec.first_label);
      const auto out =
          scorer::forward(params, game::encode_features(rec.spec, pair));
      probs.push_back(scorer::softmax(out.rank_logits));
    }
  }
  if (probs.empty()) {
    throw std::invalid_argument("no positions retained for SL prediction");
  }
  return probs;
}

}  // namespace

int sl_predict_sum(const scorer::ScorerParams& params,
                   const std::vector<data::GameRecord>& games,
                   const MoveFilter& filter, Rng* rng) {
  const auto probs = rank_probs_per_position(params, games, filter, rng);
  std::vector<double> total(probs[0].size(), 0.0);
  for (const auto& p : probs) {
    for (size_t k = 0; k < p.size(); ++k) total[k] += p[k];
  }
  int best = 0;
  for (size_t k = 1; k < total.size(); ++k) {
    if (total[k] > total[best]) best = static_cast<int>(k);
  }
  return best + 1;
}

int sl_predict_vote(const scorer::ScorerParams& params,
                    const std::vector<data::GameRecord>& games,
                    const MoveFilter& filter, Rng* rng) {
  const auto probs = rank_probs_per_position(params, games, filter, rng);
  std::vector<int> votes(probs[0].size(), 0);
  for (const auto& p : probs) {
    int arg = 0;
    for (size_t k = 1; k < p.size(); ++k) {
      if (p[k] > p[arg]) arg = static_cast<int>(k);
    }
    votes[arg] += 1;
  }
  int best = 0;
  for (size_t k = 1; k < votes.size(); ++k) {
    if (votes[k] > votes[best]) best = static_cast<int>(k);
  }
  return best + 1;
}

void save_profile(const StrengthProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open profile for writing: " + path);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s v%d ranks=%d depth_cutoff=%d\n",
                kProfileMagic, kProfileVersion, profile.rank_count(),
                profile.depth_cutoff);
  out << buf;
  out << "# rank depth mean count (depth -1 = overall)\n";
  for (int i = 0; i < profile.rank_count(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d -1 %.17g %lld\n", profile.rank_ids[i],
                  profile.overall[i],
                  static_cast<long long>(profile.overall_count[i]));
    out << buf;
    for (int d = 0; d < profile.depth_cutoff; ++d) {
      if (profile.per_depth_count[i][d] == 0) continue;
      std::snprintf(buf, sizeof(buf), "%d %d %.17g %lld\n",
                    profile.rank_ids[i], d, profile.per_depth[i][d],
                    static_cast<long long>(profile.per_depth_count[i][d]));
      out << buf;
    }
  }
  if (!out) throw std::runtime_error("profile write failed: " + path);
}

StrengthProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile: " + path);
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("profile missing header: " + path);
  }
  char magic[64];
  int version = 0, ranks = 0, cutoff = 0;
  if (std::sscanf(header.c_str(), "%63s v%d ranks=%d depth_cutoff=%d", magic,
                  &version, &ranks, &cutoff) != 4 ||
      std::strcmp(magic, kProfileMagic) != 0) {
    throw std::runtime_error("not a strength profile: " + path);
  }
  if (version != kProfileVersion) {
    throw std::runtime_error("unsupported profile version");
  }

  std::map<int, int> rank_slot;
  StrengthProfile profile;
  profile.depth_cutoff = cutoff;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    int rank = 0, depth = 0;
    double mean = 0.0;
    long long count = 0;
    if (std::sscanf(line.c_str(), "%d %d %lf %lld", &rank, &depth, &mean,
                    &count) != 4) {
      throw std::runtime_error("bad profile row: " + line);
    }
    if (!rank_slot.count(rank)) {
      rank_slot[rank] = static_cast<int>(profile.rank_ids.size());
      profile.rank_ids.push_back(rank);
      profile.overall.push_back(0.0);
      profile.overall_count.push_back(0);
      profile.per_depth.emplace_back(cutoff, 0.0);
      profile.per_depth_count.emplace_back(cutoff, 0);
    }
    const int i = rank_slot[rank];
    if (depth == -1) {
      profile.overall[i] = mean;
      profile.overall_count[i] = count;
    } else if (depth >= 0 && depth < cutoff) {
      profile.per_depth[i][depth] = mean;
      profile.per_depth_count[i][depth] = count;
    } else {
      throw std::runtime_error("profile depth out of range: " + line);
    }
  }
  if (profile.rank_count() != ranks) {
    throw std::runtime_error("profile rank count mismatch: " + path);
  }
  return profile;
}

}  // namespace strength::infer
