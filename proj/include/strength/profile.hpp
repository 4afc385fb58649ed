#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strength/records.hpp"
#include "strength/rng.hpp"
#include "strength/scorer.hpp"

namespace strength::infer {

// Per-rank composite strength scores from a candidate set: overall means and
// per-depth means with sample counts. Depths at or beyond depth_cutoff, or
// with no samples, fall back to the overall mean.
struct StrengthProfile {
  std::vector<int> rank_ids;  // ascending, strongest first
  int depth_cutoff = 0;       // one past the deepest observed move
  std::vector<double> overall;
  std::vector<int64_t> overall_count;
  std::vector<std::vector<double>> per_depth;
  std::vector<std::vector<int64_t>> per_depth_count;

  int rank_count() const { return static_cast<int>(rank_ids.size()); }
  int index_of(int rank_id) const;
  double target_score(int rank_id, int depth) const;
};

enum class FilterKind { kAll, kFirstK, kLastK, kOnePerGame };

struct MoveFilter {
  FilterKind kind = FilterKind::kAll;
  int k = 0;  // for kFirstK / kLastK
};

MoveFilter parse_filter(const std::string& text);  // "all", "first:50", ...
std::string filter_name(const MoveFilter& filter);

struct PredictionConfig {
  int games_per_prediction = 1;  // N
  int repeats = 500;
  int tolerance = 0;  // 0 or 1 rank
  MoveFilter filter;
  uint64_t seed = 0;
};

// One strength score per retained move of the replayed record, with its
// depth. kOnePerGame needs the rng to pick the position.
std::vector<std::pair<int, double>> score_game(
    const scorer::ScorerParams& params, const data::GameRecord& record,
    const MoveFilter& filter, Rng* rng = nullptr);

StrengthProfile build_profile(const scorer::ScorerParams& params,
                              const data::RankDataset& candidate);

// Nearest rank by |query_mean - overall mean|; ties go to the stronger
// (smaller) rank. Returns the rank id.
int predict_rank(const StrengthProfile& profile, double query_mean);

struct AccuracyCell {
  int games = 0;  // N
  int rank_id = 0;
  double accuracy = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct AccuracyCurve {
  std::vector<int> game_counts;
  std::vector<AccuracyCell> cells;      // rank-major within each N
  std::vector<double> mean_accuracy;    // per N, averaged over ranks
};

// For each N and each true rank, the fraction of `repeats` resamples whose
// predicted rank is within the tolerance. 95% confidence intervals use the
// normal approximation over repeats.
AccuracyCurve accuracy_curve(const scorer::ScorerParams& params,
                             const StrengthProfile& profile,
                             const data::RankDataset& query,
                             const std::vector<int>& game_counts,
                             const PredictionConfig& config);

// Supervised-learning baselines over the rank classification head. Both
// return a 1-based rank id; ties go to the stronger rank.
int sl_predict_sum(const scorer::ScorerParams& params,
                   const std::vector<data::GameRecord>& games,
                   const MoveFilter& filter, Rng* rng = nullptr);
int sl_predict_vote(const scorer::ScorerParams& params,
                    const std::vector<data::GameRecord>& games,
                    const MoveFilter& filter, Rng* rng = nullptr);

void save_profile(const StrengthProfile& profile, const std::string& path);
StrengthProfile load_profile(const std::string& path);

}  // namespace strength::infer
