#include "strength/training.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "strength/bt.hpp"

namespace strength::train {

void TrainConfig::validate() const {
  if (pairs_per_rank < 1) {
    throw std::invalid_argument("pairs_per_rank must be >= 1");
  }
  if (include_r_infinity && pairs_per_rank < 2) {
    throw std::invalid_argument(
        "pairs_per_rank must be >= 2 when the infinity rank is enabled");
  }
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (w_policy < 0 || w_value < 0 || w_strength < 0 || w_sl < 0) {
    throw std::invalid_argument("loss weights must be >= 0");
  }
  if (log_interval < 1) throw std::invalid_argument("log_interval must be >= 1");
}

game::StateActionPair perturb_to_infinity(const game::StateActionPair& pair,
                                          Rng& rng) {
  if (pair.state.is_terminal()) {
    throw std::invalid_argument("perturb_to_infinity: terminal state");
  }
  const std::vector<game::Action> legal = game::legal_actions(pair.state);
  const game::Action action = legal[rng.uniform_index(legal.size())];
  return game::StateActionPair(pair.state, action, game::kRankInfinity);
}

RankBatch sample_rank_batch(const data::RankDataset& dataset,
                            const TrainConfig& config, Rng& rng) {
  config.validate();
  const int m = config.pairs_per_rank;
  RankBatch batch;
  batch.pairs_per_rank = m;
  batch.has_infinity = config.include_r_infinity;
  batch.rank_ids = dataset.rank_ids;

  for (int r = 0; r < dataset.rank_count(); ++r) {
    const auto& pool = dataset.pairs[r];
    if (static_cast<int>(pool.size()) < m) {
      throw std::runtime_error("rank " + std::to_string(dataset.rank_ids[r]) +
                               " has fewer than m state-action pairs");
    }
    const std::vector<int> picks =
        rng.sample_without_replacement(pool.size(), m);
    std::vector<game::StateActionPair> row;
    std::vector<int> outs;
    row.reserve(m);
    for (const int idx : picks) {
      row.push_back(pool[idx]);
      outs.push_back(dataset.pair_outcomes[r][idx]);
    }
    batch.rows.push_back(std::move(row));
    batch.outcomes.push_back(std::move(outs));
  }

  if (config.include_r_infinity) {
    std::vector<game::StateActionPair> row;
    row.reserve(m);
    for (int k = 0; k < m; ++k) {
      const int r = rng.uniform_index(dataset.rank_count());
      const auto& pool = dataset.pairs[r];
      const game::StateActionPair& source =
          pool[rng.uniform_index(pool.size())];
      row.push_back(perturb_to_infinity(source, rng));
    }
    batch.outcomes.emplace_back(m, 0);  // unused: no value loss for infinity
    batch.rows.push_back(std::move(row));
  }
  return batch;
}

double value_target(const game::StateActionPair& pair, int outcome_first_view) {
  return pair.state.to_move == game::Player::kFirst
             ? static_cast<double>(outcome_first_view)
             : -static_cast<double>(outcome_first_view);
}

std::pair<scorer::ScorerParams, LossReport> train_step(
    const scorer::ScorerParams& params, RankBatch& batch,
    const TrainConfig& config, double learning_rate) {
  const int m = batch.pairs_per_rank;
  const size_t n_rows = batch.rows.size();
  const size_t n_real_rows = n_rows - (batch.has_infinity ? 1 : 0);

  // Score every pair.
  batch.betas.assign(n_rows, {});
  batch.row_means.assign(n_rows, 0.0);
  std::vector<std::vector<scorer::ScorerOutput>> outputs(n_rows);
  for (size_t r = 0; r < n_rows; ++r) {
    outputs[r].reserve(m);
    batch.betas[r].reserve(m);
    for (const auto& pair : batch.rows[r]) {
      const game::FeatureVector x = game::encode_features(pair.state.spec, pair);
      outputs[r].push_back(scorer::forward(params, x));
      batch.betas[r].push_back(outputs[r].back().beta);
    }
    batch.row_means[r] = bt::composite_score(batch.betas[r]);
  }

  LossReport report;
  report.learning_rate = learning_rate;
  report.row_means = batch.row_means;
  report.strength_loss = bt::bt_listwise_loss(batch.row_means);
  const std::vector<double> d_means = bt::bt_listwise_grad(batch.row_means);

  const double pair_count = static_cast<double>(n_real_rows * m);
  scorer::GradientVector grad(params.values.size(), 0.0);
  const bool has_rank_head = params.spec.rank_head_size > 0;
  const bool use_sl = config.w_sl > 0.0;
  if (use_sl && !has_rank_head) {
    throw std::runtime_error("w_sl > 0 requires a scorer with a rank head");
  }

  for (size_t r = 0; r < n_rows; ++r) {
    const bool infinity_row = batch.has_infinity && r == n_rows - 1;
    for (int k = 0; k < m; ++k) {
      const auto& pair = batch.rows[r][k];
      const auto& out = outputs[r][k];
      scorer::UpstreamGrads up;
      up.d_beta = config.w_strength * d_means[r] / static_cast<double>(m);

      if (!infinity_row) {
        if (config.w_policy > 0.0) {
          std::vector<double> probs = scorer::softmax(out.policy_logits);
          report.policy_loss += -std::log(std::max(probs[pair.action], 1e-300));
          up.d_policy_logits = std::move(probs);
          up.d_policy_logits[pair.action] -= 1.0;
          for (double& g : up.d_policy_logits) {
            g *= config.w_policy / pair_count;
          }
        }
        if (config.w_value > 0.0) {
          const double z = value_target(pair, batch.outcomes[r][k]);
          report.value_loss += (out.value - z) * (out.value - z);
          up.d_value = config.w_value * 2.0 * (out.value - z) / pair_count;
        }
        if (use_sl) {
          // Rank ids double as class indices (1-based).
          const int rank_id = batch.rank_ids[r];
          report.sl_loss += bt::sl_classification_loss(out.rank_logits, rank_id);
          std::vector<double> probs = scorer::softmax(out.rank_logits);
          probs[rank_id - 1] -= 1.0;
          for (double& g : probs) g *= config.w_sl / pair_count;
          up.d_rank_logits = std::move(probs);
        }
      }

      const scorer::GradientVector g = scorer::backward(
          params, game::encode_features(pair.state.spec, pair), up);
      for (size_t t = 0; t < grad.size(); ++t) grad[t] += g[t];
    }
  }
  report.policy_loss /= pair_count;
  report.value_loss /= pair_count;
  report.sl_loss /= pair_count;

  if (!std::isfinite(report.strength_loss) ||
      !std::isfinite(report.policy_loss) || !std::isfinite(report.value_loss)) {
    throw std::runtime_error("train_step: non-finite loss");
  }
  return {scorer::sgd_step(params, grad, learning_rate), report};
}

namespace {

void append_log_row(std::ofstream& log, const LossReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d %.6g %.9f %.9f %.9f", r.step,
                r.learning_rate, r.strength_loss, r.policy_loss, r.value_loss);
  log << buf;
  for (const double mean : r.row_means) {
    std::snprintf(buf, sizeof(buf), " %.9f", mean);
    log << buf;
  }
  log << "\n";
}

}  // namespace

TrainResult train(const data::RankDataset& dataset,
                  const scorer::ScorerSpec& scorer_spec,
                  const TrainConfig& config, const std::string& log_path,
                  const std::string& checkpoint_path) {
  config.validate();
  TrainResult result;
  result.params = scorer::init_params(scorer_spec, config.seed);
  Rng rng(mix_seed(config.seed, 0x7261696eULL));

  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path, std::ios::app);
    if (!log) throw std::runtime_error("cannot open training log: " + log_path);
    log << "# step lr strength_loss policy_loss value_loss row_means...\n";
  }

  const int drop_step =
      config.lr_drop_step > 0 ? config.lr_drop_step : (config.steps * 10) / 13;
  for (int step = 1; step <= config.steps; ++step) {
    const double lr = step > drop_step ? config.learning_rate * 0.5
                                       : config.learning_rate;
    RankBatch batch = sample_rank_batch(dataset, config, rng);
    auto [next, report] = train_step(result.params, batch, config, lr);
    result.params = std::move(next);
    report.step = step;
    if (step % config.log_interval == 0) {
      result.log.push_back(report);
      if (log.is_open()) append_log_row(log, report);
    }
    if (config.checkpoint_interval > 0 && !checkpoint_path.empty() &&
        step % config.checkpoint_interval == 0) {
      scorer::save_checkpoint(result.params, checkpoint_path);
    }
  }
  if (!checkpoint_path.empty()) {
    scorer::save_checkpoint(result.params, checkpoint_path);
  }
  return result;
}

}  // namespace strength::train
