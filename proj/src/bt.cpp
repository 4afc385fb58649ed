#include "strength/bt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strength::bt {

namespace {

void check_finite(std::span<const double> xs, const char* who) {
  for (const double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(who) + ": non-finite input");
    }
  }
}

// log(sum_j exp(x_j - m)) with m = max, over a tail [from, n).
double tail_logsumexp(std::span<const double> xs, size_t from, double* max_out) {
  double m = xs[from];
  for (size_t j = from + 1; j < xs.size(); ++j) m = std::max(m, xs[j]);
  double sum = 0.0;
  for (size_t j = from; j < xs.size(); ++j) sum += std::exp(xs[j] - m);
  if (max_out) *max_out = m;
  return m + std::log(sum);
}

}  // namespace

double composite_score(std::span<const double> betas) {
  if (betas.empty()) {
    throw std::invalid_argument("composite_score: empty score list");
  }
  check_finite(betas, "composite_score");
  double sum = 0.0;
  for (const double b : betas) sum += b;
  return sum / static_cast<double>(betas.size());
}

double win_probability(std::span<const double> score_means) {
  if (score_means.size() < 2) {
    throw std::invalid_argument("win_probability: need at least 2 ranks");
  }
  check_finite(score_means, "win_probability");
  const double lse = tail_logsumexp(score_means, 0, nullptr);
  return std::exp(score_means[0] - lse);
}

double bt_listwise_loss(std::span<const double> score_means) {
  const size_t n = score_means.size();
  if (n < 2) {
    throw std::invalid_argument("bt_listwise_loss: need at least 2 ranks");
  }
  check_finite(score_means, "bt_listwise_loss");
  double loss = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    loss += tail_logsumexp(score_means, i, nullptr) - score_means[i];
  }
  return loss;
}

std::vector<double> bt_listwise_grad(std::span<const double> score_means) {
  const size_t n = score_means.size();
  if (n < 2) {
    throw std::invalid_argument("bt_listwise_grad: need at least 2 ranks");
  }
  check_finite(score_means, "bt_listwise_grad");
  std::vector<double> grad(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    const double lse = tail_logsumexp(score_means, i, nullptr);
    for (size_t k = i; k < n; ++k) {
      grad[k] += std::exp(score_means[k] - lse);
    }
    grad[i] -= 1.0;
  }
  return grad;
}

double sl_classification_loss(std::span<const double> logits, int true_rank) {
  if (logits.size() < 2) {
    throw std::invalid_argument("sl_classification_loss: need at least 2 ranks");
  }
  if (true_rank < 1 || true_rank > static_cast<int>(logits.size())) {
    throw std::invalid_argument("sl_classification_loss: rank out of range");
  }
  check_finite(logits, "sl_classification_loss");
  const double lse = tail_logsumexp(logits, 0, nullptr);
  return lse - logits[true_rank - 1];
}

}  // namespace strength::bt
