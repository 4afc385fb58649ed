#pragma once

#include <span>
#include <vector>

namespace strength::bt {

// Arithmetic mean of strength scores. Equals the log of the geometric mean
// of the exponentiated scores, which is how a group's composite strength is
// aggregated.
double composite_score(std::span<const double> betas);

// Probability that the first (strongest) entry beats the whole field:
// exp(b1) / sum_j exp(bj). Input ordered strongest-first, n >= 2.
double win_probability(std::span<const double> score_means);

// Listwise negative log-likelihood over ranks ordered strongest-first:
//   L = -sum_{i=1}^{n-1} log( exp(b_i) / sum_{j=i}^{n} exp(b_j) ).
// Each term subtracts the max of its tail before exponentiating.
double bt_listwise_loss(std::span<const double> score_means);

// dL/db_k for the loss above.
std::vector<double> bt_listwise_grad(std::span<const double> score_means);

// Cross-entropy of softmax(logits) against a 1-based true rank.
double sl_classification_loss(std::span<const double> logits, int true_rank);

}  // namespace strength::bt
