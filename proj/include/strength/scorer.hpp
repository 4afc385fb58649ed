#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strength/game.hpp"

namespace strength::scorer {

// Fully-connected trunk with tanh activations and linear heads. The value
// head is squashed with tanh to [-1, 1]; the strength head is affine and
// unbounded. rank_head_size > 0 adds an n-way rank classification head that
// shares the trunk (used by the supervised-learning baseline).
struct ScorerSpec {
  int input_length = 0;
  int hidden_width = 64;
  int hidden_layers = 1;  // 1 or 2
  int action_count = 0;
  int rank_head_size = 0;

  size_t param_count() const;
  void validate() const;
  bool operator==(const ScorerSpec&) const = default;
};

struct ScorerParams {
  ScorerSpec spec;
  std::vector<double> values;
};

struct ScorerOutput {
  std::vector<double> policy_logits;
  double value = 0.0;
  double beta = 0.0;
  std::vector<double> rank_logits;  // empty unless rank_head_size > 0
};

// Upstream loss gradients fed into backward. Empty vectors mean zero.
struct UpstreamGrads {
  std::vector<double> d_policy_logits;
  double d_value = 0.0;
  double d_beta = 0.0;
  std::vector<double> d_rank_logits;
};

using GradientVector = std::vector<double>;

// Uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer, drawn in
// declaration order from Rng(seed). Deterministic across platforms.
ScorerParams init_params(const ScorerSpec& spec, uint64_t seed);

ScorerOutput forward(const ScorerParams& params, const game::FeatureVector& x);

GradientVector backward(const ScorerParams& params, const game::FeatureVector& x,
                        const UpstreamGrads& upstream);

ScorerParams sgd_step(const ScorerParams& params, const GradientVector& grad,
                      double learning_rate);

// Checkpoint file: one text header line (format tag, version, spec fields,
// parameter count) followed by the parameters as raw little-endian doubles
// in declaration order.
void save_checkpoint(const ScorerParams& params, const std::string& path);
ScorerParams load_checkpoint(const std::string& path);

std::vector<double> softmax(const std::vector<double>& logits);

// Per-edge network view used by tree search: for each candidate action the
// policy logit at that action's own index, the value and the strength score
// of the (state, action) pair. Shares the trunk's state term across actions,
// so an expansion costs one trunk pass plus a small per-action tail.
struct EdgeEval {
  double policy_logit = 0.0;
  double value = 0.0;
  double beta = 0.0;
};

class EdgeEvaluator {
 public:
  explicit EdgeEvaluator(const ScorerParams& params);

  // base = encode_state_features output (action slots all zero).
  std::vector<EdgeEval> evaluate(const game::FeatureVector& base,
                                 int action_slot_offset,
                                 const std::vector<game::Action>& actions) const;

  bool all_zero() const { return all_zero_; }

 private:
  const ScorerParams& params_;
  bool all_zero_;
};

}  // namespace strength::scorer
