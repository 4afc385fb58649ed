#include "strength/scorer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace strength::scorer {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint payload assumes little-endian doubles");

constexpr const char* kCheckpointMagic = "strengthkit-scorer";
constexpr int kCheckpointVersion = 1;

// Offsets of each block in the flat parameter vector, declaration order:
// W1, b1, [W2, b2], Wp, bp, Wv, bv, Wb, bb, [Wc, bc].
struct Layout {
  size_t w1, b1, w2, b2, wp, bp, wv, bv, wb, bb, wc, bc, total;

  explicit Layout(const ScorerSpec& s) {
    const size_t i = s.input_length, h = s.hidden_width, a = s.action_count;
    const size_t r = s.rank_head_size;
    size_t off = 0;
    w1 = off; off += h * i;
    b1 = off; off += h;
    if (s.hidden_layers == 2) {
      w2 = off; off += h * h;
      b2 = off; off += h;
    } else {
      w2 = b2 = off;
    }
    wp = off; off += a * h;
    bp = off; off += a;
    wv = off; off += h;
    bv = off; off += 1;
    wb = off; off += h;
    bb = off; off += 1;
    if (r > 0) {
      wc = off; off += r * h;
      bc = off; off += r;
    } else {
      wc = bc = off;
    }
    total = off;
  }
};

double dot(const double* w, const double* x, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += w[i] * x[i];
  return acc;
}

struct ForwardCache {
  std::vector<double> h1, h2;
  const std::vector<double>* h = nullptr;  // trunk output
  ScorerOutput out;
};

ForwardCache run_forward(const ScorerParams& params,
                         const game::FeatureVector& x) {
  const ScorerSpec& s = params.spec;
  if (static_cast<int>(x.size()) != s.input_length) {
    throw std::invalid_argument("forward: input length mismatch");
  }
  const Layout lay(s);
  const double* p = params.values.data();
  const size_t h = s.hidden_width, i = s.input_length, a = s.action_count;

  ForwardCache c;
  c.h1.resize(h);
  for (size_t j = 0; j < h; ++j) {
    c.h1[j] = std::tanh(dot(p + lay.w1 + j * i, x.data(), i) + p[lay.b1 + j]);
  }
  if (s.hidden_layers == 2) {
    c.h2.resize(h);
    for (size_t j = 0; j < h; ++j) {
      c.h2[j] =
          std::tanh(dot(p + lay.w2 + j * h, c.h1.data(), h) + p[lay.b2 + j]);
    }
    c.h = &c.h2;
  } else {
    c.h = &c.h1;
  }
  const double* trunk = c.h->data();

  c.out.policy_logits.resize(a);
  for (size_t k = 0; k < a; ++k) {
    c.out.policy_logits[k] = dot(p + lay.wp + k * h, trunk, h) + p[lay.bp + k];
  }
  c.out.value = std::tanh(dot(p + lay.wv, trunk, h) + p[lay.bv]);
  c.out.beta = dot(p + lay.wb, trunk, h) + p[lay.bb];
  if (s.rank_head_size > 0) {
    c.out.rank_logits.resize(s.rank_head_size);
    for (int k = 0; k < s.rank_head_size; ++k) {
      c.out.rank_logits[k] = dot(p + lay.wc + k * h, trunk, h) + p[lay.bc + k];
    }
  }
  return c;
}

}  // namespace

size_t ScorerSpec::param_count() const {
  validate();
  return Layout(*this).total;
}

void ScorerSpec::validate() const {
  if (input_length < 1) throw std::invalid_argument("input_length must be >= 1");
  if (hidden_width < 1) throw std::invalid_argument("hidden_width must be >= 1");
  if (hidden_layers != 1 && hidden_layers != 2) {
    throw std::invalid_argument("hidden_layers must be 1 or 2");
  }
  if (action_count < 1) throw std::invalid_argument("action_count must be >= 1");
  if (rank_head_size < 0) throw std::invalid_argument("rank_head_size must be >= 0");
}

ScorerParams init_params(const ScorerSpec& spec, uint64_t seed) {
  spec.validate();
  const Layout lay(spec);
  ScorerParams params;
  params.spec = spec;
  params.values.resize(lay.total);
  Rng rng(seed);

  auto fill = [&](size_t from, size_t count, int fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (size_t k = 0; k < count; ++k) {
      params.values[from + k] = rng.uniform_range(-bound, bound);
    }
  };

  const size_t h = spec.hidden_width, i = spec.input_length;
  const size_t a = spec.action_count, r = spec.rank_head_size;
  fill(lay.w1, h * i + h, static_cast<int>(i));  // W1 and b1
  if (spec.hidden_layers == 2) fill(lay.w2, h * h + h, static_cast<int>(h));
  fill(lay.wp, a * h + a, static_cast<int>(h));
  fill(lay.wv, h + 1, static_cast<int>(h));
  fill(lay.wb, h + 1, static_cast<int>(h));
  if (r > 0) fill(lay.wc, r * h + r, static_cast<int>(h));
  return params;
}

ScorerOutput forward(const ScorerParams& params, const game::FeatureVector& x) {
  return run_forward(params, x).out;
}

GradientVector backward(const ScorerParams& params, const game::FeatureVector& x,
                        const UpstreamGrads& upstream) {
  const ScorerSpec& s = params.spec;
  const size_t h = s.hidden_width, i = s.input_length, a = s.action_count;
  const size_t r = s.rank_head_size;
  if (!upstream.d_policy_logits.empty() && upstream.d_policy_logits.size() != a) {
    throw std::invalid_argument("backward: policy upstream size mismatch");
  }
  if (!upstream.d_rank_logits.empty() && upstream.d_rank_logits.size() != r) {
    throw std::invalid_argument("backward: rank upstream size mismatch");
  }

  const ForwardCache c = run_forward(params, x);
  const Layout lay(s);
  const double* p = params.values.data();
  const double* trunk = c.h->data();

  GradientVector grad(lay.total, 0.0);
  std::vector<double> d_trunk(h, 0.0);

  // Heads.
  if (!upstream.d_policy_logits.empty()) {
    for (size_t k = 0; k < a; ++k) {
      const double g = upstream.d_policy_logits[k];
      if (g == 0.0) continue;
      for (size_t j = 0; j < h; ++j) {
        grad[lay.wp + k * h + j] += g * trunk[j];
        d_trunk[j] += g * p[lay.wp + k * h + j];
      }
      grad[lay.bp + k] += g;
    }
  }
  {
    const double d_uv = upstream.d_value * (1.0 - c.out.value * c.out.value);
    if (d_uv != 0.0) {
      for (size_t j = 0; j < h; ++j) {
        grad[lay.wv + j] += d_uv * trunk[j];
        d_trunk[j] += d_uv * p[lay.wv + j];
      }
      grad[lay.bv] += d_uv;
    }
  }
  if (upstream.d_beta != 0.0) {
    for (size_t j = 0; j < h; ++j) {
      grad[lay.wb + j] += upstream.d_beta * trunk[j];
      d_trunk[j] += upstream.d_beta * p[lay.wb + j];
    }
    grad[lay.bb] += upstream.d_beta;
  }
  if (!upstream.d_rank_logits.empty()) {
    for (size_t k = 0; k < r; ++k) {
      const double g = upstream.d_rank_logits[k];
      if (g == 0.0) continue;
      for (size_t j = 0; j < h; ++j) {
        grad[lay.wc + k * h + j] += g * trunk[j];
        d_trunk[j] += g * p[lay.wc + k * h + j];
      }
      grad[lay.bc + k] += g;
    }
  }

  // Trunk.
  std::vector<double> d_h1(h, 0.0);
  if (s.hidden_layers == 2) {
    for (size_t j = 0; j < h; ++j) {
      const double d_pre2 = d_trunk[j] * (1.0 - c.h2[j] * c.h2[j]);
      if (d_pre2 == 0.0) continue;
      for (size_t k = 0; k < h; ++k) {
        grad[lay.w2 + j * h + k] += d_pre2 * c.h1[k];
        d_h1[k] += d_pre2 * p[lay.w2 + j * h + k];
      }
      grad[lay.b2 + j] += d_pre2;
    }
  } else {
    d_h1 = d_trunk;
  }
  for (size_t j = 0; j < h; ++j) {
    const double d_pre1 = d_h1[j] * (1.0 - c.h1[j] * c.h1[j]);
    if (d_pre1 == 0.0) continue;
    for (size_t k = 0; k < i; ++k) {
      grad[lay.w1 + j * i + k] += d_pre1 * x[k];
    }
    grad[lay.b1 + j] += d_pre1;
  }
  return grad;
}

ScorerParams sgd_step(const ScorerParams& params, const GradientVector& grad,
                      double learning_rate) {
  if (grad.size() != params.values.size()) {
    throw std::invalid_argument("sgd_step: gradient length mismatch");
  }
  for (const double g : grad) {
    if (!std::isfinite(g)) {
      throw std::runtime_error("sgd_step: non-finite gradient");
    }
  }
  ScorerParams next = params;
  for (size_t k = 0; k < grad.size(); ++k) {
    next.values[k] -= learning_rate * grad[k];
  }
  return next;
}

void save_checkpoint(const ScorerParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  char header[256];
  std::snprintf(header, sizeof(header),
                "%s v%d input=%d hidden=%d layers=%d actions=%d rank_head=%d "
                "params=%zu\n",
                kCheckpointMagic, kCheckpointVersion, params.spec.input_length,
                params.spec.hidden_width, params.spec.hidden_layers,
                params.spec.action_count, params.spec.rank_head_size,
                params.values.size());
  out << header;
  out.write(reinterpret_cast<const char*>(params.values.data()),
            static_cast<std::streamsize>(params.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

ScorerParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("checkpoint missing header: " + path);
  }
  char magic[64];
  int version = 0;
  ScorerSpec spec;
  size_t count = 0;
  const int fields = std::sscanf(
      header.c_str(),
      "%63s v%d input=%d hidden=%d layers=%d actions=%d rank_head=%d params=%zu",
      magic, &version, &spec.input_length, &spec.hidden_width,
      &spec.hidden_layers, &spec.action_count, &spec.rank_head_size, &count);
  if (fields != 8 || std::strcmp(magic, kCheckpointMagic) != 0) {
    throw std::runtime_error("not a scorer checkpoint: " + path);
  }
  if (version != kCheckpointVersion) {
    throw std::runtime_error("unsupported checkpoint version " +
                             std::to_string(version));
  }
  spec.validate();
  if (count != spec.param_count()) {
    throw std::runtime_error("checkpoint parameter count does not match spec");
  }
  ScorerParams params;
  params.spec = spec;
  params.values.resize(count);
  in.read(reinterpret_cast<char*>(params.values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<size_t>(in.gcount()) != count * sizeof(double)) {
    throw std::runtime_error("checkpoint truncated: " + path);
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw std::runtime_error("checkpoint has trailing bytes: " + path);
  }
  return params;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  std::vector<double> probs(logits.size());
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (size_t k = 0; k < logits.size(); ++k) {
    probs[k] = std::exp(logits[k] - m);
    sum += probs[k];
  }
  for (double& v : probs) v /= sum;
  return probs;
}

EdgeEvaluator::EdgeEvaluator(const ScorerParams& params) : params_(params) {
  all_zero_ = std::all_of(params.values.begin(), params.values.end(),
                          [](double v) { return v == 0.0; });
}

std::vector<EdgeEval> EdgeEvaluator::evaluate(
    const game::FeatureVector& base, int action_slot_offset,
    const std::vector<game::Action>& actions) const {
  std::vector<EdgeEval> evals(actions.size());
  if (all_zero_) return evals;  // tanh(0) trunk: logits 0, value 0, beta 0

  const ScorerSpec& s = params_.spec;
  if (static_cast<int>(base.size()) != s.input_length) {
    throw std::invalid_argument("evaluate: base feature length mismatch");
  }
  const Layout lay(s);
  const double* p = params_.values.data();
  const size_t h = s.hidden_width, i = s.input_length;

  // State-only trunk pre-activation; each action adds one weight column.
  std::vector<double> pre1(h);
  for (size_t j = 0; j < h; ++j) {
    pre1[j] = dot(p + lay.w1 + j * i, base.data(), i) + p[lay.b1 + j];
  }

  std::vector<double> h1(h), h2;
  if (s.hidden_layers == 2) h2.resize(h);
  for (size_t e = 0; e < actions.size(); ++e) {
    const size_t col = action_slot_offset + actions[e];
    for (size_t j = 0; j < h; ++j) {
      h1[j] = std::tanh(pre1[j] + p[lay.w1 + j * i + col]);
    }
    const double* trunk = h1.data();
    if (s.hidden_layers == 2) {
      for (size_t j = 0; j < h; ++j) {
        h2[j] =
            std::tanh(dot(p + lay.w2 + j * h, h1.data(), h) + p[lay.b2 + j]);
      }
      trunk = h2.data();
    }
    const size_t a = actions[e];
    evals[e].policy_logit = dot(p + lay.wp + a * h, trunk, h) + p[lay.bp + a];
    evals[e].value = std::tanh(dot(p + lay.wv, trunk, h) + p[lay.bv]);
    evals[e].beta = dot(p + lay.wb, trunk, h) + p[lay.bb];
  }
  return evals;
}

}  // namespace strength::scorer
