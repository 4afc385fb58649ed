#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace strength {

// Deterministic PRNG used throughout the toolkit.
//
// The engine is std::mt19937_64 (the algorithm is fixed by the standard, so
// raw draws are identical on every platform). All derived quantities are
// produced here with explicit arithmetic instead of std::*_distribution,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1). 53-bit mantissa from the top bits of one draw.
  double uniform_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling, bias-free.
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  int uniform_index(size_t n) { return static_cast<int>(uniform_int(n)); }

  // Uniform in [lo, hi).
  double uniform_range(double lo, double hi) {
    return lo + (hi - lo) * uniform_double();
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = uniform_int(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Draws k distinct indices from [0, n) (Fisher-Yates over an index pool).
  std::vector<int> sample_without_replacement(size_t n, size_t k) {
    if (k > n) {
      throw std::invalid_argument("sample_without_replacement: k > n");
    }
    std::vector<int> pool(n);
    for (size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
    std::vector<int> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) {
      const size_t j = i + uniform_int(n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 step; used to derive independent stream seeds from a base seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace strength
