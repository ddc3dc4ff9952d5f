#pragma once

// Deterministic randomness. Everything derives from one 64-bit seed:
// per-instance seeds through the splitmix64 finalizer, streams through
// std::mt19937_64. Both are fully specified, so output is identical across
// platforms and toolchains; std::* distributions are avoided on purpose.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "bimod/core.hpp"
#include "bimod/matrix.hpp"

namespace bimod {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64_mix(master ^ (0x9E3779B97F4A7C15ull * (index + 1)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n).
  int below(int n) {
    if (n <= 0) throw input_error("Rng::below requires a positive bound");
    return static_cast<int>(raw() % static_cast<std::uint64_t>(n));
  }

  bool bernoulli(double pr) { return unit() < pr; }

  // Real and imaginary parts uniform in [-1, 1).
  cplx box() {
    const double re = 2.0 * unit() - 1.0;
    const double im = 2.0 * unit() - 1.0;
    return cplx{re, im};
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[below(i + 1)]);
  }

 private:
  std::mt19937_64 gen_;
};

Pattern random_pattern(Rng& rng, int max_rows, int max_cols, double density);

// Disjoint union of up to max_blocks full rectangles.
Pattern random_tro_pattern(Rng& rng, int max_rows, int max_cols, int max_blocks = 4);

Matrix random_matrix_on(Rng& rng, const Pattern& p);

}  // namespace bimod
