#pragma once

#include <cstdint>
#include <random>

#include "sphdec/complex.hpp"

namespace sphdec {

// Deterministic random source with explicit stream splitting: stream k of
// master seed s is an mt19937_64 engine seeded with two splitmix64 rounds
// of (s + (k+1) * 0x9E3779B97F4A7C15). Distinct (seed, stream) pairs give
// independent, reproducible sequences, one stream per Monte-Carlo trial.
// Gaussian variates come from an explicit Box-Muller transform so the
// byte-level draw sequence does not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0)
      : engine_(stream_seed(master_seed, stream)) {}

  static std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t z = master_seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = splitmix(z);
    z = splitmix(z);
    return z;
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal N(0, 1).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Circularly-symmetric complex Gaussian, unit variance: each part N(0, 1/2).
  Complex cn01() {
    const double s = 0.70710678118654752440;  // 1/sqrt(2)
    const double re = gaussian() * s;
    const double im = gaussian() * s;
    return {re, im};
  }

  // Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    const std::size_t k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace sphdec
