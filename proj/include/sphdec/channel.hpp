#pragma once

#include <cstdint>

#include "sphdec/constellation.hpp"
#include "sphdec/matrix.hpp"
#include "sphdec/rng.hpp"

namespace sphdec {

// How the SNR figure maps to the complex noise variance sigma^2 per
// receive antenna, given unit-variance fading and symbol energy Es:
//   PerReceiveAntenna: SNR = t * Es / sigma^2 (received signal power over
//                      noise power at one receive antenna; the default)
//   PerTransmitSymbol: SNR = Es / sigma^2
enum class SnrConvention { PerReceiveAntenna, PerTransmitSymbol };

struct ChannelConfig {
  int t = 1;  // transmit antennas
  int r = 1;  // receive antennas, t <= r
  double snr_db = 0.0;
  Constellation constellation;
  std::uint64_t seed = 0;
};

struct ChannelInstance {
  ComplexMatrix m;      // r x t fading matrix
  double sigma2 = 1.0;  // E|nu_k|^2 per receive antenna
};

// r x t matrix of i.i.d. CN(0,1) fading coefficients.
ComplexMatrix sample_fading(int r, int t, Rng& rng);

double noise_variance_for_snr(const ChannelConfig& cfg,
                              SnrConvention convention = SnrConvention::PerReceiveAntenna);

// x = M a + nu with nu i.i.d. CN(0, sigma2) per component.
ComplexVector transmit(const ChannelInstance& inst, const ComplexVector& a, Rng& rng);

// Uniform i.i.d. symbol vector of length t.
ComplexVector random_symbols(const Constellation& c, int t, Rng& rng);

// Squared sphere radius C with Pr{||nu||^2 < C} = p for r receive
// antennas: ||nu||^2 ~ Gamma(shape r, scale sigma2), inverted by
// bisection on the regularized lower incomplete gamma function to
// relative tolerance 1e-10.
double initial_radius_sq(double sigma2, int r, double p = 0.99);

}  // namespace sphdec
