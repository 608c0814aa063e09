#include "sphdec/channel.hpp"

#include <cmath>

#include "sphdec/errors.hpp"

namespace sphdec {

ComplexMatrix sample_fading(int r, int t, Rng& rng) {
  ComplexMatrix m(r, t);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < t; ++j) m(i, j) = rng.cn01();
  return m;
}

double noise_variance_for_snr(const ChannelConfig& cfg, SnrConvention convention) {
  if (cfg.t < 1 || cfg.t > cfg.r)
    throw DimensionError("noise_variance_for_snr: need 1 <= t <= r");
  if (!std::isfinite(cfg.snr_db))
    throw DimensionError("noise_variance_for_snr: snr_db must be finite");
  const double snr = std::pow(10.0, cfg.snr_db / 10.0);
  const double signal_power = convention == SnrConvention::PerReceiveAntenna
                                  ? cfg.t * cfg.constellation.avg_energy
                                  : cfg.constellation.avg_energy;
  return signal_power / snr;
}

ComplexVector transmit(const ChannelInstance& inst, const ComplexVector& a, Rng& rng) {
  if (static_cast<int>(a.size()) != inst.m.cols())
    throw DimensionError("transmit: symbol vector length != transmit antennas");
  ComplexVector x = matvec(inst.m, a);
  const double s = std::sqrt(inst.sigma2 / 2.0);
  for (Complex& xk : x) {
    xk.re += s * rng.gaussian();
    xk.im += s * rng.gaussian();
  }
  return x;
}

ComplexVector random_symbols(const Constellation& c, int t, Rng& rng) {
  ComplexVector a(t);
  for (Complex& ai : a) ai = c.points[rng.index(c.points.size())];
  return a;
}

namespace {

// Regularized lower incomplete gamma P(r, x) for integer shape r:
// P(r, x) = 1 - exp(-x) * sum_{k=0}^{r-1} x^k / k!.
double gamma_p_integer(int r, double x) {
  if (x <= 0.0) return 0.0;
  double term = 1.0;  // x^0 / 0!
  double sum = 1.0;
  for (int k = 1; k < r; ++k) {
    term *= x / static_cast<double>(k);
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

}  // namespace

double initial_radius_sq(double sigma2, int r, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DimensionError("initial_radius_sq: p must be in (0,1)");
  if (sigma2 == 0.0) return 0.0;

  // Bracket the quantile, then bisect P(r, x) = p.
  double hi = 1.0;
  while (gamma_p_integer(r, hi) < p) hi *= 2.0;
  double lo = 0.0;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_p_integer(r, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return sigma2 * 0.5 * (lo + hi);
}

}  // namespace sphdec
