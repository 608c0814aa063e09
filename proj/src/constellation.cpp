#include "sphdec/constellation.hpp"

#include <algorithm>
#include <cmath>

namespace sphdec {

Constellation make_qam(int points_per_axis) {
  if (points_per_axis != 2 && points_per_axis != 4 && points_per_axis != 8 &&
      points_per_axis != 16)
    throw UnsupportedSize("make_qam: points_per_axis must be one of 2, 4, 8, 16");

  Constellation c;
  c.axis_levels.reserve(points_per_axis);
  for (int k = 0; k < points_per_axis; ++k)
    c.axis_levels.push_back(static_cast<double>(2 * k - points_per_axis + 1));

  c.points.reserve(static_cast<std::size_t>(points_per_axis) * points_per_axis);
  double energy = 0.0;
  for (double re : c.axis_levels)
    for (double im : c.axis_levels) {
      c.points.push_back({re, im});
      energy += re * re + im * im;
    }
  c.avg_energy = energy / static_cast<double>(c.points.size());
  return c;
}

Complex slice_nearest(const Constellation& c, Complex z) {
  Complex best = c.points.front();
  double best_d = abs2({best.re - z.re, best.im - z.im});
  for (const Complex& s : c.points) {
    const double d = abs2({s.re - z.re, s.im - z.im});
    if (d < best_d ||
        (d == best_d && (s.re < best.re || (s.re == best.re && s.im < best.im)))) {
      best = s;
      best_d = d;
    }
  }
  return best;
}

std::vector<double> axis_zigzag(const std::vector<double>& levels, double center_coord) {
  std::vector<double> out(levels);
  std::stable_sort(out.begin(), out.end(), [center_coord](double a, double b) {
    const double da = std::fabs(a - center_coord);
    const double db = std::fabs(b - center_coord);
    if (da != db) return da < db;
    return a < b;  // exact tie: smaller level first
  });
  return out;
}

CandidateStream::CandidateStream(const Constellation& c, Complex center, double budget)
    : re_order_(axis_zigzag(c.axis_levels, center.re)),
      im_order_(axis_zigzag(c.axis_levels, center.im)),
      center_(center),
      budget_(budget) {}

bool CandidateStream::next(Complex& out) {
  while (re_idx_ < re_order_.size()) {
    const double re_dev = re_order_[re_idx_] - center_.re;
    const double re_dev_sq = re_dev * re_dev;
    if (re_dev_sq >= budget_) return false;  // later real levels only get farther
    if (im_idx_ >= im_order_.size()) {
      ++re_idx_;
      im_idx_ = 0;
      continue;
    }
    const double im_dev = im_order_[im_idx_] - center_.im;
    if (re_dev_sq + im_dev * im_dev >= budget_) {  // rest of this real level is outside
      ++re_idx_;
      im_idx_ = 0;
      continue;
    }
    out = {re_order_[re_idx_], im_order_[im_idx_]};
    ++im_idx_;
    return true;
  }
  return false;
}

CandidateStream enumerate_candidates(const Constellation& c, Complex center, double budget) {
  return CandidateStream(c, center, budget);
}

}  // namespace sphdec
