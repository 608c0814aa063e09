#pragma once

#include <vector>

#include "sphdec/complex.hpp"
#include "sphdec/errors.hpp"

namespace sphdec {

// Square QAM signal set. Axis levels are the odd integers
// {±1, ±3, ..., ±(q-1)} for q points per axis; the constellation is their
// Cartesian square. No energy normalization is applied, so symbol
// coordinates stay exact integers; SNR accounting uses avg_energy.
struct Constellation {
  std::vector<double> axis_levels;  // strictly increasing, symmetric, spacing 2
  std::vector<Complex> points;      // lexicographic by (re, im)
  double avg_energy = 0.0;          // mean |s|^2 = 2 * mean(axis_levels^2)

  int points_per_axis() const { return static_cast<int>(axis_levels.size()); }
  int size() const { return static_cast<int>(points.size()); }
};

// points_per_axis in {2, 4, 8, 16} (4-, 16-, 64-, 256-QAM).
Constellation make_qam(int points_per_axis);

// Nearest constellation point to z; ties broken by smaller Re, then
// smaller Im.
Complex slice_nearest(const Constellation& c, Complex z);

// All levels ordered by nondecreasing |level - center_coord|; an exact
// distance tie yields the smaller level first.
std::vector<double> axis_zigzag(const std::vector<double>& levels, double center_coord);

// Single-consumer cursor over the constellation points s with
// |s - center|^2 < budget (strict), ordered by nondecreasing
// |Re(s - center)| and, within one real level, nondecreasing
// |Im(s - center)|. The outer real-axis walk stops as soon as the real
// deviation alone reaches the budget.
class CandidateStream {
 public:
  CandidateStream(const Constellation& c, Complex center, double budget);

  // Returns false when the circle is exhausted.
  bool next(Complex& out);

 private:
  std::vector<double> re_order_;
  std::vector<double> im_order_;
  Complex center_;
  double budget_;
  std::size_t re_idx_ = 0;
  std::size_t im_idx_ = 0;
};

CandidateStream enumerate_candidates(const Constellation& c, Complex center, double budget);

}  // namespace sphdec
