#pragma once

#include <cstdint>

#include "sphdec/complex.hpp"
#include "sphdec/errors.hpp"

namespace sphdec {

// Arithmetic cost model for the decoder. A complex multiplication is
// booked as 3 real multiplications and 7 real additions, a complex
// division as 5 real multiplications, 2 real divisions and 9 real
// additions. Scalar conventions: a real multiply is 1 mult, a real
// divide 1 div, a real add/subtract 1 add, a complex add/subtract 2
// adds, a real-by-complex scale 2 mults, and a squared modulus 2 mults
// + 1 add. Comparisons, negations, conjugations, copies and square
// roots are free. The headline complexity figure is mults + divs;
// additions are tracked for completeness.
struct OpCounts {
  std::uint64_t real_mults = 0;
  std::uint64_t real_divs = 0;
  std::uint64_t real_adds = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t queue_peak = 0;
  std::uint64_t leaves_found = 0;

  std::uint64_t mults_plus_divs() const { return real_mults + real_divs; }
};

// Componentwise sum; queue_peak takes the max of the two peaks.
OpCounts merge(const OpCounts& a, const OpCounts& b);

void reset(OpCounts& counts);

// Product via the 3-multiplication scheme; books 3 mults, 7 adds.
inline Complex counted_cmul(Complex a, Complex b, OpCounts& counts) {
  counts.real_mults += 3;
  counts.real_adds += 7;
  const double t1 = a.re * b.re;
  const double t2 = a.im * b.im;
  const double t3 = (a.re + a.im) * (b.re + b.im);
  return {t1 - t2, t3 - t1 - t2};
}

// Quotient via conjugate multiply and two real divisions; books
// 5 mults, 2 divs, 9 adds. Throws DivideByZero when b == 0.
inline Complex counted_cdiv(Complex a, Complex b, OpCounts& counts) {
  const double d = b.re * b.re + b.im * b.im;
  if (d == 0.0) throw DivideByZero("counted_cdiv: zero divisor");
  counts.real_mults += 5;
  counts.real_divs += 2;
  counts.real_adds += 9;
  const double t1 = a.re * b.re;
  const double t2 = -(a.im * b.im);
  const double t3 = (a.re + a.im) * (b.re - b.im);
  return {(t1 - t2) / d, (t3 - t1 - t2) / d};
}

inline Complex counted_cadd(Complex a, Complex b, OpCounts& counts) {
  counts.real_adds += 2;
  return {a.re + b.re, a.im + b.im};
}

inline Complex counted_csub(Complex a, Complex b, OpCounts& counts) {
  counts.real_adds += 2;
  return {a.re - b.re, a.im - b.im};
}

inline Complex counted_cscale(double s, Complex z, OpCounts& counts) {
  counts.real_mults += 2;
  return {s * z.re, s * z.im};
}

inline double counted_abs2(Complex z, OpCounts& counts) {
  counts.real_mults += 2;
  counts.real_adds += 1;
  return z.re * z.re + z.im * z.im;
}

inline double counted_rmul(double a, double b, OpCounts& counts) {
  counts.real_mults += 1;
  return a * b;
}

inline double counted_rdiv(double a, double b, OpCounts& counts) {
  if (b == 0.0) throw DivideByZero("counted_rdiv: zero divisor");
  counts.real_divs += 1;
  return a / b;
}

inline double counted_radd(double a, double b, OpCounts& counts) {
  counts.real_adds += 1;
  return a + b;
}

inline double counted_rsub(double a, double b, OpCounts& counts) {
  counts.real_adds += 1;
  return a - b;
}

namespace audit {

// RAII audit scope, active per thread. While one is alive, uncounted
// Complex arithmetic on that thread is recorded in a process-wide
// violation counter; counted_* functions never trip it. Scopes nest.
class Scope {
 public:
  Scope();
  ~Scope();
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;
};

std::uint64_t violations() noexcept;
void reset_violations() noexcept;

}  // namespace audit

}  // namespace sphdec
