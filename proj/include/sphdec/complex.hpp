#pragma once

#include <cmath>

namespace sphdec {

namespace audit {

// Audit scoping lives in op_counts.cpp. While a scope is active on the
// current thread, plain (uncounted) Complex arithmetic is recorded as a
// violation. Decoder code paths must route complex arithmetic through the
// counted_* functions, which never trip the audit.
bool active() noexcept;
void flag_violation() noexcept;

}  // namespace audit

// Complex signal amplitude. Deliberately not std::complex: multiplicative
// operators on this type are auditable, so instrumented code paths can be
// checked for uncounted arithmetic at runtime.
struct Complex {
  double re = 0.0;
  double im = 0.0;

  constexpr Complex() = default;
  constexpr Complex(double r, double i) : re(r), im(i) {}
  explicit constexpr Complex(double r) : re(r), im(0.0) {}
};

constexpr Complex conj(Complex z) { return {z.re, -z.im}; }

constexpr Complex operator-(Complex z) { return {-z.re, -z.im}; }

constexpr bool operator==(Complex a, Complex b) {
  return a.re == b.re && a.im == b.im;
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.re) && std::isfinite(z.im);
}

// Squared modulus on raw doubles; used by validation and test oracles.
inline double abs2(Complex z) { return z.re * z.re + z.im * z.im; }

inline double abs(Complex z) { return std::hypot(z.re, z.im); }

// Uncounted arithmetic. Fine for channel simulation, oracles and tests;
// flagged when it runs inside an audit scope.
inline Complex operator+(Complex a, Complex b) {
  if (audit::active()) audit::flag_violation();
  return {a.re + b.re, a.im + b.im};
}

inline Complex operator-(Complex a, Complex b) {
  if (audit::active()) audit::flag_violation();
  return {a.re - b.re, a.im - b.im};
}

inline Complex operator*(Complex a, Complex b) {
  if (audit::active()) audit::flag_violation();
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Complex operator*(double s, Complex z) {
  if (audit::active()) audit::flag_violation();
  return {s * z.re, s * z.im};
}

inline Complex operator/(Complex a, Complex b) {
  if (audit::active()) audit::flag_violation();
  const double d = abs2(b);
  const Complex n = {a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im};
  return {n.re / d, n.im / d};
}

inline Complex& operator+=(Complex& a, Complex b) { return a = a + b; }
inline Complex& operator-=(Complex& a, Complex b) { return a = a - b; }

}  // namespace sphdec
