#include <complex>

#include "doctest.h"
#include "sphdec/op_counts.hpp"
#include "sphdec/rng.hpp"

using namespace sphdec;

TEST_CASE("counted_cmul value and accounting") {
  Rng rng(61, 0);
  OpCounts n;
  for (int rep = 0; rep < 1000; ++rep) {
    const Complex a = rng.cn01(), b = rng.cn01();
    const Complex got = counted_cmul(a, b, n);
    const std::complex<double> want =
        std::complex<double>(a.re, a.im) * std::complex<double>(b.re, b.im);
    CHECK(got.re == doctest::Approx(want.real()).epsilon(1e-12));
    CHECK(got.im == doctest::Approx(want.imag()).epsilon(1e-12));
  }
  CHECK(n.real_mults == 3000);
  CHECK(n.real_adds == 7000);
  CHECK(n.real_divs == 0);

  reset(n);
  const Complex unit = counted_cmul({1.0, 0.0}, {2.5, -3.5}, n);
  CHECK(unit.re == doctest::Approx(2.5));
  CHECK(unit.im == doctest::Approx(-3.5));
  CHECK(n.real_mults == 3);  // cost is value-independent
  CHECK(n.real_adds == 7);
}

TEST_CASE("counted_cdiv value, round trip and accounting") {
  Rng rng(67, 0);
  OpCounts n;
  for (int rep = 0; rep < 1000; ++rep) {
    const Complex a = rng.cn01(), b = rng.cn01();
    const Complex q = counted_cdiv(a, b, n);
    const std::complex<double> want =
        std::complex<double>(a.re, a.im) / std::complex<double>(b.re, b.im);
    CHECK(q.re == doctest::Approx(want.real()).epsilon(1e-12));
    CHECK(q.im == doctest::Approx(want.imag()).epsilon(1e-12));
    const Complex back = counted_cmul(q, b, n);
    CHECK(back.re == doctest::Approx(a.re).epsilon(1e-10));
    CHECK(back.im == doctest::Approx(a.im).epsilon(1e-10));
  }
  CHECK(n.real_divs == 2000);
  CHECK(n.real_mults == 5000 + 3000);
  CHECK(n.real_adds == 9000 + 7000);
  CHECK_THROWS_AS(counted_cdiv({1.0, 0.0}, {0.0, 0.0}, n), DivideByZero);
  CHECK_THROWS_AS(counted_rdiv(1.0, 0.0, n), DivideByZero);
}

TEST_CASE("scalar conventions") {
  OpCounts n;
  CHECK(counted_abs2({3.0, 4.0}, n) == doctest::Approx(25.0));
  CHECK(n.real_mults == 2);
  CHECK(n.real_adds == 1);
  CHECK(counted_rmul(3.0, 4.0, n) == 12.0);
  CHECK(counted_rdiv(8.0, 2.0, n) == 4.0);
  CHECK(counted_radd(1.5, 2.5, n) == 4.0);
  CHECK(counted_rsub(1.5, 2.5, n) == -1.0);
  CHECK(n.real_mults == 3);
  CHECK(n.real_divs == 1);
  CHECK(n.real_adds == 3);
  const Complex s = counted_cscale(2.0, {1.0, -3.0}, n);
  CHECK(s == Complex{2.0, -6.0});
  CHECK(n.real_mults == 5);
}

TEST_CASE("merge and reset") {
  Rng rng(71, 0);
  const auto random_counts = [&rng] {
    OpCounts c;
    c.real_mults = rng.index(100);
    c.real_divs = rng.index(100);
    c.real_adds = rng.index(100);
    c.nodes_visited = rng.index(100);
    c.queue_peak = rng.index(100);
    c.leaves_found = rng.index(100);
    return c;
  };
  const auto equal = [](const OpCounts& a, const OpCounts& b) {
    return a.real_mults == b.real_mults && a.real_divs == b.real_divs &&
           a.real_adds == b.real_adds && a.nodes_visited == b.nodes_visited &&
           a.queue_peak == b.queue_peak && a.leaves_found == b.leaves_found;
  };

  for (int rep = 0; rep < 50; ++rep) {
    const OpCounts a = random_counts(), b = random_counts(), c = random_counts();
    CHECK(equal(merge(a, OpCounts{}), a));
    CHECK(equal(merge(a, b), merge(b, a)));
    CHECK(equal(merge(merge(a, b), c), merge(a, merge(b, c))));
    CHECK(merge(a, b).queue_peak == std::max(a.queue_peak, b.queue_peak));
    CHECK(merge(a, b).real_mults == a.real_mults + b.real_mults);
  }

  OpCounts n = random_counts();
  reset(n);
  CHECK(equal(n, OpCounts{}));
}

TEST_CASE("audit scope flags only uncounted complex arithmetic") {
  audit::reset_violations();
  const Complex a{1.0, 2.0}, b{3.0, -1.0};

  // Outside any scope nothing is recorded.
  (void)(a * b);
  (void)(a + b);
  CHECK(audit::violations() == 0);

  {
    audit::Scope scope;
    OpCounts n;
    (void)counted_cmul(a, b, n);
    (void)counted_cdiv(a, b, n);
    (void)counted_cadd(a, b, n);
    (void)counted_abs2(a, n);
    CHECK(audit::violations() == 0);  // counted paths are clean
    (void)(a * b);
    CHECK(audit::violations() == 1);
    (void)(a / b);
    (void)(a - b);
    CHECK(audit::violations() == 3);
  }
  (void)(a * b);  // scope closed again
  CHECK(audit::violations() == 3);
  audit::reset_violations();
}
