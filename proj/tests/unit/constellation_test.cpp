#include "doctest.h"
#include "sphdec/constellation.hpp"
#include "sphdec/rng.hpp"
#include "test_support.hpp"

using namespace sphdec;
using test_support::drain;
using test_support::sorted_circle;

TEST_CASE("make_qam basics") {
  SUBCASE("4-QAM") {
    const Constellation c = make_qam(2);
    CHECK(c.axis_levels == std::vector<double>{-1.0, 1.0});
    CHECK(c.size() == 4);
    CHECK(c.avg_energy == doctest::Approx(2.0));
  }
  SUBCASE("16-QAM") {
    const Constellation c = make_qam(4);
    CHECK(c.size() == 16);
    CHECK(c.avg_energy == doctest::Approx(10.0));
  }
  SUBCASE("64-QAM") {
    const Constellation c = make_qam(8);
    CHECK(c.size() == 64);
    CHECK(c.avg_energy == doctest::Approx(42.0));
    CHECK(c.axis_levels.front() == -7.0);
    CHECK(c.axis_levels.back() == 7.0);
  }
  SUBCASE("unsupported sizes") {
    CHECK_THROWS_AS(make_qam(3), UnsupportedSize);
    CHECK_THROWS_AS(make_qam(0), UnsupportedSize);
    CHECK_THROWS_AS(make_qam(32), UnsupportedSize);
  }
}

TEST_CASE("slice_nearest") {
  const Constellation qam4 = make_qam(2);
  CHECK(slice_nearest(qam4, {1.0, 1.0}) == Complex{1.0, 1.0});
  CHECK(slice_nearest(qam4, {0.0, 0.0}) == Complex{-1.0, -1.0});  // symmetric tie
  const Constellation qam16 = make_qam(4);
  CHECK(slice_nearest(qam16, {2.4, -0.3}) == Complex{3.0, -1.0});
}

TEST_CASE("axis_zigzag ordering") {
  const std::vector<double> levels = {-3.0, -1.0, 1.0, 3.0};
  CHECK(axis_zigzag(levels, 0.2) == std::vector<double>{1.0, -1.0, 3.0, -3.0});
  CHECK(axis_zigzag({-1.0, 1.0}, 0.0) == std::vector<double>{-1.0, 1.0});
  CHECK(axis_zigzag(levels, 10.0) == std::vector<double>{3.0, 1.0, -1.0, -3.0});
}

TEST_CASE("enumerate_candidates order and termination") {
  const Constellation qam4 = make_qam(2);
  SUBCASE("zig-zag order, real axis first") {
    const auto pts = drain(enumerate_candidates(qam4, {0.9, 0.9}, 100.0));
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == Complex{1.0, 1.0});
    CHECK(pts[1] == Complex{1.0, -1.0});
    CHECK(pts[2] == Complex{-1.0, 1.0});
    CHECK(pts[3] == Complex{-1.0, -1.0});
  }
  SUBCASE("nonpositive budget is empty") {
    CHECK(drain(enumerate_candidates(qam4, {0.3, -0.4}, 0.0)).empty());
    CHECK(drain(enumerate_candidates(qam4, {0.3, -0.4}, -2.0)).empty());
  }
  SUBCASE("tight budget keeps only the center point") {
    const auto pts = drain(enumerate_candidates(qam4, {1.0, 1.0}, 0.5));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == Complex{1.0, 1.0});
  }
}

TEST_CASE("enumeration matches the full-sort oracle") {
  Rng rng(101, 0);
  const Constellation qam16 = make_qam(4);
  const Constellation qam64 = make_qam(8);
  for (int rep = 0; rep < 1000; ++rep) {
    const Constellation& c = rep % 2 == 0 ? qam16 : qam64;
    Complex center;
    if (rep % 5 == 0) {
      // Exact-tie-rich centers: integers land midway between levels.
      center = {static_cast<double>(static_cast<int>(rng.index(9)) - 4),
                static_cast<double>(static_cast<int>(rng.index(9)) - 4)};
    } else {
      center = {(rng.uniform() - 0.5) * 10.0, (rng.uniform() - 0.5) * 10.0};
    }
    const double budget = rng.uniform() * 60.0;
    const auto got = drain(enumerate_candidates(c, center, budget));
    const auto want = sorted_circle(c, center, budget);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  }
}

TEST_CASE("enumeration with unbounded budget covers the whole set once") {
  Rng rng(103, 0);
  const Constellation c = make_qam(4);
  for (int rep = 0; rep < 50; ++rep) {
    const Complex center{(rng.uniform() - 0.5) * 8.0, (rng.uniform() - 0.5) * 8.0};
    auto pts = drain(enumerate_candidates(c, center, 1e300));
    CHECK(pts.size() == c.points.size());
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
      return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i] == c.points[i]);
  }
}
