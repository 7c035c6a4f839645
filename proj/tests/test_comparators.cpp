#include <doctest.h>

#include <cmath>

#include "harnack/comparators.hpp"
#include "harnack/errors.hpp"
#include "harnack/kernels.hpp"
#include "support.hpp"

using namespace harnack;
using namespace harnack::comparators;
using harnack::testing::Rng;

namespace {
const PointPair kWorked{{0.0, 1.0}, {1.0, 2.0}};
}

TEST_SUITE("comparators") {
  TEST_CASE("Hadamard-Pini values") {
    CHECK(std::abs(hadamard_pini_lower(kWorked) - 0.550695314903184) < 1e-14);
    CHECK(std::abs(hadamard_pini_lower(PointPair{{0, 1}, {0, 2}}) - 0.707106781186548) < 1e-14);
    CHECK(std::abs(hadamard_pini_lower(PointPair{{-1.3, 0.7}, {2.1, 3.4}}) - 0.15557994586637076) < 1e-14);
    CHECK_THROWS_AS(hadamard_pini_lower(kWorked.swapped()), OrderingError);
    CHECK_THROWS_AS(hadamard_pini_lower(PointPair{{0, 1}, {1, 1}}), OrderingError);
  }

  TEST_CASE("Hadamard-Pini equality is attained by the Gaussian at the source witness") {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
      const PointPair p = rng.ordered_pair();
      if (p.p1.t == p.p2.t) continue;
      const double xs = hp_equality_source(p);
      const double e = (p.p1.x - xs) * (p.p1.x - xs) / (4 * p.p1.t) - (p.p2.x - xs) * (p.p2.x - xs) / (4 * p.p2.t);
      const double realized = std::sqrt(p.p1.t / p.p2.t) * std::exp(e);
      CHECK(std::abs(realized - hadamard_pini_lower(p)) <= 1e-12 * (1 + realized));
    }
    CHECK_THROWS_AS(hp_equality_source(PointPair{{0, 1}, {1, 1}}), DegenerateInputError);
  }

  TEST_CASE("simple fractional lower bound") {
    CHECK(simple_fractional_lower(kWorked) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(simple_fractional_lower(PointPair{{-1.3, 0.7}, {2.1, 3.4}}) - 0.079622405991574349) < 1e-15);
    CHECK_THROWS_AS(simple_fractional_lower(kWorked.swapped()), OrderingError);
  }

  TEST_CASE("Weber-Zacher shape with an explicit constant") {
    CHECK(std::abs(wz_lower(kWorked, 1.0) - 0.0956964965104109) < 1e-15);
    CHECK(std::abs(wz_lower(kWorked, 0.5) - 0.260130047511444) < 1e-14);
    CHECK_THROWS_AS(wz_lower(kWorked, 0.0), DomainError);
    CHECK_THROWS_AS(wz_lower(kWorked.swapped(), 1.0), OrderingError);
  }

  TEST_CASE("kernel-dominated bracket is reported verbatim") {
    const auto r = bsv_bracket(kWorked, 1.0);
    CHECK(r.name == "bsv");
    CHECK(r.comparator_only);
    CHECK(std::abs(*r.lower - 6.0) < 1e-14);
    CHECK(std::abs(*r.upper - 3.656854249492380) < 1e-14);
    REQUIRE(r.constants_used.size() == 1);
    CHECK(r.constants_used[0].second == 1.0);
    CHECK_THROWS_AS(bsv_bracket(kWorked, -1.0), DomainError);
  }

  TEST_CASE("Gaussian ratio margin vanishes at the equality point and is nonnegative") {
    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
      double s1 = rng.uniform(0.1, 5), s2 = rng.uniform(0.1, 5);
      if (s1 > s2) std::swap(s1, s2);
      if (s2 - s1 < 1e-3) continue;
      const double x1 = rng.uniform(-5, 5), x2 = rng.uniform(-5, 5);
      const double ys = (x1 * s2 - x2 * s1) / (s2 - s1);
      const double rhs = std::sqrt(4 * 3.141592653589793 * (s2 - s1)) * kernels::gaussian_kernel(x2 - x1, s2 - s1);
      CHECK(std::abs(gaussian_ratio_lower(s1, s2, x1, x2, ys)) <= 1e-12 * (1 + rhs));
      for (int j = 0; j < 50; ++j) {
        const double y = rng.uniform(-30, 30);
        CHECK(gaussian_ratio_lower(s1, s2, x1, x2, y) >= -1e-12 * (1 + rhs));
      }
    }
  }

  TEST_CASE("Cauchy ratio margin") {
    CHECK(std::abs(cauchy_ratio_lower_margin(1, 2, 0, 1, 0) - 0.3) < 1e-15);
    // smallest margin, at the ratio minimiser 2 - sqrt(5)
    CHECK(std::abs(cauchy_ratio_lower_margin(1, 2, 0, 1, 2 - std::sqrt(5.0)) - 0.263932022500210) < 1e-14);
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
      double s1 = rng.uniform(0.1, 5), s2 = rng.uniform(0.1, 5);
      if (s1 > s2) std::swap(s1, s2);
      if (s1 == s2) continue;
      const double x1 = rng.uniform(-5, 5), x2 = rng.uniform(-5, 5);
      for (int j = 0; j < 50; ++j) {
        CHECK(cauchy_ratio_lower_margin(s1, s2, x1, x2, rng.uniform(-50, 50)) >= -1e-12);
      }
    }
    CHECK_THROWS_AS(cauchy_ratio_lower_margin(2, 1, 0, 1, 0), DomainError);
  }
}
