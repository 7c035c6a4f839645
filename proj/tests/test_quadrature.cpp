#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harnack/quadrature.hpp"

using namespace harnack::quadrature;

TEST_SUITE("quadrature") {
  TEST_CASE("polynomials up to degree 22 are exact on a single panel") {
    auto p = [](double x) { return std::pow(x, 22) - 3 * std::pow(x, 7) + 1; };
    const auto e = kronrod_panel(p, -1.0, 2.0);
    const double exact = (std::pow(2.0, 23) + 1) / 23 - 3 * (std::pow(2.0, 8) - 1) / 8 + 3;
    CHECK(e.kronrod == doctest::Approx(exact).epsilon(1e-14));
  }

  TEST_CASE("smooth integrand converges to tolerance") {
    const auto e = integrate([](double x) { return std::exp(-x * x); }, -3.0, 3.0, {1e-13, 4, 1000});
    CHECK(e.converged);
    CHECK(std::abs(e.value - std::sqrt(std::numbers::pi) * std::erf(3.0)) < 1e-13);
  }

  TEST_CASE("endpoint singularity is resolved by bisection") {
    const auto e = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-9, 1, 20000});
    CHECK(e.converged);
    CHECK(std::abs(e.value - 2.0) < 1e-8);
  }

  TEST_CASE("panel budget exhaustion is reported, not thrown") {
    const auto e = integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, {1e-14, 1, 4});
    CHECK_FALSE(e.converged);
    CHECK(std::isfinite(e.value));
  }

  TEST_CASE("empty interval") {
    const auto e = integrate([](double) { return 1.0; }, 2.0, 2.0);
    CHECK(e.value == 0.0);
    CHECK(e.converged);
  }
}
