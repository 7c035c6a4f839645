#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "harnack/errors.hpp"
#include "harnack/kernels.hpp"
#include "harnack/verify.hpp"
#include "support.hpp"

using namespace harnack;
using harnack::testing::Rng;
using harnack::testing::rel_diff;

TEST_SUITE("verify") {
  TEST_CASE("random pairs are reproducible and index-addressable") {
    SweepConfig cfg;
    cfg.seed = 42;
    cfg.n_pairs = 50;
    const auto a = verify::random_pairs(cfg);
    const auto b = verify::random_pairs(cfg);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].p1.x == b[i].p1.x);
      CHECK(a[i].p2.t == b[i].p2.t);
      CHECK(a[i].p1.t >= 0.1);
      CHECK(a[i].p1.t < 5.0);
      CHECK(std::abs(a[i].p2.x) <= 5.0);
    }
    cfg.n_pairs = 10;
    const auto c = verify::random_pairs(cfg);
    CHECK(c[9].p2.x == a[9].p2.x);
    cfg.seed = 43;
    CHECK(verify::random_pairs(cfg)[0].p1.x != a[0].p1.x);
  }

  TEST_CASE("sweep configuration errors") {
    SweepConfig cfg;
    cfg.x_range = {1, -1};
    CHECK_THROWS_AS(verify::random_pairs(cfg), ContractError);
    cfg = {};
    cfg.t_range = {0, 1};
    CHECK_THROWS_AS(verify::random_pairs(cfg), ContractError);
  }

  TEST_CASE("brute force reproduces the worked extrema") {
    const PointPair p{{0, 1}, {1, 2}};
    const auto e = verify::brute_force_extrema(p, 0.0);
    CHECK(std::abs(e.m_low - 0.381966011250105) < 1e-12);
    CHECK(std::abs(e.m_high - 2.618033988749895) < 1e-12);
    CHECK(std::abs(e.arg_low.y - (2 - std::sqrt(5.0))) < 1e-6);
    const auto h = verify::brute_force_extrema(p, 0.5);
    CHECK(std::abs(h.m_low - 0.225148226554414) < 1e-12);
    CHECK(std::abs(h.m_high - 4.441518440112253) < 1e-12);
    CHECK_THROWS_AS(verify::brute_force_extrema(p, 0.0, 1000), ContractError);
  }

  TEST_CASE("brute force marks limits at infinity") {
    const auto e = verify::brute_force_extrema(PointPair{{1, 1}, {1, 2}}, 0.0);
    CHECK(e.m_low == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.arg_low.attained());
    CHECK(e.m_high == doctest::Approx(2.0));
    CHECK(e.arg_high.site == ExtremumSite::AtInfinity);
    const auto same = verify::brute_force_extrema(PointPair{{1, 1}, {1, 1}}, 0.0);
    CHECK(same.m_low == doctest::Approx(1.0));
    CHECK(same.m_high == doctest::Approx(1.0));
  }

  TEST_CASE("closed forms agree with brute force on random pairs") {
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
      const PointPair p = rng.pair();
      const double tau = rng.uniform(0, 0.9) * std::min(p.p1.t, p.p2.t);
      const auto cf = ratio::ratio_extrema(p, tau);
      const auto bf = verify::brute_force_extrema(p, tau, 2048);
      CHECK(rel_diff(cf.m_low, bf.m_low) < 1e-8);
      CHECK(rel_diff(cf.m_high, bf.m_high) < 1e-8);
    }
  }

  TEST_CASE("mixture compliance and report bookkeeping") {
    SweepConfig cfg;
    cfg.seed = 5;
    cfg.n_pairs = 300;
    const auto pairs = verify::random_pairs(cfg);
    const KernelMixture m(KernelKind::Cauchy, {{1, 0.5, 0}, {0.2, -3, 0.1}, {4, 2, 1}});
    const auto rep = verify::harnack_compliance(m, pairs, 1e-10, 3);
    CHECK(rep.compliant());
    CHECK(rep.n_checked == 300);
    CHECK(rep.min_lower_margin >= 0.0);
    REQUIRE(rep.worst_case.has_value());
    const auto serial = verify::harnack_compliance(m, pairs, 1e-10, 1);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.rows[i].ratio == serial.rows[i].ratio);
    const auto heat = verify::harnack_compliance(KernelMixture(KernelKind::Gaussian, {{1, 0, 0}}), pairs, 1e-10);
    CHECK_FALSE(heat.compliant());
    REQUIRE(heat.worst_case.has_value());
    CHECK(heat.rows[heat.violations.front()].status == PairStatus::Violation);
  }

  TEST_CASE("translated kernel sits on the bracket") {
    const PointPair p{{0, 1}, {1, 2}};
    const KernelMixture low(KernelKind::Cauchy, {{1, 2 - std::sqrt(5.0), 0}});
    const std::vector<PointPair> one{p};
    const auto rep = verify::harnack_compliance(low, one, 1e-10);
    CHECK(rep.compliant());
    CHECK(std::abs(rep.rows[0].lower_margin) < 1e-12);
  }

  TEST_CASE("upper-attaining kernel and the printed prefactor") {
    const KernelMixture up(KernelKind::Cauchy, {{1, 2 + std::sqrt(5.0), 0}});
    const std::vector<PointPair> one{PointPair{{0, 1}, {1, 2}}};
    const auto rep = verify::harnack_compliance(up, one, 1e-10);
    CHECK(rep.compliant());
    CHECK(std::abs(*rep.rows[0].upper_margin) < 1e-12);
    const auto ce = verify::printed_prefactor_counterexample();
    CHECK(ce.printed_upper_violated);
    CHECK(ce.corrected_compliant);
    CHECK(std::abs(ce.realized_upper - 2.618033988749895) < 1e-12);
    CHECK(std::abs(ce.printed_upper - 0.654508497187474) < 1e-12);
    CHECK(std::abs(ce.printed_lower - 0.095491502812526) < 1e-12);
    CHECK(std::abs(ce.realized_lower - ce.corrected_lower) < 1e-12);
  }

  TEST_CASE("Gaussian compliance against the classical bound") {
    SweepConfig cfg;
    cfg.seed = 6;
    cfg.n_pairs = 200;
    auto pairs = verify::random_pairs(cfg);
    pairs.push_back(PointPair{{0, 1}, {2, 1}});
    const KernelMixture g(KernelKind::Gaussian, {{1, 0, 0}, {3, 1.5, 0.2}});
    const auto rep = verify::hadamard_pini_compliance(g, pairs, 1e-10, 2);
    CHECK(rep.compliant());
    CHECK(rep.rows.back().status == PairStatus::NotApplicable);
    for (const auto& r : rep.rows) CHECK(r.pair.p1.t <= r.pair.p2.t);
  }

  TEST_CASE("sharpness residuals") {
    const auto w = verify::sharpness_report(PointPair{{0, 1}, {1, 2}});
    CHECK(w.low_residual < 1e-12);
    CHECK(w.high_residual < 1e-12);
    const auto d = verify::sharpness_report(PointPair{{0, 1}, {0, 2}});
    CHECK(d.low_residual == 0.0);
    CHECK_FALSE(d.low_limit_only);
    CHECK(d.high_limit_only);
    const auto r = verify::sharpness_report(PointPair{{0, 2}, {1, 1}});
    CHECK(r.low_residual <= 1e-10);
    CHECK(r.high_residual <= 1e-10);
    CHECK_THROWS_AS(verify::sharpness_report(PointPair{{0, 1}, {0, 1}}), DegenerateInputError);
  }

  TEST_CASE("thread count from the environment") {
    setenv("HARNACK_THREADS", "3", 1);
    CHECK(verify::sweep_threads_from_env() == 3);
    setenv("HARNACK_THREADS", "zero", 1);
    CHECK_THROWS_AS(verify::sweep_threads_from_env(), ContractError);
    setenv("HARNACK_THREADS", "0", 1);
    CHECK_THROWS_AS(verify::sweep_threads_from_env(), ContractError);
    unsetenv("HARNACK_THREADS");
    CHECK(verify::sweep_threads_from_env() >= 1);
  }
}
