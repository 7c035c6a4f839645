#include "harnack/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "harnack/comparators.hpp"
#include "harnack/errors.hpp"
#include "harnack/kernels.hpp"

namespace harnack {

void SweepConfig::validate() const {
  auto finite = [](const Interval& r) { return std::isfinite(r.lo) && std::isfinite(r.hi); };
  if (!finite(x_range) || x_range.lo > x_range.hi) throw ContractError("x range is empty or not finite");
  if (!finite(t_range) || t_range.lo > t_range.hi) throw ContractError("t range is empty or not finite");
  if (!(t_range.lo > 0.0)) throw ContractError("t range must lie in t > 0");
  if (!(slack >= 0.0) || !std::isfinite(slack)) throw ContractError("slack must be finite and non-negative");
}

std::string_view to_string(PairStatus status) {
  switch (status) {
    case PairStatus::Ok: return "ok";
    case PairStatus::Violation: return "violation";
    case PairStatus::NotApplicable: return "not_applicable";
    case PairStatus::Error: return "error";
  }
  return "unknown";
}

namespace verify {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit(std::uint64_t& state) { return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53; }

double draw(std::uint64_t& state, const Interval& r) { return r.lo + (r.hi - r.lo) * unit(state); }

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Golden {
  double theta;
  double value;
};

// Minimises sign * ratio over theta in [a, b].
Golden golden_theta(const PointPair& pair, double tau, double c, double L, double a, double b, double sign) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto y_of = [&](double th) { return c + L * std::tan(th); };
  auto f = [&](double th) { return sign * ratio::kernel_ratio(pair, tau, y_of(th)); };
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 400; ++it) {
    const double ya = y_of(a), yb = y_of(b);
    const double ym = y_of(0.5 * (a + b));
    if (std::isfinite(ya) && std::isfinite(yb) && std::abs(yb - ya) <= 1e-12 * (1.0 + std::abs(ym))) break;
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))) break;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? Golden{x1, f1} : Golden{x2, f2};
}

// Kernel evaluated directly, independent of the closed-form machinery.
double direct_ratio(const PointPair& pair, double tau, double y) {
  return kernels::cauchy_kernel(pair.p2.x - y, pair.p2.t - tau) / kernels::cauchy_kernel(pair.p1.x - y, pair.p1.t - tau);
}

}  // namespace

PointPair random_pair(const SweepConfig& cfg, std::size_t index) {
  std::uint64_t key = cfg.seed;
  std::uint64_t state = splitmix64(key) ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(index) + 1));
  PointPair p;
  p.p1.x = draw(state, cfg.x_range);
  p.p1.t = draw(state, cfg.t_range);
  p.p2.x = draw(state, cfg.x_range);
  p.p2.t = draw(state, cfg.t_range);
  return p;
}

std::vector<PointPair> random_pairs(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<PointPair> out;
  out.reserve(cfg.n_pairs);
  for (std::size_t i = 0; i < cfg.n_pairs; ++i) out.push_back(random_pair(cfg, i));
  return out;
}

RatioExtrema brute_force_extrema(const PointPair& pair, double tau, std::size_t resolution) {
  if (resolution < 1024) throw ContractError("brute-force resolution must be at least 1024");
  const KernelRatioProblem prob(pair, tau);
  const double s1 = prob.sigma1(), s2 = prob.sigma2();
  const double c = 0.5 * (pair.p1.x + pair.p2.x);
  const double L = std::max(std::abs(prob.dx()), std::min(s1, s2));
  const double limit = s2 / s1;
  const double pi = std::numbers::pi;

  const std::size_t R = resolution;
  std::vector<double> theta(R), value(R);
  for (std::size_t i = 0; i < R; ++i) {
    theta[i] = -pi / 2 + (static_cast<double>(i) + 0.5) * pi / static_cast<double>(R);
    value[i] = direct_ratio(pair, tau, c + L * std::tan(theta[i]));
  }
  const auto imin = static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
  const auto imax = static_cast<std::size_t>(std::max_element(value.begin(), value.end()) - value.begin());

  auto refine = [&](std::size_t i, double sign) {
    const double a = i == 0 ? -pi / 2 : theta[i - 1];
    const double b = i + 1 == R ? pi / 2 : theta[i + 1];
    return golden_theta(pair, tau, c, L, a, b, sign);
  };

  // Refinement drifting to |tan(theta)| ~ 1/eps is the limit itself, up to rounding.
  auto receded = [](const Golden& g) { return std::abs(std::tan(g.theta)) > 1e8; };

  RatioExtrema out{};
  const Golden lo = refine(imin, 1.0);
  if (lo.value <= limit && !receded(lo)) {
    out.m_low = lo.value;
    out.arg_low = {ExtremumSite::Interior, c + L * std::tan(lo.theta)};
  } else {
    out.m_low = limit;
    out.arg_low = {ExtremumSite::AtInfinity, 0.0};
  }
  const Golden hi = refine(imax, -1.0);
  if (-hi.value >= limit && !receded(hi)) {
    out.m_high = -hi.value;
    out.arg_high = {ExtremumSite::Interior, c + L * std::tan(hi.theta)};
  } else {
    out.m_high = limit;
    out.arg_high = {ExtremumSite::AtInfinity, 0.0};
  }
  return out;
}

namespace {

struct Bounds {
  double lower;
  std::optional<double> upper;
};

using BoundFn = std::function<std::optional<Bounds>(const PointPair&)>;

void finalize(VerificationReport& rep) {
  rep.n_checked = 0;
  rep.min_lower_margin = std::numeric_limits<double>::infinity();
  rep.min_upper_margin = std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (r.status != PairStatus::Ok && r.status != PairStatus::Violation) continue;
    ++rep.n_checked;
    rep.min_lower_margin = std::min(rep.min_lower_margin, r.lower_margin);
    double m = r.lower_margin;
    if (r.upper_margin) {
      rep.min_upper_margin = std::min(rep.min_upper_margin, *r.upper_margin);
      m = std::min(m, *r.upper_margin);
    }
    if (r.status == PairStatus::Violation) rep.violations.push_back(i);
    if (m < worst) {
      worst = m;
      rep.worst_case = i;
    }
  }
}

VerificationReport run(const SolutionModel& model, std::span<const PointPair> pairs, double slack, unsigned threads,
                       std::string name, const BoundFn& bounds) {
  if (!(slack >= 0.0) || !std::isfinite(slack)) throw ContractError("slack must be finite and non-negative");
  VerificationReport rep;
  rep.bound = std::move(name);
  rep.slack = slack;
  rep.rows.resize(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    PairOutcome& row = rep.rows[i];
    row.index = i;
    row.pair = pairs[i];
    try {
      validate(row.pair);
      const auto b = bounds(row.pair);
      if (!b) {
        row.status = PairStatus::NotApplicable;
        row.message = "bound not applicable to this pair";
        return;
      }
      const NumericValue u1 = evaluate(model, row.pair.p1.x, row.pair.p1.t);
      const NumericValue u2 = evaluate(model, row.pair.p2.x, row.pair.p2.t);
      constexpr double tiny = 1e-280;
      if (u1.value >= tiny && u2.value >= tiny) {
        row.ratio = u2.value / u1.value;
        row.error_estimate = std::abs(row.ratio) * (u1.error / u1.value + u2.error / u2.value);
      } else {
        const NumericValue l1 = log_evaluate(model, row.pair.p1.x, row.pair.p1.t);
        const NumericValue l2 = log_evaluate(model, row.pair.p2.x, row.pair.p2.t);
        row.ratio = std::exp(l2.value - l1.value);
        const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(l1.value) + std::abs(l2.value));
        row.error_estimate = row.ratio * (l1.error + l2.error + rounding);
      }
      if (!(row.ratio >= 0.0) || !std::isfinite(row.ratio)) throw DomainError("ratio is not a finite positive number");
      row.lower = b->lower;
      row.upper = b->upper;
      row.lower_margin = row.ratio - row.lower;
      if (row.upper) row.upper_margin = *row.upper - row.ratio;
      const double threshold = -(slack + row.error_estimate);
      const bool bad = row.lower_margin < threshold || (row.upper_margin && *row.upper_margin < threshold);
      row.status = bad ? PairStatus::Violation : PairStatus::Ok;
    } catch (const std::exception& e) {
      row.status = PairStatus::Error;
      row.message = e.what();
    }
  });
  finalize(rep);
  return rep;
}

}  // namespace

VerificationReport harnack_compliance(const SolutionModel& model, std::span<const PointPair> pairs, double slack,
                                      unsigned threads) {
  return run(model, pairs, slack, threads, "sharp", [](const PointPair& p) -> std::optional<Bounds> {
    const SharpBracket b = ratio::sharp_bracket(p);
    return Bounds{b.lower, b.upper};
  });
}

VerificationReport hadamard_pini_compliance(const SolutionModel& model, std::span<const PointPair> pairs,
                                            double slack, unsigned threads) {
  std::vector<PointPair> ordered(pairs.begin(), pairs.end());
  for (auto& p : ordered) {
    if (p.p1.t > p.p2.t) p = p.swapped();
  }
  return run(model, ordered, slack, threads, "hadamard_pini", [](const PointPair& p) -> std::optional<Bounds> {
    if (!(p.p1.t < p.p2.t)) return std::nullopt;
    return Bounds{comparators::hadamard_pini_lower(p), std::nullopt};
  });
}

CounterexampleReport printed_prefactor_counterexample() {
  const PointPair pair{{0.0, 1.0}, {1.0, 2.0}};
  const SharpBracket b = ratio::sharp_bracket(pair);
  auto realized = [&](double src) {
    return kernels::cauchy_kernel(pair.p2.x - src, pair.p2.t) / kernels::cauchy_kernel(pair.p1.x - src, pair.p1.t);
  };
  CounterexampleReport r{};
  r.pair = pair;
  r.x_low = *b.x_low;
  r.x_high = *b.x_high;
  const double printed = pair.p1.t / pair.p2.t;
  const double corrected = pair.p2.t / pair.p1.t;
  r.realized_upper = realized(r.x_high);
  r.realized_lower = realized(r.x_low);
  r.printed_upper = printed * b.c_high;
  r.printed_lower = printed * b.c_low;
  r.corrected_upper = corrected * b.c_high;
  r.corrected_lower = corrected * b.c_low;
  r.printed_upper_violated = r.realized_upper > r.printed_upper;
  const double tol = 1e-12;
  r.corrected_compliant = r.realized_upper <= r.corrected_upper * (1 + tol) &&
                          r.realized_lower >= r.corrected_lower * (1 - tol);
  return r;
}

SharpnessResult sharpness_report(const PointPair& pair) {
  validate(pair);
  if (positions_coincide(pair) && pair.p1.t == pair.p2.t) {
    throw DegenerateInputError("identical points: the ratio is identically 1");
  }
  const SharpBracket b = ratio::sharp_bracket(pair);
  SharpnessResult r{0.0, 0.0, !b.x_low.has_value(), !b.x_high.has_value()};
  if (b.x_low) r.low_residual = std::abs(ratio::kernel_ratio(pair, 0.0, *b.x_low) - b.lower);
  if (b.x_high) r.high_residual = std::abs(ratio::kernel_ratio(pair, 0.0, *b.x_high) - b.upper);
  return r;
}

unsigned sweep_threads_from_env() {
  const char* env = std::getenv("HARNACK_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) throw ContractError(std::string("HARNACK_THREADS must be a positive integer, got '") + env + "'");
  return static_cast<unsigned>(v);
}

}  // namespace verify
}  // namespace harnack
