#include "harnack/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "harnack/errors.hpp"
#include "harnack/quadrature.hpp"

namespace harnack {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << op << ": time must be positive and finite, got " << t;
    throw DomainError(os.str());
  }
}

// ln K and its relative derivatives K_t/K, K_x/K, K_xx/K for one mixture term.
struct LogTerm {
  double log_value;
  double rel_t;
  double rel_x;
  double rel_xx;
};

LogTerm log_term(KernelKind kind, const SourceTerm& term, double x, double t) {
  const double tau = t + term.time_offset;
  const double z = x - term.center;
  if (kind == KernelKind::Gaussian) {
    const double a = z / (2.0 * tau);
    return {std::log(term.weight) - 0.5 * std::log(4.0 * kPi * tau) - z * z / (4.0 * tau),
            -0.5 / tau + z * z / (4.0 * tau * tau), -a, a * a - 0.5 / tau};
  }
  const double s = tau * tau + z * z;
  // ln(tau^2 + z^2) without overflowing z^2 in the far tail.
  const double az = std::abs(z);
  const double log_s = az > tau ? 2.0 * std::log(az) + std::log1p((tau / az) * (tau / az))
                                : 2.0 * std::log(tau) + std::log1p((z / tau) * (z / tau));
  const double inv_s = az > 1e150 ? 0.0 : 1.0 / s;
  return {std::log(term.weight) + std::log(tau) - std::log(kPi) - log_s, 1.0 / tau - 2.0 * tau * inv_s,
          -2.0 * z * inv_s, (6.0 * z * z - 2.0 * tau * tau) * inv_s * inv_s};
}

// Logarithmic jet of a mixture, assembled with a shifted log-sum to survive tail underflow.
struct LogJet {
  double log_value;
  double lt;   // d_t ln u
  double lx;   // d_x ln u
  double rxx;  // u_xx / u
};

LogJet mixture_log_jet(const KernelMixture& m, double x, double t) {
  std::vector<LogTerm> terms;
  terms.reserve(m.terms().size());
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& s : m.terms()) {
    terms.push_back(log_term(m.kind(), s, x, t));
    peak = std::max(peak, terms.back().log_value);
  }
  double sum = 0.0, st = 0.0, sx = 0.0, sxx = 0.0;
  for (const auto& lt : terms) {
    const double e = std::exp(lt.log_value - peak);
    sum += e;
    st += e * lt.rel_t;
    sx += e * lt.rel_x;
    sxx += e * lt.rel_xx;
  }
  return {peak + std::log(sum), st / sum, sx / sum, sxx / sum};
}

double min_effective_time(const KernelMixture& m, double t) {
  double mt = std::numeric_limits<double>::infinity();
  for (const auto& s : m.terms()) mt = std::min(mt, t + s.time_offset);
  return mt;
}

kernels::PvQuadrature pv_config(const ResidualConfig& cfg, double scale, double fx) {
  kernels::PvQuadrature q;
  q.symmetric_window = cfg.pv_window_rel * scale;
  q.tail_map.scale = scale;
  q.abs_tol = cfg.pv_tol * std::max(1.0, std::abs(fx) / scale);
  return q;
}

const GrowthCertificate& require_certificate(const ConvolutionSolution& model) {
  const auto& cert = model.datum().certificate();
  if (!cert) throw ContractError("convolution solution: initial datum '" + model.datum().name() +
                                 "' has no growth certificate");
  if (!(cert->bound > 0.0) || !std::isfinite(cert->bound))
    throw ContractError("convolution solution: growth certificate must be finite and positive");
  if (cert->gaussian_scale && !(*cert->gaussian_scale > 0.0))
    throw ContractError("convolution solution: growth scale must be positive");
  return *cert;
}

NumericValue integrate_segments(const quadrature::Integrand& f, const std::vector<std::pair<double, double>>& segs,
                                const ConvolutionQuadrature& cq, double magnitude, const char* op) {
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = cq.abs_tol * std::max(1.0, magnitude) / static_cast<double>(std::max<std::size_t>(1, segs.size()));
  opts.initial_panels = cq.node_count;
  opts.max_panels = cq.max_panels;
  NumericValue out;
  bool ok = true;
  for (const auto& [a, b] : segs) {
    const auto est = quadrature::integrate(f, a, b, opts);
    out.value += est.value;
    out.error += est.error;
    ok = ok && est.converged;
  }
  if (!ok || !std::isfinite(out.value)) {
    std::ostringstream os;
    os << op << ": convolution quadrature did not converge (error estimate " << out.error << ")";
    throw NumericFailure(os.str(), out.value, out.error);
  }
  return out;
}

std::vector<double> sorted_nodes(std::vector<double> pts, double lo, double hi) {
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double p) { return !(p > lo && p < hi); }), pts.end());
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}


// Richardson-extrapolated central differences. The error term combines the propagated
// evaluation error with |D(h) - D(2h)| / 3, the truncation error of the h-step formula.
struct Sampled {
  NumericValue m2, m1, c, p1, p2;  // f at -2h, -h, 0, h, 2h
};

template <class F>
Sampled sample(F&& f, double h) {
  return {f(-2.0 * h), f(-h), f(0.0), f(h), f(2.0 * h)};
}

NumericValue first_derivative(const Sampled& s, double h) {
  const double d1 = (s.p1.value - s.m1.value) / (2.0 * h);
  const double d2 = (s.p2.value - s.m2.value) / (4.0 * h);
  const double noise = (4.0 * (s.p1.error + s.m1.error) / (2.0 * h) + (s.p2.error + s.m2.error) / (4.0 * h)) / 3.0;
  return {(4.0 * d1 - d2) / 3.0, noise + std::abs(d1 - d2) / 3.0};
}

NumericValue second_derivative(const Sampled& s, double h) {
  const double d1 = (s.p1.value - 2.0 * s.c.value + s.m1.value) / (h * h);
  const double d2 = (s.p2.value - 2.0 * s.c.value + s.m2.value) / (4.0 * h * h);
  const double noise = (4.0 * (s.p1.error + 2.0 * s.c.error + s.m1.error) / (h * h) +
                        (s.p2.error + 2.0 * s.c.error + s.m2.error) / (4.0 * h * h)) /
                       3.0;
  return {(4.0 * d1 - d2) / 3.0, noise + std::abs(d1 - d2) / 3.0};
}

}  // namespace

KernelMixture::KernelMixture(KernelKind kind, std::vector<SourceTerm> terms) : kind_(kind), terms_(std::move(terms)) {
  if (terms_.empty()) throw ContractError("kernel mixture needs at least one term");
  for (const auto& s : terms_) {
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) throw ContractError("mixture weights must be positive");
    if (!std::isfinite(s.center)) throw ContractError("mixture centers must be finite");
    if (!(s.time_offset >= 0.0) || !std::isfinite(s.time_offset))
      throw ContractError("mixture time offsets must be nonnegative");
  }
}

InitialDatum::InitialDatum(std::string name, Evaluator evaluator, std::optional<GrowthCertificate> certificate,
                           std::vector<double> breakpoints)
    : name_(std::move(name)),
      evaluator_(std::move(evaluator)),
      certificate_(certificate),
      breakpoints_(std::move(breakpoints)) {
  if (!evaluator_) throw ContractError("initial datum needs an evaluator");
}

InitialDatum InitialDatum::constant(double value, std::optional<GrowthCertificate> cert) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ContractError("constant datum must be positive");
  return {"constant", [value](double) { return value; }, cert};
}

InitialDatum InitialDatum::cauchy_bump(double mass, double center, double spread,
                                       std::optional<GrowthCertificate> cert) {
  if (!(mass > 0.0) || !(spread > 0.0)) throw ContractError("cauchy_bump needs positive mass and spread");
  return {"cauchy_bump",
          [=](double y) { return mass * kernels::cauchy_kernel(y - center, spread); },
          cert,
          {center - spread, center, center + spread}};
}

InitialDatum InitialDatum::gaussian_bump(double mass, double center, double spread,
                                         std::optional<GrowthCertificate> cert) {
  if (!(mass > 0.0) || !(spread > 0.0)) throw ContractError("gaussian_bump needs positive mass and spread");
  const double w = 2.0 * std::sqrt(spread);
  return {"gaussian_bump",
          [=](double y) { return mass * kernels::gaussian_kernel(y - center, spread); },
          cert,
          {center - 4.0 * w, center - w, center, center + w, center + 4.0 * w}};
}

InitialDatum InitialDatum::indicator(double lo, double hi, double value, std::optional<GrowthCertificate> cert) {
  if (!(lo < hi) || !(value > 0.0)) throw ContractError("indicator needs lo < hi and a positive value");
  return {"indicator", [=](double y) { return (y >= lo && y <= hi) ? value : 0.0; }, cert, {lo, hi}};
}

ConvolutionSolution::ConvolutionSolution(InitialDatum datum, KernelKind kind, ConvolutionQuadrature quadrature)
    : datum_(std::move(datum)), kind_(kind), quadrature_(quadrature) {
  if (!(quadrature_.abs_tol > 0.0)) throw ContractError("convolution quadrature tolerance must be positive");
}

KernelKind kind_of(const SolutionModel& model) {
  return std::visit([](const auto& m) { return m.kind(); }, model);
}

NumericValue evaluate(const KernelMixture& model, double x, double t) {
  require_positive_time(t, "evaluate");
  double sum = 0.0;
  for (const auto& s : model.terms()) sum += s.weight * kernels::kernel(model.kind(), x - s.center, t + s.time_offset);
  return {sum, 0.0};
}

NumericValue evaluate(const ConvolutionSolution& model, double x, double t) {
  require_positive_time(t, "evaluate");
  const auto& cert = require_certificate(model);
  const auto& u0 = model.datum();
  std::vector<double> bps = u0.breakpoints();
  bps.push_back(x);

  if (model.kind() == KernelKind::Cauchy) {
    // y = x + t tan(theta) absorbs the kernel: u = (1/pi) int u0(x + t tan(theta)) d(theta),
    // split where the breakpoints land in theta.
    std::vector<double> nodes;
    for (double b : bps) nodes.push_back(std::atan((b - x) / t));
    const double half_pi = 0.5 * kPi;
    nodes = sorted_nodes(std::move(nodes), -half_pi, half_pi);
    std::vector<std::pair<double, double>> pieces;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) pieces.emplace_back(nodes[i], nodes[i + 1]);
    auto integrand = [&](double th) { return u0(x + t * std::tan(th)) / kPi; };
    return integrate_segments(integrand, pieces, model.quadrature(), cert.bound, "evaluate");
  }

  // Gaussian: y = x + 2 sqrt(t) s; |s| <= S leaves an e^{-S^2}-small remainder.
  double reach = 10.0;
  if (cert.gaussian_scale) {
    const double m = *cert.gaussian_scale;
    if (!(4.0 * t < m)) {
      std::ostringstream os;
      os << "evaluate: growth scale " << m << " only admits t < " << 0.25 * m << ", got t = " << t;
      throw DomainError(os.str());
    }
    reach = (10.0 + std::abs(x) / std::sqrt(m)) / (1.0 - 4.0 * t / m);
  }
  const double half = 2.0 * std::sqrt(t) * reach;
  const auto nodes = sorted_nodes(bps, x - half, x + half);
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) pieces.emplace_back(nodes[i], nodes[i + 1]);
  auto integrand = [&](double y) { return kernels::gaussian_kernel(x - y, t) * u0(y); };
  return integrate_segments(integrand, pieces, model.quadrature(), cert.bound, "evaluate");
}

NumericValue evaluate(const SolutionModel& model, double x, double t) {
  return std::visit([&](const auto& m) { return evaluate(m, x, t); }, model);
}

NumericValue log_evaluate(const SolutionModel& model, double x, double t) {
  require_positive_time(t, "log_evaluate");
  if (const auto* mix = std::get_if<KernelMixture>(&model)) return {mixture_log_jet(*mix, x, t).log_value, 0.0};
  const auto v = evaluate(std::get<ConvolutionSolution>(model), x, t);
  if (!(v.value > 0.0)) throw DomainError("log_evaluate: solution is not positive");
  return {std::log(v.value), v.error / v.value};
}

double FiniteDifferenceSteps::time_step(double t) const {
  return std::min(std::max(time_min, time_rel * t), 0.2 * t);
}

double FiniteDifferenceSteps::space_step(double t) const { return std::max(space_min, space_rel * std::sqrt(t)); }

NumericValue pde_residual(KernelKind kind, const FieldEvaluator& field, double x, double t, double length_scale,
                          const ResidualConfig& cfg) {
  require_positive_time(t, "pde_residual");
  const double ht = cfg.fd.time_step(t);
  const auto ts = sample([&](double d) { return field(x, t + d); }, ht);
  const auto u_t = first_derivative(ts, ht);
  double err = u_t.error;

  if (kind == KernelKind::Cauchy) {
    double inner_err = 0.0;
    auto slice = [&](double y) {
      const auto v = field(y, t);
      inner_err = std::max(inner_err, v.error);
      return v.value;
    };
    const double fx = slice(x);
    const auto q = pv_config(cfg, length_scale, fx);
    const auto hl = kernels::half_laplacian(slice, x, q);
    err += hl.error + 10.0 * inner_err / (kPi * q.symmetric_window);
    return {u_t.value + hl.value, err};
  }
  const double hx = cfg.fd.space_step(t);
  const auto u_xx = second_derivative(sample([&](double d) { return field(x + d, t); }, hx), hx);
  return {u_t.value - u_xx.value, err + u_xx.error};
}

NumericValue pde_residual(const SolutionModel& model, double x, double t, const ResidualConfig& cfg) {
  require_positive_time(t, "pde_residual");
  if (const auto* mix = std::get_if<KernelMixture>(&model)) {
    if (mix->kind() == KernelKind::Gaussian) {
      double res = 0.0;
      for (const auto& s : mix->terms()) {
        const auto jet = kernels::gaussian_jet(x - s.center, t + s.time_offset);
        res += s.weight * (jet.dt - jet.dxx);
      }
      return {res, 0.0};
    }
    double u_t = 0.0;
    for (const auto& s : mix->terms()) u_t += s.weight * kernels::cauchy_jet(x - s.center, t + s.time_offset).dt;
    auto slice = [&](double y) { return evaluate(*mix, y, t).value; };
    const double scale = min_effective_time(*mix, t);
    const auto hl = kernels::half_laplacian(slice, x, pv_config(cfg, scale, slice(x)));
    return {u_t + hl.value, hl.error};
  }
  const auto& conv = std::get<ConvolutionSolution>(model);
  return pde_residual(
      conv.kind(), [&](double xx, double tt) { return evaluate(conv, xx, tt); }, x, t, t, cfg);
}

namespace {

void require_kind(const SolutionModel& model, KernelKind kind, const char* op) {
  if (kind_of(model) != kind) {
    std::ostringstream os;
    os << op << ": requires a " << to_string(kind) << "-kind model, got " << to_string(kind_of(model));
    throw DomainError(os.str());
  }
}

// Finite-difference logarithmic derivatives of a convolution solution.
struct FdLogJet {
  double lt;
  double lx;
  double lxx;
  double err_t;
  double err_x;
  double err_xx;
};

FdLogJet fd_log_jet(const ConvolutionSolution& conv, double x, double t, const FiniteDifferenceSteps& fd) {
  const double ht = fd.time_step(t);
  const double hx = fd.space_step(t);
  auto ln = [&](double xx, double tt) {
    const auto v = evaluate(conv, xx, tt);
    if (!(v.value > 0.0)) throw DomainError("log-derivative residual: solution is not positive");
    return NumericValue{std::log(v.value), v.error / v.value};
  };
  const auto ts = sample([&](double d) { return ln(x, t + d); }, ht);
  const auto xs = sample([&](double d) { return ln(x + d, t); }, hx);
  const auto lt = first_derivative(ts, ht);
  const auto lx = first_derivative(xs, hx);
  const auto lxx = second_derivative(xs, hx);
  return {lt.value, lx.value, lxx.value, lt.error, lx.error, lxx.error};
}

}  // namespace

NumericValue ably_residual(const SolutionModel& model, double x, double t, const ResidualConfig& cfg) {
  require_positive_time(t, "ably_residual");
  require_kind(model, KernelKind::Gaussian, "ably_residual");
  if (const auto* mix = std::get_if<KernelMixture>(&model)) {
    const auto j = mixture_log_jet(*mix, x, t);
    return {j.lt - j.lx * j.lx + 0.5 / t, 0.0};
  }
  const auto j = fd_log_jet(std::get<ConvolutionSolution>(model), x, t, cfg.fd);
  return {j.lt - j.lx * j.lx + 0.5 / t, j.err_t + 2.0 * std::abs(j.lx) * j.err_x};
}

NumericValue ably_residual_log_hessian(const SolutionModel& model, double x, double t, const ResidualConfig& cfg) {
  require_positive_time(t, "ably_residual_log_hessian");
  require_kind(model, KernelKind::Gaussian, "ably_residual_log_hessian");
  if (const auto* mix = std::get_if<KernelMixture>(&model)) {
    const auto j = mixture_log_jet(*mix, x, t);
    return {j.rxx - j.lx * j.lx + 0.5 / t, 0.0};
  }
  const auto j = fd_log_jet(std::get<ConvolutionSolution>(model), x, t, cfg.fd);
  return {j.lxx + 0.5 / t, j.err_xx};
}

NumericValue fractional_liyau_residual(const SolutionModel& model, double x, double t, const ResidualConfig& cfg) {
  require_positive_time(t, "fractional_liyau_residual");
  require_kind(model, KernelKind::Cauchy, "fractional_liyau_residual");
  if (const auto* mix = std::get_if<KernelMixture>(&model)) {
    auto log_u = [&](double y) { return mixture_log_jet(*mix, y, t).log_value; };
    const double scale = min_effective_time(*mix, t);
    const auto hl = kernels::half_laplacian(log_u, x, pv_config(cfg, scale, log_u(x)));
    return {-hl.value + 0.5 / t, hl.error};
  }
  const auto& conv = std::get<ConvolutionSolution>(model);
  double inner_err = 0.0;
  auto log_u = [&](double y) {
    const auto v = evaluate(conv, y, t);
    if (!(v.value > 0.0)) throw DomainError("fractional_liyau_residual: solution is not positive");
    inner_err = std::max(inner_err, v.error / v.value);
    return std::log(v.value);
  };
  const auto q = pv_config(cfg, t, log_u(x));
  const auto hl = kernels::half_laplacian(log_u, x, q);
  return {-hl.value + 0.5 / t, hl.error + 10.0 * inner_err / (kPi * q.symmetric_window)};
}

}  // namespace harnack
