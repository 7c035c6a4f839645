#include "harnack/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "harnack/errors.hpp"
#include "harnack/quadrature.hpp"

namespace harnack {

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::Gaussian ? "gaussian" : "cauchy";
}

namespace kernels {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << op << ": time must be positive and finite, got " << t;
    throw DomainError(os.str());
  }
}

}  // namespace

double gaussian_kernel(double x, double t) {
  require_positive_time(t, "gaussian_kernel");
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double cauchy_kernel(double x, double t) {
  require_positive_time(t, "cauchy_kernel");
  const double z = x / t;
  // Past this point 1 + z^2 == z^2 in double precision and z^2 can overflow.
  if (z * z > 1e30 || !std::isfinite(z * z)) return t / (kPi * x) / x;
  return 1.0 / (kPi * t * (1.0 + z * z));
}

double kernel(KernelKind kind, double x, double t) {
  return kind == KernelKind::Gaussian ? gaussian_kernel(x, t) : cauchy_kernel(x, t);
}

KernelJet gaussian_jet(double x, double t) {
  const double g = gaussian_kernel(x, t);
  const double dx = -x / (2.0 * t) * g;
  const double dt = g * (x * x - 2.0 * t) / (4.0 * t * t);
  const double a = x / (2.0 * t);
  const double dxx = a * a * g - g / (2.0 * t);
  return {g, dt, dx, dxx};
}

KernelJet cauchy_jet(double x, double t) {
  const double k = cauchy_kernel(x, t);
  const double s = t * t + x * x;
  // k = t / (pi s); derivatives written as multiples of k to stay finite in the tails.
  const double dt = k * (1.0 / t - 2.0 * t / s);
  const double dx = -k * 2.0 * x / s;
  const double dxx = k * (6.0 * x * x - 2.0 * t * t) / (s * s);
  return {k, dt, dx, dxx};
}

KernelJet kernel_jet(KernelKind kind, double x, double t) {
  return kind == KernelKind::Gaussian ? gaussian_jet(x, t) : cauchy_jet(x, t);
}

double frac_constant(int n, double alpha) {
  if (n < 1) throw DomainError("frac_constant: dimension must be a positive integer");
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("frac_constant: alpha must lie in (0, 2)");
  return std::pow(2.0, alpha) * std::tgamma(0.5 * (n + alpha)) /
         (std::pow(kPi, 0.5 * n) * std::abs(std::tgamma(-0.5 * alpha)));
}

void PvQuadrature::validate() const {
  if (!(abs_tol > 0.0)) throw ContractError("PvQuadrature: abs_tol must be positive");
  if (node_count < 16) throw ContractError("PvQuadrature: node_count must be at least 16");
  if (!(symmetric_window > 0.0)) throw ContractError("PvQuadrature: symmetric_window must be positive");
  if (!(tail_map.scale > 0.0)) throw ContractError("PvQuadrature: tail scale must be positive");
  if (!(tail_map.far_cutoff * tail_map.scale > symmetric_window))
    throw ContractError("PvQuadrature: far cutoff must lie beyond the excision window");
  if (max_panels < node_count) throw ContractError("PvQuadrature: max_panels below node_count");
}

NumericValue half_laplacian(const ScalarField& f, double x, const PvQuadrature& q) {
  q.validate();
  const double fx = f(x);
  if (!std::isfinite(fx)) throw DomainError("half_laplacian: f is not finite at the evaluation point");
  auto sym = [&](double h) { return 2.0 * fx - f(x + h) - f(x - h); };

  // Near field: sym(h)/h^2 = -f'' - f'''' h^2/12 + O(h^4).
  const double w = q.symmetric_window;
  const double d2_full = -sym(w) / (w * w);
  const double d2_half = -sym(0.5 * w) / (0.25 * w * w);
  const double f2 = (4.0 * d2_half - d2_full) / 3.0;
  const double f4 = 16.0 * (d2_full - d2_half) / (w * w);
  const double near = -(f2 * w + f4 * w * w * w / 36.0);
  const double near_err = std::abs(f4) * w * w * w / 36.0 +
                          8.0 * std::numeric_limits<double>::epsilon() * std::abs(fx) / w;

  const double s = q.tail_map.scale;
  const double far_h = q.tail_map.far_cutoff * s;
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 0.5 * q.abs_tol;
  opts.initial_panels = q.node_count;
  opts.max_panels = q.max_panels;

  auto mid_integrand = [&](double theta) {
    const double tn = std::tan(theta);
    return sym(s * tn) * (1.0 + tn * tn) / (s * tn * tn);
  };
  const auto mid = quadrature::integrate(mid_integrand, std::atan(w / s), std::atan(far_h / s), opts);

  auto far_integrand = [&](double u) { return sym(far_h / u) / far_h; };
  const auto far = quadrature::integrate(far_integrand, 0.0, 1.0, opts);

  const double c = 1.0 / kPi;  // frac_constant(1, 1)
  NumericValue out{c * (near + mid.value + far.value), c * (near_err + mid.error + far.error)};
  if (!std::isfinite(out.value) || !mid.converged || !far.converged || near_err > q.abs_tol) {
    std::ostringstream os;
    os << "half_laplacian: quadrature did not reach abs_tol " << q.abs_tol << " at x = " << x
       << " (error estimate " << out.error << ")";
    throw NumericFailure(os.str(), out.value, out.error);
  }
  return out;
}

}  // namespace kernels
}  // namespace harnack
