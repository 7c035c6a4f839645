#include "harnack/ratio_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harnack/errors.hpp"
#include "harnack/kernels.hpp"

namespace harnack {

void validate(const PointPair& pair) {
  for (const auto* p : {&pair.p1, &pair.p2}) {
    if (!std::isfinite(p->x)) throw DomainError("point position must be finite");
    if (!(p->t > 0.0) || !std::isfinite(p->t)) {
      std::ostringstream os;
      os << "point time must be positive and finite, got " << p->t;
      throw DomainError(os.str());
    }
  }
}

bool positions_coincide(const PointPair& pair) {
  const double x1 = pair.p1.x;
  const double x2 = pair.p2.x;
  return std::abs(x2 - x1) < 1e-12 * (1.0 + std::abs(x1) + std::abs(x2));
}

KernelRatioProblem::KernelRatioProblem(const PointPair& pair, double tau) : pair_(pair), tau_(tau) {
  validate(pair);
  const double tmin = std::min(pair.p1.t, pair.p2.t);
  if (!(tau >= 0.0 && tau < tmin)) {
    std::ostringstream os;
    os << "time shift tau = " << tau << " outside [0, " << tmin << ")";
    throw DomainError(os.str());
  }
}

namespace ratio {
namespace {

// Shifted quantities shared by all closed forms at a given tau.
struct Shifted {
  double s1;     // t1 - tau
  double s2;     // t2 - tau
  double gamma;  // |x2 - x1|^2
  double beta;   // s2^2 - s1^2
  double alpha;  // sqrt(kappa)
};

Shifted shifted(const KernelRatioProblem& prob) {
  Shifted s{};
  s.s1 = prob.sigma1();
  s.s2 = prob.sigma2();
  s.gamma = prob.dx() * prob.dx();
  const double dt = s.s2 - s.s1;
  const double sum = s.s2 + s.s1;
  s.beta = dt * sum;
  s.alpha = std::sqrt((s.gamma + dt * dt) * (s.gamma + sum * sum));
  return s;
}

// (alpha - beta - gamma) / (alpha - beta + gamma) and (alpha + beta + gamma) / (alpha + beta - gamma).
// Whichever expression would subtract nearly equal numbers is rewritten with
// alpha^2 - (beta + gamma)^2 = 4 gamma s1^2 and alpha^2 - (beta - gamma)^2 = 4 gamma s2^2.
struct ClosedFormFactors {
  double c_low;
  double c_high;
};

ClosedFormFactors closed_form_factors(const Shifted& s) {
  const double q = (s.s1 * s.s1) / (s.s2 * s.s2);
  ClosedFormFactors f{};
  if (s.beta >= 0.0) {
    f.c_low = q * (s.alpha + s.beta - s.gamma) / (s.alpha + s.beta + s.gamma);
    f.c_high = (s.alpha + s.beta + s.gamma) / (s.alpha + s.beta - s.gamma);
  } else {
    f.c_low = (s.alpha - s.beta - s.gamma) / (s.alpha - s.beta + s.gamma);
    f.c_high = q * (s.alpha - s.beta + s.gamma) / (s.alpha - s.beta - s.gamma);
  }
  return f;
}

}  // namespace

double kernel_ratio(const PointPair& pair, double tau, double y) {
  const KernelRatioProblem prob(pair, tau);
  return kernels::cauchy_kernel(pair.p2.x - y, prob.sigma2()) /
         kernels::cauchy_kernel(pair.p1.x - y, prob.sigma1());
}

ReducedCoordinates reduced_coordinates(const PointPair& pair, double tau, double y) {
  const KernelRatioProblem prob(pair, tau);
  const double u1 = (pair.p1.x - y) / prob.sigma1();
  const double u2 = (pair.p2.x - y) / prob.sigma2();
  return {0.5 * (u2 + u1), 0.5 * (u2 - u1)};
}

double ratio_from_reduced(const PointPair& pair, double tau, const ReducedCoordinates& rc) {
  const KernelRatioProblem prob(pair, tau);
  const double minus = rc.omega - rc.rho;
  const double plus = rc.omega + rc.rho;
  return (prob.sigma1() / prob.sigma2()) * (1.0 + minus * minus) / (1.0 + plus * plus);
}

double log_ratio_slope(const PointPair& pair, double tau, double y) {
  const KernelRatioProblem prob(pair, tau);
  const auto rc = reduced_coordinates(pair, tau, y);
  const double minus = rc.omega - rc.rho;
  const double plus = rc.omega + rc.rho;
  // d(omega - rho)/dy = -1/sigma1, d(omega + rho)/dy = -1/sigma2.
  return 2.0 * minus * (-1.0 / prob.sigma1()) / (1.0 + minus * minus) -
         2.0 * plus * (-1.0 / prob.sigma2()) / (1.0 + plus * plus);
}

QuadraticCoefficients stationarity_quadratic(const PointPair& pair, double tau) {
  const KernelRatioProblem prob(pair, tau);
  const double x1 = pair.p1.x;
  const double x2 = pair.p2.x;
  const double s1 = prob.sigma1();
  const double s2 = prob.sigma2();
  return {x2 - x1, -((x2 - x1) * (x2 + x1) + (s2 - s1) * (s2 + s1)),
          x1 * x2 * (x2 - x1) + s2 * s2 * x1 - s1 * s1 * x2};
}

double discriminant(const PointPair& pair, double tau) {
  const KernelRatioProblem prob(pair, tau);
  const double g = prob.dx() * prob.dx();
  const double dt = prob.sigma2() - prob.sigma1();
  const double sum = prob.sigma2() + prob.sigma1();
  return (g + dt * dt) * (g + sum * sum);
}

CriticalPoints critical_points(const PointPair& pair, double tau) {
  const KernelRatioProblem prob(pair, tau);
  if (positions_coincide(pair))
    throw DegenerateInputError("critical_points: coincident positions; use ratio_extrema");
  const auto [a, b, c] = stationarity_quadratic(pair, tau);
  const double kappa = discriminant(pair, tau);
  // Large-magnitude root from the standard formula, the other by Vieta.
  const double q = -0.5 * (b + std::copysign(std::sqrt(kappa), b));
  const double r1 = q / a;
  const double r2 = c / q;
  const double v1 = kernel_ratio(pair, tau, r1);
  const double v2 = kernel_ratio(pair, tau, r2);
  return v1 <= v2 ? CriticalPoints{r1, r2, kappa} : CriticalPoints{r2, r1, kappa};
}

RatioExtrema ratio_extrema(const PointPair& pair, double tau) {
  const KernelRatioProblem prob(pair, tau);
  const double s1 = prob.sigma1();
  const double s2 = prob.sigma2();
  if (positions_coincide(pair)) {
    const ExtremumLocation peak{ExtremumSite::Peak, pair.p1.x};
    const ExtremumLocation infinity{ExtremumSite::AtInfinity, 0.0};
    if (s1 == s2) return {1.0, 1.0, peak, peak};
    if (s2 > s1) return {s1 / s2, s2 / s1, peak, infinity};
    return {s2 / s1, s1 / s2, infinity, peak};
  }
  // At a critical point y^ the ratio equals (s2/s1)(x1 - y^)/(x2 - y^); the closed-form
  // factors evaluate that quotient without the cancellation of the direct expression.
  const auto f = closed_form_factors(shifted(prob));
  const auto cp = critical_points(pair, tau);
  const double pre = s2 / s1;
  return {pre * f.c_low, pre * f.c_high, {ExtremumSite::Interior, cp.x_low},
          {ExtremumSite::Interior, cp.x_high}};
}

SharpBracket sharp_bracket(const PointPair& pair) {
  validate(pair);
  const double t1 = pair.p1.t;
  const double t2 = pair.p2.t;
  SharpBracket out{};
  out.kappa0 = discriminant(pair, 0.0);
  const double pre = t2 / t1;
  if (positions_coincide(pair)) {
    const auto m = ratio_extrema(pair, 0.0);
    out.lower = m.m_low;
    out.upper = m.m_high;
    out.c_low = m.m_low / pre;
    out.c_high = m.m_high / pre;
    if (m.arg_low.attained()) out.x_low = m.arg_low.y;
    if (m.arg_high.attained()) out.x_high = m.arg_high.y;
    return out;
  }
  const auto f = closed_form_factors(shifted(KernelRatioProblem(pair, 0.0)));
  const auto cp = critical_points(pair, 0.0);
  out.c_low = f.c_low;
  out.c_high = f.c_high;
  out.x_low = cp.x_low;
  out.x_high = cp.x_high;
  out.lower = pre * f.c_low;
  out.upper = pre * f.c_high;
  return out;
}

LogDerivatives extrema_log_derivative(const PointPair& pair, double tau) {
  const KernelRatioProblem prob(pair, tau);
  if (!(tau > 0.0)) throw DomainError("extrema_log_derivative: tau must be strictly positive");
  if (positions_coincide(pair) && pair.p1.t == pair.p2.t)
    throw DegenerateInputError("extrema_log_derivative: coincident points; both extrema are constant");
  const double s1 = prob.sigma1();
  const double s2 = prob.sigma2();
  const double g = prob.dx() * prob.dx();
  const double dt = pair.p2.t - pair.p1.t;
  const double sum = s1 + s2;
  const double d_low = -std::sqrt(g + dt * dt) * sum / (s2 * s1 * std::sqrt(g + sum * sum));
  return {d_low, -d_low};
}

OrderingWitness bracket_ordering_witness(const PointPair& pair, double tau) {
  const KernelRatioProblem prob(pair, tau);
  const auto s = shifted(prob);
  const double abs_beta = std::abs(s.beta);
  const double min_sq = std::min(s.s1 * s.s1, s.s2 * s.s2);
  OrderingWitness w{};
  w.alpha = s.alpha;
  w.beta = s.beta;
  w.gamma = s.gamma;
  // alpha - (|beta| + gamma) = 4 gamma min(s^2) / (alpha + |beta| + gamma); exact zero at gamma = 0.
  const double denom = s.alpha + abs_beta + s.gamma;
  w.margin = denom > 0.0 ? 4.0 * s.gamma * min_sq / denom : 0.0;
  w.identity_gap = s.alpha * s.alpha - (s.gamma + abs_beta) * (s.gamma + abs_beta) - 4.0 * s.gamma * min_sq;
  return w;
}

}  // namespace ratio
}  // namespace harnack
