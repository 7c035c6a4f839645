#include "harnack/comparators.hpp"

#include <cmath>
#include <numbers>

#include "harnack/errors.hpp"
#include "harnack/kernels.hpp"

namespace harnack::comparators {
namespace {

void require_ordered(const PointPair& pair, const char* op) {
  validate(pair);
  if (!(pair.p1.t < pair.p2.t)) throw OrderingError(std::string(op) + ": requires t1 < t2");
}

void require_ordered(double s1, double s2, const char* op) {
  if (!(s1 > 0.0) || !(s2 > s1) || !std::isfinite(s2))
    throw DomainError(std::string(op) + ": requires 0 < sigma1 < sigma2");
}

}  // namespace

double hadamard_pini_lower(const PointPair& pair) {
  require_ordered(pair, "hadamard_pini_lower");
  const double dx = pair.p2.x - pair.p1.x;
  const double dt = pair.p2.t - pair.p1.t;
  return std::sqrt(pair.p1.t / pair.p2.t) * std::exp(-dx * dx / (4.0 * dt));
}

double hp_equality_source(const PointPair& pair) {
  validate(pair);
  if (pair.p1.t == pair.p2.t) throw DegenerateInputError("hp_equality_source: requires t1 != t2");
  return (pair.p1.x * pair.p2.t - pair.p2.x * pair.p1.t) / (pair.p2.t - pair.p1.t);
}

double gaussian_ratio_lower(double sigma1, double sigma2, double x1, double x2, double y) {
  require_ordered(sigma1, sigma2, "gaussian_ratio_lower");
  // Ratio of Gaussians through the exponent difference; the quotient of two underflowed
  // kernels would be 0/0 far from the sources.
  const double e = (x1 - y) * (x1 - y) / (4.0 * sigma1) - (x2 - y) * (x2 - y) / (4.0 * sigma2);
  const double lhs = std::exp(e);
  const double ds = sigma2 - sigma1;
  const double rhs = std::sqrt(4.0 * std::numbers::pi * ds) * kernels::gaussian_kernel(x2 - x1, ds);
  return lhs - rhs;
}

double cauchy_ratio_lower_margin(double sigma1, double sigma2, double x1, double x2, double y) {
  require_ordered(sigma1, sigma2, "cauchy_ratio_lower_margin");
  const double lhs = (sigma2 / sigma1) * kernels::cauchy_kernel(x2 - y, sigma2) /
                     kernels::cauchy_kernel(x1 - y, sigma1);
  const double ds = sigma2 - sigma1;
  return lhs - std::numbers::pi * ds * kernels::cauchy_kernel(x2 - x1, ds);
}

double simple_fractional_lower(const PointPair& pair) {
  require_ordered(pair, "simple_fractional_lower");
  const double dx = pair.p2.x - pair.p1.x;
  const double dt = pair.p2.t - pair.p1.t;
  const double lambda = dx * dx / (dt * dt);
  return (pair.p1.t / pair.p2.t) / (1.0 + lambda);
}

double wz_lower(const PointPair& pair, double c) {
  require_ordered(pair, "wz_lower");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("wz_lower: constant must be positive");
  const double dx = pair.p2.x - pair.p1.x;
  const double dt = pair.p2.t - pair.p1.t;
  const double lambda = dx * dx / (dt * dt);
  return std::sqrt(pair.p1.t / pair.p2.t) * std::exp(-c * (1.0 + lambda));
}

ComparatorResult bsv_bracket(const PointPair& pair, double c_r0) {
  validate(pair);
  if (!(c_r0 > 0.0) || !std::isfinite(c_r0)) throw DomainError("bsv_bracket: C(R0) must be positive");
  const double x1 = pair.p1.x;
  const double x2 = pair.p2.x;
  const double t1 = pair.p1.t;
  const double t2 = pair.p2.t;
  const double ratio_sq = (t2 / t1) * (t2 / t1);
  const double spread = std::sqrt(std::abs(t2 - t1)) + std::abs(x1 * x1 - x2 * x2);
  const double c_low = c_r0 * ratio_sq * (1.0 + spread / (std::sqrt(t1) + x1 * x1));
  const double c_high = c_r0 * ratio_sq * (1.0 + spread / (std::sqrt(t2) + x2 * x2));
  ComparatorResult r;
  r.name = "bsv";
  r.lower = (t1 / t2) * c_low;
  r.upper = (t1 / t2) * c_high;
  r.constants_used = {{"c_r0", c_r0}};
  r.comparator_only = true;
  return r;
}

}  // namespace harnack::comparators
