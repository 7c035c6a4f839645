#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harnack/ratio_analysis.hpp"

namespace harnack {

/// One row of a bound comparison. Constants the caller supplied are echoed in constants_used.
struct ComparatorResult {
  std::string name;
  std::optional<double> lower;
  std::optional<double> upper;
  std::vector<std::pair<std::string, double>> constants_used;
  /// Set for bounds whose hypotheses restrict the solution class or whose constants are unknown.
  bool comparator_only = false;
};

namespace comparators {

/// sqrt(t1/t2) exp(-|dx|^2 / (4 dt)) for the classical heat flow; requires t1 < t2.
double hadamard_pini_lower(const PointPair& pair);

/// Source location x_s = (x1 t2 - x2 t1)/(t2 - t1) of the Gaussian attaining the Hadamard-Pini bound.
double hp_equality_source(const PointPair& pair);

/// sqrt(s2/s1) g(x2-y,s2)/g(x1-y,s1) - sqrt(4 pi (s2-s1)) g(x2-x1, s2-s1); nonnegative, zero at
/// y = (x1 s2 - x2 s1)/(s2 - s1).
double gaussian_ratio_lower(double sigma1, double sigma2, double x1, double x2, double y);

/// (s2/s1) k(x2-y,s2)/k(x1-y,s1) - pi (s2-s1) k(x2-x1, s2-s1); nonnegative for s1 < s2.
double cauchy_ratio_lower_margin(double sigma1, double sigma2, double x1, double x2, double y);

/// (t1/t2) / (1 + |dx|^2/dt^2); one-sided fractional bound, requires t1 < t2.
double simple_fractional_lower(const PointPair& pair);

/// sqrt(t1/t2) exp(-c (1 + |dx|^2/dt^2)) with a caller-supplied c > 0; requires t1 < t2.
double wz_lower(const PointPair& pair, double c);

/// Two-sided kernel-dominated bound with caller-supplied C(R0). Reported verbatim:
/// lower <= upper is not enforced.
ComparatorResult bsv_bracket(const PointPair& pair, double c_r0);

}  // namespace comparators
}  // namespace harnack
