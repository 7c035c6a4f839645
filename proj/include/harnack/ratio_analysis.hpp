#pragma once

#include <optional>

namespace harnack {

/// A point (x, t) of the space-time strip; t > 0.
struct SpacetimePoint {
  double x = 0.0;
  double t = 1.0;
};

/// The two evaluation points of a Harnack ratio u(p2) / u(p1). Times need not be ordered.
struct PointPair {
  SpacetimePoint p1;
  SpacetimePoint p2;

  PointPair swapped() const { return {p2, p1}; }
};

/// Pair plus a time shift tau in [0, min(t1, t2)); sigma_i = t_i - tau.
class KernelRatioProblem {
 public:
  KernelRatioProblem(const PointPair& pair, double tau);

  const PointPair& pair() const { return pair_; }
  double tau() const { return tau_; }
  double sigma1() const { return pair_.p1.t - tau_; }
  double sigma2() const { return pair_.p2.t - tau_; }
  double dx() const { return pair_.p2.x - pair_.p1.x; }

 private:
  PointPair pair_;
  double tau_;
};

/// Throws DomainError unless both times are positive and finite and positions are finite.
void validate(const PointPair& pair);

/// |x2 - x1| below 1e-12 (1 + |x1| + |x2|): treated as coincident positions.
bool positions_coincide(const PointPair& pair);

struct QuadraticCoefficients {
  double a;
  double b;
  double c;
};

struct ReducedCoordinates {
  double omega;
  double rho;
};

struct CriticalPoints {
  double x_low;   ///< ratio minimiser
  double x_high;  ///< ratio maximiser
  double kappa;   ///< discriminant of the stationarity quadratic
};

/// Where an extremum of the kernel ratio sits.
enum class ExtremumSite {
  Interior,   ///< attained at a finite critical point
  Peak,       ///< attained at y = x1 = x2 (coincident positions)
  AtInfinity  ///< approached as |y| -> infinity, not attained
};

struct ExtremumLocation {
  ExtremumSite site = ExtremumSite::Interior;
  double y = 0.0;  ///< meaningful unless site == AtInfinity

  bool attained() const { return site != ExtremumSite::AtInfinity; }
};

struct RatioExtrema {
  double m_low;
  double m_high;
  ExtremumLocation arg_low;
  ExtremumLocation arg_high;
};

/// Sharp two-sided bound: lower <= u(x2,t2) / u(x1,t1) <= upper for every positive solution.
struct SharpBracket {
  double kappa0;
  double c_low;
  double c_high;
  std::optional<double> x_low;   ///< source location attaining `lower`, if attained
  std::optional<double> x_high;  ///< source location attaining `upper`, if attained
  double lower;
  double upper;
};

struct LogDerivatives {
  double d_low;   ///< d ln m_low / d tau
  double d_high;  ///< d ln m_high / d tau
};

struct OrderingWitness {
  double alpha;
  double beta;
  double gamma;
  double margin;        ///< alpha - (|beta| + gamma) >= 0
  double identity_gap;  ///< alpha^2 - (gamma + |beta|)^2 - 4 gamma min(sigma1^2, sigma2^2)
};

namespace ratio {

/// k(x2 - y, t2 - tau) / k(x1 - y, t1 - tau).
double kernel_ratio(const PointPair& pair, double tau, double y);

/// omega - rho = (x1 - y)/sigma1, omega + rho = (x2 - y)/sigma2.
ReducedCoordinates reduced_coordinates(const PointPair& pair, double tau, double y);

/// Ratio rebuilt from reduced coordinates: (sigma1/sigma2)(1 + (omega-rho)^2)/(1 + (omega+rho)^2).
double ratio_from_reduced(const PointPair& pair, double tau, const ReducedCoordinates& rc);

/// d/dy ln(kernel_ratio), written through the reduced coordinates.
double log_ratio_slope(const PointPair& pair, double tau, double y);

/// Coefficients of A y^2 + B y + C = 0 whose roots are the critical points of the ratio.
QuadraticCoefficients stationarity_quadratic(const PointPair& pair, double tau);

/// kappa(tau) = (dx^2 + dt^2)(dx^2 + (sigma1 + sigma2)^2), computed in product form.
double discriminant(const PointPair& pair, double tau);

/// Roots of the stationarity quadratic, labelled by evaluating the ratio at each.
/// Throws DegenerateInputError when the positions coincide.
CriticalPoints critical_points(const PointPair& pair, double tau);

RatioExtrema ratio_extrema(const PointPair& pair, double tau);

SharpBracket sharp_bracket(const PointPair& pair);

/// Closed-form tau-derivatives of ln m_low and ln m_high. Requires 0 < tau < min(t1, t2).
LogDerivatives extrema_log_derivative(const PointPair& pair, double tau);

OrderingWitness bracket_ordering_witness(const PointPair& pair, double tau);

}  // namespace ratio
}  // namespace harnack
