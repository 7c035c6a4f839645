#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "harnack/kernels.hpp"

namespace harnack {

/// One translated, delayed kernel: weight * K(x - center, t + time_offset).
struct SourceTerm {
  double weight = 1.0;
  double center = 0.0;
  double time_offset = 0.0;
};

/// Finite positive combination of kernels; an exact positive solution for every t > 0.
class KernelMixture {
 public:
  KernelMixture(KernelKind kind, std::vector<SourceTerm> terms);

  KernelKind kind() const { return kind_; }
  const std::vector<SourceTerm>& terms() const { return terms_; }

 private:
  KernelKind kind_;
  std::vector<SourceTerm> terms_;
};

/// Caller-supplied growth bound on the initial datum.
/// Cauchy flow: bound >= sup u0(y) / (1 + y^2).
/// Gaussian flow: bound >= sup u0(y) exp(-y^2 / gaussian_scale); no scale means u0 is bounded by `bound`.
struct GrowthCertificate {
  double bound = 0.0;
  std::optional<double> gaussian_scale;
};

class InitialDatum {
 public:
  using Evaluator = std::function<double(double)>;

  /// `breakpoints` are abscissae where the datum has kinks, jumps or narrow features;
  /// convolution quadratures split there.
  InitialDatum(std::string name, Evaluator evaluator, std::optional<GrowthCertificate> certificate,
               std::vector<double> breakpoints = {});

  static InitialDatum constant(double value, std::optional<GrowthCertificate> cert);
  /// mass * k(y - center, spread).
  static InitialDatum cauchy_bump(double mass, double center, double spread, std::optional<GrowthCertificate> cert);
  /// mass * g(y - center, spread).
  static InitialDatum gaussian_bump(double mass, double center, double spread, std::optional<GrowthCertificate> cert);
  /// value on [lo, hi], zero elsewhere.
  static InitialDatum indicator(double lo, double hi, double value, std::optional<GrowthCertificate> cert);

  const std::string& name() const { return name_; }
  double operator()(double y) const { return evaluator_(y); }
  const std::optional<GrowthCertificate>& certificate() const { return certificate_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  std::string name_;
  Evaluator evaluator_;
  std::optional<GrowthCertificate> certificate_;
  std::vector<double> breakpoints_;
};

struct ConvolutionQuadrature {
  /// Absolute target for a datum of unit size; scaled by max(1, growth bound).
  double abs_tol = 1e-12;
  std::size_t node_count = 16;
  std::size_t max_panels = 20000;
};

/// u(x,t) = int K(x - y, t) u0(y) dy.
class ConvolutionSolution {
 public:
  ConvolutionSolution(InitialDatum datum, KernelKind kind, ConvolutionQuadrature quadrature = {});

  const InitialDatum& datum() const { return datum_; }
  KernelKind kind() const { return kind_; }
  const ConvolutionQuadrature& quadrature() const { return quadrature_; }

 private:
  InitialDatum datum_;
  KernelKind kind_;
  ConvolutionQuadrature quadrature_;
};

using SolutionModel = std::variant<KernelMixture, ConvolutionSolution>;

KernelKind kind_of(const SolutionModel& model);

/// Mixtures are summed exactly (error 0). Convolutions report the quadrature estimate and
/// throw NumericFailure when it misses the configured tolerance.
NumericValue evaluate(const KernelMixture& model, double x, double t);
NumericValue evaluate(const ConvolutionSolution& model, double x, double t);
NumericValue evaluate(const SolutionModel& model, double x, double t);

/// ln u(x,t); log-sum-exp for mixtures, so far tails of Gaussian mixtures stay finite.
NumericValue log_evaluate(const SolutionModel& model, double x, double t);

/// Steps for the finite-difference derivatives of convolution solutions.
struct FiniteDifferenceSteps {
  double time_rel = 1e-5;
  double time_min = 1e-5;
  double space_rel = 1e-3;
  double space_min = 1e-3;

  double time_step(double t) const;
  double space_step(double t) const;
};

struct ResidualConfig {
  /// Relative target for PV quadratures: abs_tol = pv_tol * max(1, |f(x)| / length_scale).
  double pv_tol = 1e-10;
  /// Excision half-width relative to the model's length scale.
  double pv_window_rel = 1e-4;
  FiniteDifferenceSteps fd{};
};

/// Space-time field with its own evaluation error, for models outside the two families.
using FieldEvaluator = std::function<NumericValue(double x, double t)>;

/// d_t u + (-Delta)^{1/2} u for Cauchy kind, d_t w - d_xx w for Gaussian kind.
NumericValue pde_residual(const SolutionModel& model, double x, double t, const ResidualConfig& cfg = {});
/// Same residual for an arbitrary field, all derivatives by finite differences; `length_scale`
/// sets the PV excision and tail scales.
NumericValue pde_residual(KernelKind kind, const FieldEvaluator& field, double x, double t, double length_scale,
                          const ResidualConfig& cfg = {});

/// d_t ln w - (d_x ln w)^2 + 1/(2t); Gaussian-kind models only.
NumericValue ably_residual(const SolutionModel& model, double x, double t, const ResidualConfig& cfg = {});
/// d_xx ln w + 1/(2t); coincides with ably_residual on solutions.
NumericValue ably_residual_log_hessian(const SolutionModel& model, double x, double t, const ResidualConfig& cfg = {});

/// -(-Delta)^{1/2}(ln u)(x) + 1/(2t); Cauchy-kind models only.
NumericValue fractional_liyau_residual(const SolutionModel& model, double x, double t, const ResidualConfig& cfg = {});

}  // namespace harnack
