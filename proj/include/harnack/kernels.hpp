#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

namespace harnack {

/// Gaussian: g(x,t) = (4 pi t)^{-1/2} exp(-x^2 / 4t), the classical heat kernel.
/// Cauchy:   k(x,t) = t / (pi (t^2 + x^2)), the Poisson kernel of the half-Laplacian flow.
enum class KernelKind { Gaussian, Cauchy };

std::string_view to_string(KernelKind kind);

/// Value with an absolute error estimate. Every quadrature-backed result uses this.
struct NumericValue {
  double value = 0.0;
  double error = 0.0;
};

namespace kernels {

double gaussian_kernel(double x, double t);
double cauchy_kernel(double x, double t);
double kernel(KernelKind kind, double x, double t);

/// Analytic partial derivatives of the kernels, used for exact residuals of mixtures.
struct KernelJet {
  double value;
  double dt;
  double dx;
  double dxx;
};
KernelJet gaussian_jet(double x, double t);
KernelJet cauchy_jet(double x, double t);
KernelJet kernel_jet(KernelKind kind, double x, double t);

/// C(n, alpha) = 2^alpha Gamma((n+alpha)/2) / (pi^{n/2} |Gamma(-alpha/2)|), 0 < alpha < 2.
double frac_constant(int n, double alpha);

/// Compactifying change of variable for the improper tails of the PV integral.
/// Offsets h in [window, far_cutoff * scale] are integrated in theta with h = scale * tan(theta);
/// beyond that the map h = far_cutoff * scale / u on u in (0, 1] is used.
struct TailMap {
  double scale = 1.0;
  double far_cutoff = 1e4;
};

struct PvQuadrature {
  /// Initial Kronrod panels per integration segment.
  std::size_t node_count = 16;
  /// Half-width of the excised neighbourhood of the singular point.
  double symmetric_window = 1e-4;
  TailMap tail_map{};
  double abs_tol = 1e-10;
  std::size_t max_panels = 200000;

  void validate() const;
};

using ScalarField = std::function<double(double)>;

/// (-Delta)^{1/2} f(x) = (1/pi) PV int (f(x) - f(y)) / |x - y|^2 dy.
///
/// The integral is symmetrised to int_0^inf (2 f(x) - f(x+h) - f(x-h)) / h^2 dh. On
/// [0, window] the integrand is replaced by its Taylor expansion with f'' and f''''
/// from central second differences at window and window/2; the tails go through the
/// tangent map of `q.tail_map`. Throws NumericFailure when the estimate exceeds abs_tol.
NumericValue half_laplacian(const ScalarField& f, double x, const PvQuadrature& q = {});

}  // namespace kernels
}  // namespace harnack
