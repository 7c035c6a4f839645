#pragma once

#include <cstddef>
#include <functional>

namespace harnack::quadrature {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  std::size_t initial_panels = 16;
  std::size_t max_panels = 20000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over the finite interval [a, b].
///
/// Panels are bisected worst-first until the summed |K15 - G7| estimate falls below
/// abs_tol or the panel budget is spent. The target is floored at a few ulps of the
/// integral of |f| so that roundoff alone can never force non-convergence.
/// Never throws on non-convergence; inspect Estimate::converged.
Estimate integrate(const Integrand& f, double a, double b, const AdaptiveOptions& opts = {});

/// Single 15-point Kronrod panel with its embedded 7-point Gauss estimate.
struct PanelEstimate {
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_kronrod = 0.0;
};
PanelEstimate kronrod_panel(const Integrand& f, double a, double b);

}  // namespace harnack::quadrature
