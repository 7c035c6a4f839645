#include "harnack/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace harnack::quadrature {
namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  PanelEstimate est;
  double error() const { return std::abs(est.kronrod - est.gauss); }
  bool operator<(const Panel& other) const { return error() < other.error(); }
};

}  // namespace

PanelEstimate kronrod_panel(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_k = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_k += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {kronrod * half, gauss * half, abs_k * std::abs(half)};
}

Estimate integrate(const Integrand& f, double a, double b, const AdaptiveOptions& opts) {
  Estimate out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const std::size_t n0 = std::max<std::size_t>(1, opts.initial_panels);
  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
    const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
    Panel p{lo, hi, kronrod_panel(f, lo, hi)};
    total += p.est.kronrod;
    total_err += p.error();
    total_abs += p.est.abs_kronrod;
    heap.push(p);
  }
  out.evaluations = 15 * n0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto target = [&] { return std::max(opts.abs_tol, 64.0 * eps * total_abs); };

  while (total_err > target() && heap.size() < opts.max_panels) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot bisect further
    heap.pop();
    Panel left{worst.a, mid, kronrod_panel(f, worst.a, mid)};
    Panel right{mid, worst.b, kronrod_panel(f, mid, worst.b)};
    out.evaluations += 30;
    total += left.est.kronrod + right.est.kronrod - worst.est.kronrod;
    total_err += left.error() + right.error() - worst.error();
    total_abs += left.est.abs_kronrod + right.est.abs_kronrod - worst.est.abs_kronrod;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from scratch to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  total_abs = 0.0;
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    total += p.est.kronrod;
    total_err += p.error();
    total_abs += p.est.abs_kronrod;
  }
  out.value = total;
  out.error = total_err;
  out.converged = std::isfinite(total) && total_err <= target();
  return out;
}

}  // namespace harnack::quadrature
