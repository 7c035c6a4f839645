#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harnack/ratio_analysis.hpp"
#include "harnack/solutions.hpp"

namespace harnack {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct SweepConfig {
  std::uint64_t seed = 0;
  std::size_t n_pairs = 0;
  Interval x_range{-5.0, 5.0};
  Interval t_range{0.1, 5.0};
  double slack = 1e-10;

  void validate() const;
};

enum class PairStatus { Ok, Violation, NotApplicable, Error };

std::string_view to_string(PairStatus status);

struct PairOutcome {
  std::size_t index = 0;
  PointPair pair{};
  double ratio = 0.0;
  double lower = 0.0;
  std::optional<double> upper;
  double lower_margin = 0.0;
  std::optional<double> upper_margin;
  /// Propagated evaluation error of the ratio; widens the violation threshold.
  double error_estimate = 0.0;
  PairStatus status = PairStatus::Ok;
  std::string message;
};

struct VerificationReport {
  std::string bound;  ///< "sharp" or "hadamard_pini"
  double slack = 0.0;
  std::size_t n_checked = 0;
  double min_lower_margin = 0.0;
  double min_upper_margin = 0.0;
  std::vector<PairOutcome> rows;
  std::vector<std::size_t> violations;  ///< indices into rows
  std::optional<std::size_t> worst_case;  ///< index into rows

  bool compliant() const { return violations.empty(); }
};

namespace verify {

/// Counter-based stream: pair i depends only on (seed, i).
std::vector<PointPair> random_pairs(const SweepConfig& cfg);
PointPair random_pair(const SweepConfig& cfg, std::size_t index);

/// Grid-and-refine extremisation of the kernel ratio over y = c + L tan(theta).
///
/// Each extremum of the uniform theta-grid is refined by golden-section search in theta,
/// so brackets may extend to +-infinity, until |dy| <= 1e-12 (1 + |y|). Refined values are
/// compared with the exact |y| -> infinity limit (t2 - tau)/(t1 - tau); an extremum not
/// beating the limit is reported AtInfinity.
RatioExtrema brute_force_extrema(const PointPair& pair, double tau, std::size_t resolution = 4096);

/// Sharp-bracket compliance on each pair. The bracket holds for positive Cauchy-kind
/// solutions; Gaussian-kind models are accepted and typically violate it.
VerificationReport harnack_compliance(const SolutionModel& model, std::span<const PointPair> pairs, double slack,
                                      unsigned threads = 1);

/// Classical lower bound compliance (holds for Gaussian-kind solutions); pairs are ordered
/// by time first, equal-time pairs are not applicable.
VerificationReport hadamard_pini_compliance(const SolutionModel& model, std::span<const PointPair> pairs,
                                            double slack, unsigned threads = 1);

struct CounterexampleReport {
  PointPair pair;
  double x_low;
  double x_high;
  double realized_upper;   ///< u(p2)/u(p1) for u = k(x - x_high, t)
  double printed_upper;    ///< (t1/t2) C^*
  double corrected_upper;  ///< (t2/t1) C^*
  double realized_lower;   ///< u(p2)/u(p1) for u = k(x - x_low, t)
  double printed_lower;    ///< (t1/t2) C_*
  double corrected_lower;  ///< (t2/t1) C_*
  bool printed_upper_violated;
  bool corrected_compliant;
};

/// The pair ((0,1),(1,2)) with translated-kernel solutions: the bracket with prefactor t1/t2
/// is violated from above, the one with t2/t1 is attained on both sides.
CounterexampleReport printed_prefactor_counterexample();

struct SharpnessResult {
  double low_residual;
  double high_residual;
  bool low_limit_only;   ///< lower bound only approached as the source recedes to infinity
  bool high_limit_only;
};

SharpnessResult sharpness_report(const PointPair& pair);

/// HARNACK_THREADS if set (must be a positive integer), else the hardware concurrency.
unsigned sweep_threads_from_env();

}  // namespace verify
}  // namespace harnack
