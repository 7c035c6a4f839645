#pragma once

#include <cstdint>
#include <cmath>

#include "harnack/ratio_analysis.hpp"

namespace harnack::testing {

// Small seeded generator for property sweeps.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53); }

  PointPair pair(double xlo = -5, double xhi = 5, double tlo = 0.1, double thi = 5) {
    return {{uniform(xlo, xhi), uniform(tlo, thi)}, {uniform(xlo, xhi), uniform(tlo, thi)}};
  }
  PointPair ordered_pair(double xlo = -5, double xhi = 5, double tlo = 0.1, double thi = 5) {
    PointPair p = pair(xlo, xhi, tlo, thi);
    if (p.p1.t > p.p2.t) p = p.swapped();
    return p;
  }

 private:
  std::uint64_t state_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace harnack::testing
