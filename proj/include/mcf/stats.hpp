#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace mcf {

// Two-sided normal quantiles used by the estimators.
inline constexpr double kZ99 = 2.5758293035489004;
inline constexpr double kZ95 = 1.959963984540054;

struct ProportionEstimate {
  std::size_t hits = 0;
  std::size_t trials = 0;
  double estimate = 0;
  double ci_lower = 0;
  double ci_upper = 1;

  double halfwidth() const { return (ci_upper - ci_lower) / 2; }
};

// Wilson score interval; well behaved at 0 and 1 hit fractions.
inline ProportionEstimate wilson_interval(std::size_t hits, std::size_t trials, double z = kZ99) {
  ProportionEstimate e;
  e.hits = hits;
  e.trials = trials;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double spread = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  e.estimate = p;
  e.ci_lower = std::max(0.0, centre - spread);
  e.ci_upper = std::min(1.0, centre + spread);
  return e;
}

}  // namespace mcf
