#pragma once

// Derived statistics reported next to budgets: trend, required rate of
// change, over/undershoot and distributional inequality.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pballoc::report {

/// (end - start) / start * 100, or empty (no baseline) when start is zero.
std::optional<double> change_pct(double start_value, double end_value) noexcept;

struct ReductionRate {
  double rate = 0.0;             ///< per year, e.g. -0.059 for -5.9 %/yr
  bool already_compliant = false;  ///< budget >= actual
};

/// Constant geometric rate r with actual (1 + r)^(target - base) = budget.
/// InvalidInput unless actual > 0, budget > 0 and target_year > base_year.
ReductionRate reduction_rate(double actual, double budget, int base_year, int target_year);

/// actual / budget. InvalidInput for a budget that is not positive.
double over_under(double actual, double budget);

struct LorenzPoint {
  double population_share;
  double value_share;
};

struct TopShare {
  double population_share;  ///< smallest top fraction of holders ...
  double value_share;       ///< ... that together hold at least this much
};

struct LorenzResult {
  std::vector<LorenzPoint> curve;  ///< starts at (0, 0), ends at (1, 1)
  double gini = 0.0;
  /// Smallest top fraction of entries holding half of the total.
  TopShare top_half;
};

/// Sorts ascending and integrates the Lorenz curve with the trapezoid rule:
/// Gini = 1 - sum_k (L_{k-1} + L_k) / n. InvalidInput for empty input,
/// negative or non-finite values, or an all-zero vector.
LorenzResult lorenz_gini(std::span<const double> values);

/// Fraction of the population (from the top) needed to reach `value_share` of the total.
TopShare top_share(std::span<const double> values, double value_share);

/// Fixed-point text rounded half to even at `decimals`; "-0" is printed as "0".
std::string round_fixed(double v, int decimals);

}  // namespace pballoc::report
