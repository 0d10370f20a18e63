#include "pballoc/report/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pballoc/error.hpp"
#include "pballoc/kernels.hpp"

namespace pballoc::report {

std::optional<double> change_pct(double start_value, double end_value) noexcept {
  if (start_value == 0.0) return std::nullopt;
  return (end_value - start_value) / start_value * 100.0;
}

ReductionRate reduction_rate(double actual, double budget, int base_year, int target_year) {
  if (!(actual > 0.0) || !(budget > 0.0) || !std::isfinite(actual) || !std::isfinite(budget)) {
    throw Error(ErrorKind::InvalidInput, "reduction rate needs positive actual and budget values");
  }
  if (target_year <= base_year) {
    throw Error(ErrorKind::InvalidInput, "target year " + std::to_string(target_year) +
                                             " is not after base year " + std::to_string(base_year));
  }
  ReductionRate out;
  out.rate = std::pow(budget / actual, 1.0 / static_cast<double>(target_year - base_year)) - 1.0;
  out.already_compliant = budget >= actual;
  return out;
}

double over_under(double actual, double budget) {
  if (!(budget > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "over/under ratio needs a positive budget");
  }
  return actual / budget;
}

namespace {

std::vector<double> sorted_checked(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "Lorenz curve of an empty vector");
  std::vector<double> v(values.begin(), values.end());
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorKind::InvalidInput, "Lorenz curve needs finite non-negative values");
    }
  }
  std::sort(v.begin(), v.end());
  return v;
}

TopShare top_share_sorted(const std::vector<double>& v, double total, double value_share) {
  double held = 0.0;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    held += v[n - 1 - k];
    if (held >= value_share * total) {
      return {static_cast<double>(k + 1) / static_cast<double>(n), held / total};
    }
  }
  return {1.0, 1.0};
}

}  // namespace

LorenzResult lorenz_gini(std::span<const double> values) {
  const auto v = sorted_checked(values);
  const double total = kernels::sum(v);
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidInput, "Lorenz curve of an all-zero vector");

  const std::size_t n = v.size();
  const double dn = static_cast<double>(n);
  LorenzResult out;
  out.curve.reserve(n + 1);
  out.curve.push_back({0.0, 0.0});
  // Running compensated prefix sums keep L_n at exactly 1 up to rounding.
  double cum = 0.0, comp = 0.0;
  std::vector<double> trapezoids;
  trapezoids.reserve(n);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = v[k] - comp;
    const double t = cum + y;
    comp = (t - cum) - y;
    cum = t;
    const double l = k + 1 == n ? 1.0 : cum / total;
    out.curve.push_back({static_cast<double>(k + 1) / dn, l});
    trapezoids.push_back(prev + l);
    prev = l;
  }
  out.gini = 1.0 - kernels::sum(trapezoids) / dn;
  out.top_half = top_share_sorted(v, total, 0.5);
  return out;
}

TopShare top_share(std::span<const double> values, double value_share) {
  const auto v = sorted_checked(values);
  const double total = kernels::sum(v);
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidInput, "top share of an all-zero vector");
  return top_share_sorted(v, total, value_share);
}

std::string round_fixed(double v, int decimals) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  // printf rounds the exact binary value under the current rounding mode, which
  // is round-half-even for ties.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace pballoc::report
