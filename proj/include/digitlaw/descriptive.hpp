#pragma once

// Descriptive-statistics panel in the spreadsheet "Data Analysis" layout:
// mean, standard error, median, mode, sample SD, bias-corrected sample
// skewness and excess kurtosis, range, min, max, coefficient of variation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <ranges>
#include <vector>

#include "digitlaw/errors.hpp"

namespace digitlaw {

struct DescriptiveSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double median = 0.0;
  std::optional<double> mode;  // smallest among the most frequent; absent if all distinct
  double standard_deviation = 0.0;  // n-1 denominator
  std::optional<double> skewness;   // absent when n < 3 or SD == 0
  std::optional<double> kurtosis;   // sample excess; absent when n < 4 or SD == 0
  double range = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::optional<double> coefficient_of_variation;  // SD / mean; absent when mean == 0
};

inline double standard_error_of(double standard_deviation, std::size_t n) {
  if (n == 0) throw input_error("standard_error_of: n must be positive");
  return standard_deviation / std::sqrt(static_cast<double>(n));
}

inline double coefficient_of_variation_of(double standard_deviation, double mean) {
  if (mean == 0.0) throw input_error("coefficient_of_variation_of: mean is zero");
  return standard_deviation / mean;
}

/// Full panel over a collection of values. Throws input_error for n < 2
/// (the sample SD needs at least two points).
template <std::ranges::input_range R>
  requires std::convertible_to<std::ranges::range_value_t<R>, double>
DescriptiveSummary descriptive_summary(R&& values) {
  std::vector<double> x;
  for (auto&& v : values) x.push_back(static_cast<double>(v));
  const std::size_t n = x.size();
  if (n < 2) throw input_error("descriptive_summary: need at least 2 values");

  DescriptiveSummary s;
  s.n = n;

  double sum = 0.0;
  for (double v : x) sum += v;
  s.mean = sum / static_cast<double>(n);

  double m2 = 0.0;
  for (double v : x) m2 += (v - s.mean) * (v - s.mean);
  s.standard_deviation = std::sqrt(m2 / static_cast<double>(n - 1));
  s.standard_error = standard_error_of(s.standard_deviation, n);

  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.range = s.max - s.min;
  s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  std::map<double, std::size_t> multiplicity;
  for (double v : sorted) ++multiplicity[v];
  std::size_t best = 1;
  for (auto& [value, count] : multiplicity) {
    if (count > best) {
      best = count;
      s.mode = value;  // map iterates ascending, so first maximal count is the smallest value
    }
  }

  const double sd = s.standard_deviation;
  if (sd > 0.0) {
    double z3 = 0.0, z4 = 0.0;
    for (double v : x) {
      double z = (v - s.mean) / sd;
      z3 += z * z * z;
      z4 += z * z * z * z;
    }
    const double dn = static_cast<double>(n);
    if (n >= 3) {
      s.skewness = dn / ((dn - 1.0) * (dn - 2.0)) * z3;
    }
    if (n >= 4) {
      s.kurtosis = dn * (dn + 1.0) / ((dn - 1.0) * (dn - 2.0) * (dn - 3.0)) * z4 -
                   3.0 * (dn - 1.0) * (dn - 1.0) / ((dn - 2.0) * (dn - 3.0));
    }
  }

  if (s.mean != 0.0) {
    s.coefficient_of_variation = coefficient_of_variation_of(sd, s.mean);
  }
  return s;
}

}  // namespace digitlaw
