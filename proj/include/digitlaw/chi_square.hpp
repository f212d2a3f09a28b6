#pragma once

// Chi-square goodness-of-fit of an observed digit-frequency table against an
// expected probability vector, plus the composed conformity test: tally the
// digits, compare with the Benford expectation, accept or reject.
//
// Expected counts are the exact real-valued n * p (never rounded), so a
// table that equals its own expectation scores exactly zero.

#include <cmath>
#include <optional>
#include <ranges>
#include <span>
#include <string>

#include "digitlaw/digits.hpp"
#include "digitlaw/errors.hpp"
#include "digitlaw/special_functions.hpp"

namespace digitlaw {

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double critical_value = 0.0;
  double alpha = 0.0;
  double p_value = 1.0;
  bool reject_null = false;
};

/// Goodness-of-fit statistic of `table` against an explicit probability
/// vector aligned with the table's digit domain (probs[0] is the table's
/// smallest digit). The vector must sum to 1 within 1e-6. A category with
/// zero expectation contributes nothing when its observed count is also zero
/// and is an input error otherwise.
inline ChiSquareResult chi_square_statistic(const DigitFrequencyTable& table,
                                            std::span<const double> probs, double alpha) {
  if (table.n_included == 0) throw input_error("chi_square_statistic: empty table");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw input_error("chi_square_statistic: alpha must be in (0, 1)");
  }
  const int domain = table.position.domain_size();
  if (static_cast<int>(probs.size()) != domain) {
    throw input_error("chi_square_statistic: expectation has " + std::to_string(probs.size()) +
                      " categories, table domain has " + std::to_string(domain));
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw input_error("chi_square_statistic: negative probability");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-6) {
    throw input_error("chi_square_statistic: probabilities sum to " + std::to_string(total));
  }

  const double n = static_cast<double>(table.n_included);
  double statistic = 0.0;
  for (int d = table.position.min_digit(); d <= table.position.max_digit(); ++d) {
    const double expected = n * probs[static_cast<std::size_t>(d - table.position.min_digit())];
    const double observed = static_cast<double>(table.count(d));
    if (expected == 0.0) {
      if (observed != 0.0) {
        throw input_error("chi_square_statistic: observed count in a zero-expectation category");
      }
      continue;
    }
    const double diff = observed - expected;
    statistic += diff * diff / expected;
  }

  ChiSquareResult r;
  r.statistic = statistic;
  r.degrees_of_freedom = domain - 1;
  r.alpha = alpha;
  r.critical_value = chi_square_critical(r.degrees_of_freedom, alpha);
  r.p_value = chi_square_p_value(statistic, r.degrees_of_freedom);
  r.reject_null = statistic > r.critical_value;
  return r;
}

/// Same test against a positional Benford expectation. The expectation must
/// be for the table's digit position.
inline ChiSquareResult chi_square_statistic(const DigitFrequencyTable& table,
                                            const BenfordExpectation& expectation, double alpha) {
  if (expectation.position != table.position) {
    throw input_error("chi_square_statistic: expectation position " +
                      std::to_string(expectation.position.value()) + " does not match table position " +
                      std::to_string(table.position.value()));
  }
  std::span<const double> probs(expectation.probs.data() + table.position.min_digit(),
                                static_cast<std::size_t>(table.position.domain_size()));
  return chi_square_statistic(table, probs, alpha);
}

enum class Conclusion { conforms, deviates };

inline const char* to_string(Conclusion c) {
  return c == Conclusion::conforms ? "conforms" : "deviates";
}

/// Outcome of one digit-position conformity test, carrying everything the
/// decision was made from.
struct ConformityVerdict {
  DigitPosition position;
  DigitFrequencyTable table;
  BenfordExpectation expectation;
  ChiSquareResult result;
  Conclusion conclusion = Conclusion::conforms;
  /// Set when the included sample is smaller than 5 per digit category (the
  /// usual adequacy rule of thumb); the test still runs so small fixtures
  /// stay usable.
  std::optional<std::string> adequacy_warning;
};

inline ConformityVerdict conformity_verdict_from_table(DigitFrequencyTable table, double alpha) {
  if (table.n_included == 0) {
    throw data_error("conformity_test: no included values after exclusions");
  }
  BenfordExpectation expectation = benford_expected(table.position);
  ChiSquareResult result = chi_square_statistic(table, expectation, alpha);
  ConformityVerdict v{table.position, std::move(table), std::move(expectation), result,
                      result.reject_null ? Conclusion::deviates : Conclusion::conforms,
                      std::nullopt};
  const auto needed = static_cast<std::uint64_t>(5 * v.position.domain_size());
  if (v.table.n_included < needed) {
    v.adequacy_warning = "only " + std::to_string(v.table.n_included) +
                         " included values; the adequacy rule wants 5 per digit category (" +
                         std::to_string(needed) + ")";
  }
  return v;
}

/// Tally position-k digits of `values` and test them against the Benford
/// expectation at significance `alpha`.
template <std::ranges::input_range R>
  requires CountValue<std::ranges::range_value_t<R>>
ConformityVerdict conformity_test(R&& values, DigitPosition k, double alpha) {
  return conformity_verdict_from_table(digit_frequency_table(values, k), alpha);
}

}  // namespace digitlaw
