#pragma once

// Significant-digit extraction and theoretical digit-law expectations.
//
// The k-th significant digit of a positive number x is the k-th digit of its
// normalized decimal representation (leading zeros dropped). Benford's law
// gives the probability of digit v at position k:
//
//   k = 1:  p = log10(1 + 1/v),                         v in 1..9
//   k >= 2: p = sum_{j=10^(k-2)}^{10^(k-1)-1}
//               log10(1 + 1/(10j + v)),                 v in 0..9
//
// The distribution flattens toward uniform as k grows.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ranges>
#include <type_traits>

#include "digitlaw/errors.hpp"

namespace digitlaw {

/// 1-based significant-digit position. Position 1 is the leading digit.
class DigitPosition {
 public:
  explicit DigitPosition(int k) : k_(k) {
    if (k < 1) throw input_error("digit position must be >= 1, got " + std::to_string(k));
  }

  int value() const noexcept { return k_; }

  /// Smallest digit possible at this position (1 leads, 0 cannot).
  int min_digit() const noexcept { return k_ == 1 ? 1 : 0; }
  int max_digit() const noexcept { return 9; }
  int domain_size() const noexcept { return 10 - min_digit(); }

  bool contains(int digit) const noexcept { return digit >= min_digit() && digit <= 9; }

  friend bool operator==(DigitPosition a, DigitPosition b) noexcept { return a.k_ == b.k_; }
  friend bool operator!=(DigitPosition a, DigitPosition b) noexcept { return a.k_ != b.k_; }

 private:
  int k_;
};

namespace detail {

inline constexpr double kInvLn10 = 0.43429448190325182765;  // 1/ln(10)

/// Direct evaluation of the position-k law, Kahan-compensated.
/// Cost is 9*10^(k-2) log1p calls; intended for k <= 7.
inline double benford_probability_direct(int digit, int k) {
  if (k == 1) return std::log10(1.0 + 1.0 / digit);
  double lo = std::pow(10.0, k - 2);
  double hi = std::pow(10.0, k - 1);
  double sum = 0.0, comp = 0.0;
  for (double j = lo; j < hi; j += 1.0) {
    double term = std::log1p(1.0 / (10.0 * j + digit)) * kInvLn10;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Asymptotic tails of the polygamma functions, valid for large z. Used to
// collapse sum_j log1p(1/(10j+v)) = S1 - S2/2 + S3/3 - ... with
// S_m = sum_j (10j+v)^-m expressed through psi/psi'/psi'' differences.
inline double digamma_diff_large(double z0, double z1) {
  // psi(z1) - psi(z0) for z1 = 10*z0 (+ same fractional offset), z0 >= 1e5.
  auto tail = [](double z) { return -1.0 / (2.0 * z) - 1.0 / (12.0 * z * z) + 1.0 / (120.0 * z * z * z * z); };
  double c0 = z0 - std::floor(z0);
  double c1 = z1 - std::floor(z1);
  // ln(z1/z0) with z1/z0 ~ 10: write as ln10 + log1p terms to avoid widening error.
  double ln_ratio = std::log(std::floor(z1) / std::floor(z0)) + std::log1p(c1 / std::floor(z1)) -
                    std::log1p(c0 / std::floor(z0));
  return ln_ratio + tail(z1) - tail(z0);
}

inline double trigamma_large(double z) {
  return 1.0 / z + 1.0 / (2.0 * z * z) + 1.0 / (6.0 * z * z * z) - 1.0 / (30.0 * z * z * z * z * z);
}

/// Position-k law through polygamma asymptotics; accurate for k >= 6
/// (absolute error far below 1e-14) and O(1) in k.
inline double benford_probability_asymptotic(int digit, int k) {
  double j0 = std::pow(10.0, k - 2);
  double j1 = std::pow(10.0, k - 1);
  double c = digit / 10.0;
  double z0 = j0 + c, z1 = j1 + c;
  double s1 = 0.1 * digamma_diff_large(z0, z1);
  double s2 = 0.01 * (trigamma_large(z0) - trigamma_large(z1));
  // S3 = sum (10j+v)^-3; leading tail term of -psi''/2 suffices at this scale.
  double s3 = 0.001 * 0.5 * (1.0 / (z0 * z0) - 1.0 / (z1 * z1));
  return (s1 - s2 / 2.0 + s3 / 3.0) * kInvLn10;
}

inline constexpr int kDirectSummationMaxPosition = 7;

inline constexpr std::array<std::uint64_t, 20> kPow10{1ull,
                                                      10ull,
                                                      100ull,
                                                      1000ull,
                                                      10000ull,
                                                      100000ull,
                                                      1000000ull,
                                                      10000000ull,
                                                      100000000ull,
                                                      1000000000ull,
                                                      10000000000ull,
                                                      100000000000ull,
                                                      1000000000000ull,
                                                      10000000000000ull,
                                                      100000000000000ull,
                                                      1000000000000000ull,
                                                      10000000000000000ull,
                                                      100000000000000000ull,
                                                      1000000000000000000ull,
                                                      10000000000000000000ull};

inline int decimal_digit_count(std::uint64_t value) {
  int n = 1;
  while (n < 20 && value >= kPow10[n]) ++n;
  return n;
}

}  // namespace detail

/// Probability of digit `digit` at significant-digit position `k` under the
/// Benford distribution. Throws input_error for a digit outside the
/// position's domain (0 is impossible at position 1).
inline double benford_probability(int digit, DigitPosition k) {
  if (!k.contains(digit)) {
    throw input_error("digit " + std::to_string(digit) + " is not valid at position " +
                      std::to_string(k.value()));
  }
  if (k.value() <= detail::kDirectSummationMaxPosition) {
    return detail::benford_probability_direct(digit, k.value());
  }
  return detail::benford_probability_asymptotic(digit, k.value());
}

/// Expected digit-probability vector for one significant-digit position.
/// probs[d] indexes by digit value; probs[0] stays 0 for position 1.
struct BenfordExpectation {
  DigitPosition position;
  std::array<double, 10> probs{};

  double prob(int digit) const {
    if (!position.contains(digit)) {
      throw input_error("digit " + std::to_string(digit) + " is not valid at position " +
                        std::to_string(position.value()));
    }
    return probs[static_cast<std::size_t>(digit)];
  }
};

inline BenfordExpectation benford_expected(DigitPosition k) {
  BenfordExpectation e{k, {}};
  for (int d = k.min_digit(); d <= k.max_digit(); ++d) {
    e.probs[static_cast<std::size_t>(d)] = benford_probability(d, k);
  }
  return e;
}

/// k-th significant digit of a non-negative integer. Empty when the value is
/// zero (no significant digits) or has fewer than k digits.
inline std::optional<int> significant_digit(std::uint64_t value, DigitPosition k) {
  if (value == 0) return std::nullopt;
  int n = detail::decimal_digit_count(value);
  if (k.value() > n) return std::nullopt;
  return static_cast<int>((value / detail::kPow10[static_cast<std::size_t>(n - k.value())]) % 10);
}

/// k-th significant digit of a real value's decimal representation, taken
/// from the magnitude normalized into [1, 10). The representation is rounded
/// (half-even) at the 15th significant digit, so binary artifacts such as
/// 6.9999999999999996 read as 7.0; positions past 15 are treated as absent.
/// Throws input_error for non-finite input.
inline std::optional<int> significant_digit(double value, DigitPosition k) {
  if (!std::isfinite(value)) throw input_error("significant_digit: non-finite value");
  double v = std::fabs(value);
  if (v == 0.0) return std::nullopt;
  if (k.value() > 15) return std::nullopt;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.14e", v);  // 15 significant digits, correctly rounded
  // buf is "d.dddddddddddddde[+-]XX"; digit 1 at buf[0], digits 2..15 after the point.
  return (k.value() == 1) ? buf[0] - '0' : buf[k.value()] - '0';
}

template <typename T>
concept CountValue = (std::unsigned_integral<std::remove_cvref_t<T>> &&
                      !std::same_as<std::remove_cvref_t<T>, bool>) ||
                     std::floating_point<std::remove_cvref_t<T>>;

/// Observed absolute digit frequencies at one position, with exclusion
/// bookkeeping. sum(observed) == n_included and
/// n_included + n_excluded == size of the input collection.
struct DigitFrequencyTable {
  DigitPosition position;
  std::array<std::uint64_t, 10> observed{};
  std::uint64_t n_included = 0;
  std::uint64_t n_excluded = 0;
  std::uint64_t excluded_zero_value = 0;
  std::uint64_t excluded_too_few_digits = 0;

  std::uint64_t count(int digit) const {
    if (!position.contains(digit)) {
      throw input_error("digit " + std::to_string(digit) + " is not valid at position " +
                        std::to_string(position.value()));
    }
    return observed[static_cast<std::size_t>(digit)];
  }

  /// observed / n_included; requires n_included > 0.
  double relative_frequency(int digit) const {
    if (n_included == 0) throw input_error("relative_frequency: empty table");
    return static_cast<double>(count(digit)) / static_cast<double>(n_included);
  }

  friend bool operator==(const DigitFrequencyTable& a, const DigitFrequencyTable& b) {
    return a.position == b.position && a.observed == b.observed && a.n_included == b.n_included &&
           a.n_excluded == b.n_excluded && a.excluded_zero_value == b.excluded_zero_value &&
           a.excluded_too_few_digits == b.excluded_too_few_digits;
  }
};

/// Tally the position-k significant digits of a collection of counts.
/// Zero values and values with fewer than k significant digits are excluded
/// and recorded by reason. Throws input_error on an empty collection.
template <std::ranges::input_range R>
  requires CountValue<std::ranges::range_value_t<R>>
DigitFrequencyTable digit_frequency_table(R&& values, DigitPosition k) {
  DigitFrequencyTable table{k};
  bool any = false;
  for (auto&& raw : values) {
    any = true;
    auto d = significant_digit(raw, k);
    if (d.has_value()) {
      ++table.observed[static_cast<std::size_t>(*d)];
      ++table.n_included;
    } else {
      ++table.n_excluded;
      bool is_zero;
      if constexpr (std::floating_point<std::ranges::range_value_t<R>>) {
        is_zero = raw == 0.0;
      } else {
        is_zero = raw == 0;
      }
      if (is_zero) {
        ++table.excluded_zero_value;
      } else {
        ++table.excluded_too_few_digits;
      }
    }
  }
  if (!any) throw input_error("digit_frequency_table: empty collection");
  return table;
}

}  // namespace digitlaw
