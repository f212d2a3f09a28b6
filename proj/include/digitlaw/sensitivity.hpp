#pragma once

// Trimming sensitivity: delete the top/bottom ceil(fraction * n) values and
// re-run the conformity test, to see whether a verdict is carried by
// outliers. Ties at a trim boundary keep the earlier record in input order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "digitlaw/chi_square.hpp"
#include "digitlaw/errors.hpp"

namespace digitlaw {

enum class TrimEnd { top, bottom, both };

inline const char* to_string(TrimEnd e) {
  switch (e) {
    case TrimEnd::top: return "top";
    case TrimEnd::bottom: return "bottom";
    default: return "both";
  }
}

struct TrimSpec {
  TrimEnd end = TrimEnd::top;
  double fraction = 0.0;  // per trimmed end, in [0, 0.5)
};

template <typename T>
struct TrimResult {
  std::vector<T> kept;     // input order
  std::vector<T> removed;  // input order
};

namespace detail {

// Indices of the r largest (top) or r smallest (bottom) values. Within the
// boundary tie group the largest original indices go, so earlier records win.
template <typename T>
std::vector<std::size_t> removal_indices(std::span<const T> values, std::size_t r, bool top) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> out;
  out.reserve(r);
  if (top) {
    // Ascending stable order already puts later duplicates nearer the tail.
    for (std::size_t i = n - r; i < n; ++i) out.push_back(order[i]);
  } else {
    const T boundary = values[order[r - 1]];
    std::size_t below = 0;
    while (below < r && values[order[below]] < boundary) {
      out.push_back(order[below]);
      ++below;
    }
    std::size_t quota = r - below;
    std::vector<std::size_t> ties;
    for (std::size_t i = below; i < n && values[order[i]] == boundary; ++i) ties.push_back(order[i]);
    std::sort(ties.begin(), ties.end());
    for (std::size_t i = ties.size() - quota; i < ties.size(); ++i) out.push_back(ties[i]);
  }
  return out;
}

}  // namespace detail

/// Number of values a single trimmed end removes from a sample of size n.
inline std::size_t trim_removal_count(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
}

/// Split `values` into kept and removed per the spec. Throws input_error on
/// an empty collection or fraction outside [0, 0.5).
template <typename T>
TrimResult<T> trim(std::span<const T> values, TrimSpec spec) {
  if (values.empty()) throw input_error("trim: empty collection");
  if (!(spec.fraction >= 0.0 && spec.fraction < 0.5)) {
    throw input_error("trim: fraction must be in [0, 0.5) per end, got " +
                      std::to_string(spec.fraction));
  }
  const std::size_t n = values.size();
  const std::size_t r = trim_removal_count(n, spec.fraction);

  std::vector<bool> removed_mask(n, false);
  if (r > 0) {
    if (spec.end == TrimEnd::top || spec.end == TrimEnd::both) {
      for (std::size_t i : detail::removal_indices(values, std::min(r, n), true)) {
        removed_mask[i] = true;
      }
    }
    if (spec.end == TrimEnd::bottom || spec.end == TrimEnd::both) {
      // For "both" the bottom quota draws from what the top end left.
      std::vector<T> rest;
      std::vector<std::size_t> rest_index;
      for (std::size_t i = 0; i < n; ++i) {
        if (!removed_mask[i]) {
          rest.push_back(values[i]);
          rest_index.push_back(i);
        }
      }
      if (!rest.empty()) {
        const std::size_t rb = std::min(r, rest.size());
        for (std::size_t i : detail::removal_indices(std::span<const T>(rest), rb, false)) {
          removed_mask[rest_index[i]] = true;
        }
      }
    }
  }

  TrimResult<T> result;
  for (std::size_t i = 0; i < n; ++i) {
    (removed_mask[i] ? result.removed : result.kept).push_back(values[i]);
  }
  return result;
}

template <typename T>
struct TrimSweepRow {
  TrimSpec spec;
  std::size_t removed_count = 0;
  std::vector<T> removed_values;  // input order
  ConformityVerdict verdict;
};

template <typename T>
struct TrimSweepReport {
  ConformityVerdict baseline;
  std::vector<TrimSweepRow<T>> rows;
};

/// Baseline conformity plus one re-test per (end, fraction) combination.
/// The defaults mirror the usual 1% / 5% / 10% single-ended sweep.
template <typename T>
TrimSweepReport<T> trim_sweep(std::span<const T> values, std::span<const double> fractions,
                              std::span<const TrimEnd> ends, DigitPosition k, double alpha) {
  TrimSweepReport<T> report{conformity_test(values, k, alpha), {}};
  for (TrimEnd end : ends) {
    for (double fraction : fractions) {
      auto split = trim(values, TrimSpec{end, fraction});
      if (split.kept.empty()) throw data_error("trim_sweep: nothing kept after trimming");
      report.rows.push_back(TrimSweepRow<T>{TrimSpec{end, fraction}, split.removed.size(),
                                            std::move(split.removed),
                                            conformity_test(split.kept, k, alpha)});
    }
  }
  return report;
}

inline constexpr std::array<double, 3> kDefaultTrimFractions{0.01, 0.05, 0.10};
inline constexpr std::array<TrimEnd, 2> kDefaultTrimEnds{TrimEnd::top, TrimEnd::bottom};

}  // namespace digitlaw
