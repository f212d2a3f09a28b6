#pragma once

// Machine-readable report assembly. Every command's JSON output is built
// here so the schema lives in one place. Reports are deterministic: stable
// key order (insertion-ordered JSON), numbers canonicalized to 9 significant
// digits, and no timestamps other than those read from the dataset.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "digitlaw/chi_square.hpp"
#include "digitlaw/dataset.hpp"
#include "digitlaw/descriptive.hpp"
#include "digitlaw/sensitivity.hpp"
#include "digitlaw/version.hpp"

namespace digitlaw {

using ordered_json = nlohmann::ordered_json;

/// Round to 9 significant decimal digits. Canonicalizing before
/// serialization keeps report bytes independent of last-bit noise.
inline double round_sig9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

namespace detail {

inline ordered_json json_number(double v) { return round_sig9(v); }

inline ordered_json json_optional(const std::optional<double>& v) {
  if (!v.has_value()) return nullptr;
  return json_number(*v);
}

}  // namespace detail

inline ordered_json to_json(const DescriptiveSummary& s) {
  ordered_json j;
  j["n"] = s.n;
  j["mean"] = detail::json_number(s.mean);
  j["standard_error"] = detail::json_number(s.standard_error);
  j["median"] = detail::json_number(s.median);
  j["mode"] = detail::json_optional(s.mode);
  j["standard_deviation"] = detail::json_number(s.standard_deviation);
  j["skewness"] = detail::json_optional(s.skewness);
  j["kurtosis"] = detail::json_optional(s.kurtosis);
  j["range"] = detail::json_number(s.range);
  j["min"] = detail::json_number(s.min);
  j["max"] = detail::json_number(s.max);
  j["coefficient_of_variation"] = detail::json_optional(s.coefficient_of_variation);
  return j;
}

inline ordered_json to_json(const ChiSquareResult& r) {
  ordered_json j;
  j["statistic"] = detail::json_number(r.statistic);
  j["degrees_of_freedom"] = r.degrees_of_freedom;
  j["critical_value"] = detail::json_number(r.critical_value);
  j["alpha"] = detail::json_number(r.alpha);
  j["p_value"] = detail::json_number(r.p_value);
  j["reject_null"] = r.reject_null;
  return j;
}

inline ordered_json to_json(const ConformityVerdict& v) {
  ordered_json j;
  j["position"] = v.position.value();
  j["n_included"] = v.table.n_included;
  j["n_excluded"] = v.table.n_excluded;
  j["excluded"] = ordered_json{{"zero_value", v.table.excluded_zero_value},
                               {"too_few_digits", v.table.excluded_too_few_digits}};
  ordered_json digits = ordered_json::array();
  for (int d = v.position.min_digit(); d <= v.position.max_digit(); ++d) {
    digits.push_back(ordered_json{{"digit", d},
                                  {"observed_count", v.table.count(d)},
                                  {"observed_rel_freq", detail::json_number(v.table.relative_frequency(d))},
                                  {"expected_rel_freq", detail::json_number(v.expectation.prob(d))}});
  }
  j["digits"] = std::move(digits);
  j["chi_square"] = to_json(v.result);
  j["conclusion"] = to_string(v.conclusion);
  j["adequacy_warning"] = v.adequacy_warning.has_value() ? ordered_json(*v.adequacy_warning)
                                                         : ordered_json(nullptr);
  return j;
}

/// Single-column conformity report: descriptive panel plus one conformity
/// block per requested digit position.
inline ordered_json analyze_report(const std::string& dataset_id, const std::string& column,
                                   double alpha, std::size_t n_records,
                                   const std::vector<std::string>& warnings,
                                   const DescriptiveSummary& descriptive,
                                   const std::vector<ConformityVerdict>& verdicts) {
  ordered_json j;
  j["tool_version"] = version_string;
  j["command"] = "analyze";
  j["dataset_id"] = dataset_id;
  j["column"] = column;
  j["alpha"] = detail::json_number(alpha);
  j["n_records"] = n_records;
  j["warnings"] = warnings;
  j["descriptive"] = to_json(descriptive);
  ordered_json blocks = ordered_json::array();
  for (const auto& v : verdicts) blocks.push_back(to_json(v));
  j["conformity"] = std::move(blocks);
  return j;
}

struct ColumnAnalysis {
  DescriptiveSummary descriptive;
  std::vector<ConformityVerdict> verdicts;
};

/// Paired A1-vs-A2 report: four conformity blocks (two columns x two digit
/// positions by default), a descriptive panel per column, and the
/// coefficient-of-variation pair.
inline ordered_json compare_report(const std::string& dataset_id, double alpha,
                                   const PairedDataset& dataset, const ColumnAnalysis& a1,
                                   const ColumnAnalysis& a2) {
  ordered_json j;
  j["tool_version"] = version_string;
  j["command"] = "compare";
  j["dataset_id"] = dataset_id;
  j["alpha"] = detail::json_number(alpha);
  j["n_records"] = dataset.records.size();
  j["collection_window"] =
      ordered_json{{"start", dataset.window_start}, {"end", dataset.window_end}};
  j["warnings"] = dataset.warnings;
  auto column_block = [](const ColumnAnalysis& col) {
    ordered_json b;
    b["descriptive"] = to_json(col.descriptive);
    ordered_json blocks = ordered_json::array();
    for (const auto& v : col.verdicts) blocks.push_back(to_json(v));
    b["conformity"] = std::move(blocks);
    return b;
  };
  j["columns"] = ordered_json{{"count_a1", column_block(a1)}, {"count_a2", column_block(a2)}};
  j["coefficient_of_variation"] =
      ordered_json{{"count_a1", detail::json_optional(a1.descriptive.coefficient_of_variation)},
                   {"count_a2", detail::json_optional(a2.descriptive.coefficient_of_variation)}};
  return j;
}

template <typename T>
ordered_json trim_sweep_report_json(const std::string& dataset_id, const std::string& column,
                                    DigitPosition position, double alpha,
                                    const TrimSweepReport<T>& report) {
  ordered_json j;
  j["tool_version"] = version_string;
  j["command"] = "trim-sweep";
  j["dataset_id"] = dataset_id;
  j["column"] = column;
  j["position"] = position.value();
  j["alpha"] = detail::json_number(alpha);
  j["baseline"] = to_json(report.baseline);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["end"] = to_string(row.spec.end);
    r["fraction"] = detail::json_number(row.spec.fraction);
    r["removed_count"] = row.removed_count;
    ordered_json removed = ordered_json::array();
    for (const T& v : row.removed_values) {
      if constexpr (std::is_floating_point_v<T>) {
        removed.push_back(detail::json_number(v));
      } else {
        removed.push_back(v);
      }
    }
    r["removed_values"] = std::move(removed);
    r["conformity"] = to_json(row.verdict);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

/// Two-series plot file: expected versus observed relative frequency per
/// digit, six decimal places, one row per digit in the position's domain.
inline void write_plot_data(std::ostream& out, const ConformityVerdict& v) {
  out << "digit,expected_rel_freq,observed_rel_freq\n";
  char buf[64];
  for (int d = v.position.min_digit(); d <= v.position.max_digit(); ++d) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", d, v.expectation.prob(d),
                  v.table.relative_frequency(d));
    out << buf;
  }
}

/// Serialize a report exactly as the CLI does: two-space indent, trailing
/// newline. Kept as the single definition so byte-level goldens hold.
inline std::string render_report(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace digitlaw
