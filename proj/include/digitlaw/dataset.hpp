#pragma once

// Paired search-count dataset: schema, validation, query construction, and
// the pluggable count-provider contract with its fixture-backed
// implementation. Live search engines are deliberately out of scope; counts
// enter through files.
//
// Canonical CSV schema (header required, UTF-8, RFC-4180):
//   country,head_name,title,count_a1,count_a2,collected_at
// JSON mirrors it as an array of objects with the same keys.
// Fixture-provider file: two-column CSV `query,count`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "digitlaw/csv.hpp"
#include "digitlaw/errors.hpp"

namespace digitlaw {

/// One head-of-state row: both query counts plus collection metadata.
struct CountRecord {
  std::string country;
  std::string head_name;
  std::string title;  // president / king / emperor / emir / ...
  std::uint64_t count_a1 = 0;
  std::uint64_t count_a2 = 0;
  std::string collected_at;  // ISO-8601, kept verbatim

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

struct PairedDataset {
  std::vector<CountRecord> records;
  std::string source;
  std::string window_start;  // earliest collected_at
  std::string window_end;    // latest collected_at
  std::vector<std::string> warnings;

  std::vector<std::uint64_t> column(std::string_view name) const {
    std::vector<std::uint64_t> out;
    out.reserve(records.size());
    for (const auto& r : records) {
      if (name == "count_a1") {
        out.push_back(r.count_a1);
      } else if (name == "count_a2") {
        out.push_back(r.count_a2);
      } else {
        throw data_error("unknown column: " + std::string(name));
      }
    }
    return out;
  }
};

/// The paired query texts: a2 is a1 wrapped in double quotation marks,
/// character-identical otherwise.
struct QueryPair {
  std::string a1;
  std::string a2;
};

/// "<head_name> <title> of <country>", and the same text quoted.
inline QueryPair build_query(const CountRecord& record) {
  if (record.head_name.empty()) throw input_error("build_query: empty head_name");
  if (record.title.empty()) throw input_error("build_query: empty title");
  if (record.country.empty()) throw input_error("build_query: empty country");
  QueryPair q;
  q.a1 = record.head_name + " " + record.title + " of " + record.country;
  q.a2 = "\"" + q.a1 + "\"";
  return q;
}

namespace detail {

// Days since 1970-01-01 for a civil date; Howard Hinnant's algorithm.
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

/// Epoch seconds (UTC) for an ISO-8601 timestamp: date, optional "T" time,
/// optional "Z" or +-HH:MM offset. Returns nullopt when malformed.
inline std::optional<std::int64_t> parse_iso8601(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  std::size_t pos = 0;
  auto read_int = [&](std::size_t digits, int& out) -> bool {
    if (pos + digits > text.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char ch = text[pos + i];
      if (ch < '0' || ch > '9') return false;
      v = v * 10 + (ch - '0');
    }
    out = v;
    pos += digits;
    return true;
  };
  auto expect = [&](char ch) -> bool {
    if (pos < text.size() && text[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  };
  if (!read_int(4, y) || !expect('-') || !read_int(2, mo) || !expect('-') || !read_int(2, d)) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
  int offset_seconds = 0;
  if (pos < text.size()) {
    if (!(expect('T') || expect(' '))) return std::nullopt;
    if (!read_int(2, h) || !expect(':') || !read_int(2, mi)) return std::nullopt;
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      if (!read_int(2, s)) return std::nullopt;
    }
    if (h > 23 || mi > 59 || s > 60) return std::nullopt;
    if (pos < text.size()) {
      char sign = text[pos];
      if (sign == 'Z') {
        ++pos;
      } else if (sign == '+' || sign == '-') {
        ++pos;
        int oh = 0, om = 0;
        if (!read_int(2, oh)) return std::nullopt;
        if (pos < text.size() && text[pos] == ':') ++pos;
        if (!read_int(2, om)) return std::nullopt;
        offset_seconds = (oh * 3600 + om * 60) * (sign == '-' ? -1 : 1);
      }
    }
  }
  if (pos != text.size()) return std::nullopt;
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s - offset_seconds;
}

/// Strict non-negative integer parse; with `thousands` set, space and comma
/// group separators are stripped first.
inline std::optional<std::uint64_t> parse_count(std::string text, bool thousands) {
  if (thousands) {
    std::string cleaned;
    bool last_was_separator = true;  // leading separator is malformed
    for (char ch : text) {
      if (ch == ' ' || ch == ',') {
        if (last_was_separator) return std::nullopt;
        last_was_separator = true;
      } else {
        cleaned.push_back(ch);
        last_was_separator = false;
      }
    }
    if (last_was_separator && !cleaned.empty()) return std::nullopt;  // trailing separator
    text = std::move(cleaned);
  }
  if (text.empty() || text.size() > 20) return std::nullopt;
  std::uint64_t value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') return std::nullopt;
    std::uint64_t digit = static_cast<std::uint64_t>(ch - '0');
    if (value > (UINT64_MAX - digit) / 10) return std::nullopt;  // overflow
    value = value * 10 + digit;
  }
  return value;
}

inline void finalize_dataset(PairedDataset& ds) {
  if (ds.records.empty()) throw data_error(ds.source + ": dataset has no records");

  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::int64_t min_epoch = 0, max_epoch = 0;
  bool have_epoch = false;
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const auto& r = ds.records[i];
    auto key = std::make_pair(r.country, r.head_name);
    auto [it, inserted] = seen.emplace(key, i);
    if (!inserted) {
      throw data_error(ds.source + ": duplicate (country, head_name) pair: " + r.country + ", " +
                       r.head_name);
    }
    auto epoch = parse_iso8601(r.collected_at);
    if (!epoch.has_value()) {
      throw data_error(ds.source + ": record " + std::to_string(i + 1) +
                       ": collected_at is not ISO-8601: " + r.collected_at);
    }
    if (!have_epoch || *epoch < min_epoch) {
      min_epoch = *epoch;
      ds.window_start = r.collected_at;
    }
    if (!have_epoch || *epoch > max_epoch) {
      max_epoch = *epoch;
      ds.window_end = r.collected_at;
    }
    have_epoch = true;
    if (r.count_a2 > r.count_a1) {
      ds.warnings.push_back("record " + std::to_string(i + 1) + " (" + r.country +
                            "): count_a2 " + std::to_string(r.count_a2) +
                            " exceeds count_a1 " + std::to_string(r.count_a1));
    }
  }
  if (max_epoch - min_epoch > 12 * 3600) {
    ds.warnings.push_back("collection window spans " +
                          std::to_string((max_epoch - min_epoch) / 3600.0) +
                          " hours; the protocol wants under 12");
  }
}

}  // namespace detail

enum class DatasetFormat { csv, json };

struct LoadOptions {
  bool thousands_separators = false;
};

inline const std::vector<std::string> kDatasetHeader{"country",  "head_name", "title",
                                                     "count_a1", "count_a2",  "collected_at"};

inline PairedDataset load_dataset_csv(std::istream& in, const std::string& source,
                                      LoadOptions options = {}) {
  PairedDataset ds;
  ds.source = source;
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next_record(row)) throw data_error(source + ": empty file");
  if (row != kDatasetHeader) {
    throw parse_error(1, "expected header country,head_name,title,count_a1,count_a2,collected_at");
  }
  while (reader.next_record(row)) {
    const std::size_t line = reader.record_number();
    if (row.size() == 1 && row[0].empty()) continue;  // trailing blank line
    if (row.size() != kDatasetHeader.size()) {
      throw parse_error(line, "expected 6 fields, got " + std::to_string(row.size()));
    }
    CountRecord r;
    r.country = row[0];
    r.head_name = row[1];
    r.title = row[2];
    auto a1 = detail::parse_count(row[3], options.thousands_separators);
    if (!a1.has_value()) throw parse_error(line, 4, "count_a1 is not a non-negative integer: " + row[3]);
    auto a2 = detail::parse_count(row[4], options.thousands_separators);
    if (!a2.has_value()) throw parse_error(line, 5, "count_a2 is not a non-negative integer: " + row[4]);
    r.count_a1 = *a1;
    r.count_a2 = *a2;
    r.collected_at = row[5];
    ds.records.push_back(std::move(r));
  }
  detail::finalize_dataset(ds);
  return ds;
}

inline PairedDataset load_dataset_json(std::istream& in, const std::string& source,
                                       LoadOptions options = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw data_error(source + ": JSON parse error: " + e.what());
  }
  if (!doc.is_array()) throw data_error(source + ": expected a JSON array of records");
  PairedDataset ds;
  ds.source = source;
  std::size_t index = 0;
  for (const auto& item : doc) {
    ++index;
    if (!item.is_object()) {
      throw data_error(source + ": record " + std::to_string(index) + " is not an object");
    }
    CountRecord r;
    try {
      r.country = item.at("country").get<std::string>();
      r.head_name = item.at("head_name").get<std::string>();
      r.title = item.at("title").get<std::string>();
      r.collected_at = item.at("collected_at").get<std::string>();
      auto read_count = [&](const char* key) -> std::uint64_t {
        const auto& v = item.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_string()) {
          auto parsed = detail::parse_count(v.get<std::string>(), options.thousands_separators);
          if (parsed.has_value()) return *parsed;
        }
        throw data_error(source + ": record " + std::to_string(index) + ": " + key +
                         " is not a non-negative integer");
      };
      r.count_a1 = read_count("count_a1");
      r.count_a2 = read_count("count_a2");
    } catch (const nlohmann::json::out_of_range& e) {
      throw data_error(source + ": record " + std::to_string(index) + ": missing key (" +
                       e.what() + ")");
    }
    ds.records.push_back(std::move(r));
  }
  detail::finalize_dataset(ds);
  return ds;
}

inline PairedDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                                  LoadOptions options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open " + path.string());
  return format == DatasetFormat::csv ? load_dataset_csv(in, path.string(), options)
                                      : load_dataset_json(in, path.string(), options);
}

inline void save_dataset_csv(const PairedDataset& ds, std::ostream& out) {
  write_csv_record(out, kDatasetHeader);
  for (const auto& r : ds.records) {
    write_csv_record(out, {r.country, r.head_name, r.title, std::to_string(r.count_a1),
                           std::to_string(r.count_a2), r.collected_at});
  }
}

inline void save_dataset_json(const PairedDataset& ds, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : ds.records) {
    doc.push_back({{"country", r.country},
                   {"head_name", r.head_name},
                   {"title", r.title},
                   {"count_a1", r.count_a1},
                   {"count_a2", r.count_a2},
                   {"collected_at", r.collected_at}});
  }
  out << doc.dump(2) << '\n';
}

inline void save_dataset(const PairedDataset& ds, const std::filesystem::path& path,
                         DatasetFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write " + path.string());
  format == DatasetFormat::csv ? save_dataset_csv(ds, out) : save_dataset_json(ds, out);
}

/// Single-column sample file (header `count`), as written by the generator
/// CLI. Values may be reals; when every value is a plain integer the exact
/// integer column is provided too.
struct GenericColumn {
  std::vector<double> reals;
  std::optional<std::vector<std::uint64_t>> integers;
};

inline GenericColumn load_count_column(std::istream& in, const std::string& source) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next_record(row)) throw data_error(source + ": empty file");
  if (row.size() != 1 || row[0] != "count") {
    throw parse_error(1, "expected single-column header `count`");
  }
  GenericColumn col;
  std::vector<std::uint64_t> integers;
  bool all_integral = true;
  while (reader.next_record(row)) {
    const std::size_t line = reader.record_number();
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 1) throw parse_error(line, "expected a single field");
    const std::string& text = row[0];
    if (all_integral) {
      auto as_int = detail::parse_count(text, false);
      if (as_int.has_value()) {
        integers.push_back(*as_int);
      } else {
        all_integral = false;
      }
    }
    try {
      std::size_t consumed = 0;
      double v = std::stod(text, &consumed);
      if (consumed != text.size() || !std::isfinite(v) || v < 0.0) {
        throw parse_error(line, "count is not a non-negative number: " + text);
      }
      col.reals.push_back(v);
    } catch (const std::invalid_argument&) {
      throw parse_error(line, "count is not a number: " + text);
    } catch (const std::out_of_range&) {
      throw parse_error(line, "count is out of range: " + text);
    }
  }
  if (col.reals.empty()) throw data_error(source + ": no values");
  if (all_integral) col.integers = std::move(integers);
  return col;
}

inline GenericColumn load_count_column(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open " + path.string());
  return load_count_column(in, path.string());
}

/// Count source: maps a query text to the engine's reported result count.
/// Implementations must throw data_error for unknown queries; silence could
/// be mistaken for a legitimate zero count.
class CountProvider {
 public:
  virtual ~CountProvider() = default;
  virtual std::uint64_t count_for(const std::string& query) = 0;
};

/// Provider backed by a two-column CSV fixture `query,count`.
class FixtureProvider : public CountProvider {
 public:
  static FixtureProvider from_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("provider unavailable: cannot open " + path.string());
    FixtureProvider p;
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next_record(row)) throw data_error(path.string() + ": empty fixture");
    if (row != std::vector<std::string>{"query", "count"}) {
      throw parse_error(1, "expected header query,count");
    }
    while (reader.next_record(row)) {
      const std::size_t line = reader.record_number();
      if (row.size() == 1 && row[0].empty()) continue;
      if (row.size() != 2) throw parse_error(line, "expected 2 fields");
      auto count = detail::parse_count(row[1], false);
      if (!count.has_value()) throw parse_error(line, 2, "count is not a non-negative integer");
      p.table_[row[0]] = *count;
    }
    return p;
  }

  std::uint64_t count_for(const std::string& query) override {
    auto it = table_.find(query);
    if (it == table_.end()) throw data_error("unknown query: " + query);
    return it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, std::uint64_t> table_;
};

struct FetchedCounts {
  std::uint64_t count_a1 = 0;
  std::uint64_t count_a2 = 0;
  std::string collected_at;  // the single session timestamp both counts share
};

/// Fetch both counts of a query pair under one session timestamp.
inline FetchedCounts fetch_counts(CountProvider& provider, const QueryPair& query,
                                  std::string collected_at) {
  FetchedCounts f;
  f.count_a1 = provider.count_for(query.a1);
  f.count_a2 = provider.count_for(query.a2);
  f.collected_at = std::move(collected_at);
  return f;
}

}  // namespace digitlaw
