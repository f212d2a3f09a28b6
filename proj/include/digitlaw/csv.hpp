#pragma once

// Minimal RFC-4180 CSV reader/writer: comma-delimited, double-quote quoting,
// embedded quotes doubled, quoted fields may span lines. Records are vectors
// of strings; interpretation belongs to the caller.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "digitlaw/errors.hpp"

namespace digitlaw {

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  /// Accepts both \n and \r\n line endings.
  bool next_record(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return false;
    ++record_number_;

    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    while (true) {
      if (c == std::istream::traits_type::eof()) {
        if (in_quotes) throw parse_error(record_number_, "unterminated quoted field");
        fields.push_back(std::move(field));
        return true;
      }
      char ch = static_cast<char>(c);
      if (in_quotes) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(ch);
        }
      } else if (ch == '"' && field.empty() && !field_was_quoted) {
        in_quotes = true;
        field_was_quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
      } else if (ch == '\n') {
        fields.push_back(std::move(field));
        return true;
      } else if (ch == '\r') {
        if (in_.peek() == '\n') in_.get();
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(ch);
      }
      c = in_.get();
    }
  }

  /// 1-based index of the record most recently returned.
  std::size_t record_number() const noexcept { return record_number_; }

 private:
  std::istream& in_;
  std::size_t record_number_ = 0;
};

inline bool csv_field_needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

inline void write_csv_field(std::ostream& out, const std::string& field) {
  if (!csv_field_needs_quoting(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

inline void write_csv_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    write_csv_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace digitlaw
