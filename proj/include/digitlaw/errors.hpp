#pragma once

#include <stdexcept>
#include <string>

namespace digitlaw {

/// Precondition or parameter violation: the caller handed us something the
/// operation is not defined for (bad digit/position pair, fraction >= 0.5,
/// rate <= 0, ...). Maps to CLI exit code 1.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// The data itself is unusable: missing file, malformed row, duplicate key,
/// column absent, nothing left after exclusions. Maps to CLI exit code 2.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// data_error carrying a 1-based row (and optionally column) location.
class parse_error : public data_error {
 public:
  parse_error(std::size_t row, std::size_t column, const std::string& reason)
      : data_error("row " + std::to_string(row) + ", column " + std::to_string(column) +
                   ": " + reason),
        row_(row),
        column_(column) {}

  parse_error(std::size_t row, const std::string& reason)
      : data_error("row " + std::to_string(row) + ": " + reason), row_(row), column_(0) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace digitlaw
