#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sspat {

/// Incompatible matrix shapes (sum, product, concatenation, membership).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A realization that was required to lie in a pattern class does not.
class MembershipError : public std::invalid_argument {
 public:
  MembershipError(const std::string& what, std::size_t row, std::size_t col)
      : std::invalid_argument(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// Malformed pattern or graph text. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Semantically invalid input such as an out-of-range vertex.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sspat
