#pragma once

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "sspat/errors.hpp"
#include "sspat/linalg.hpp"
#include "sspat/matrix.hpp"
#include "sspat/rational.hpp"
#include "sspat/symbol.hpp"

namespace sspat {

using PatternMatrix = Matrix<Symbol>;

inline PatternMatrix zero_pattern(std::size_t rows, std::size_t cols) {
  return PatternMatrix(rows, cols, Symbol::Zero);
}

/// n x n pattern with * on the diagonal and 0 elsewhere.
inline PatternMatrix identity_pattern(std::size_t n) {
  PatternMatrix p = zero_pattern(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, i) = Symbol::Star;
  return p;
}

inline PatternMatrix pattern_add(const PatternMatrix& a, const PatternMatrix& b) {
  require_same_shape(a, b, "pattern_add");
  PatternMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

inline PatternMatrix pattern_mul(const PatternMatrix& a, const PatternMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("pattern_mul: inner dimensions differ (" + shape_string(a) + " * " +
                         shape_string(b) + ")");
  }
  PatternMatrix out = zero_pattern(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Symbol acc = Symbol::Zero;
      for (std::size_t k = 0; k < a.cols() && acc != Symbol::Quest; ++k) acc = acc + a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline PatternMatrix operator+(const PatternMatrix& a, const PatternMatrix& b) { return pattern_add(a, b); }
inline PatternMatrix operator*(const PatternMatrix& a, const PatternMatrix& b) { return pattern_mul(a, b); }

/// Pattern-class membership: Zero entries must be (numerically) zero, Star
/// entries nonzero, Quest entries are unconstrained. With exact rationals and
/// `tol == 0` this is the exact membership test.
template <typename T>
bool contains(const PatternMatrix& p, const Matrix<T>& m, double tol = 0.0) {
  require_same_shape(p, m, "contains");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto mag = detail::magnitude(m.data()[i]);
    const bool zero = mag <= decltype(mag)(tol);
    switch (p.data()[i]) {
      case Symbol::Zero:
        if (!zero) return false;
        break;
      case Symbol::Star:
        if (zero) return false;
        break;
      case Symbol::Quest:
        break;
    }
  }
  return true;
}

/// Symbolic pattern of a numeric matrix: * where nonzero, 0 where zero.
template <typename T>
PatternMatrix support_pattern(const Matrix<T>& m) {
  return map(m, [](const T& x) { return x == T(0) ? Symbol::Zero : Symbol::Star; });
}

/// Reads the whitespace-separated `0 * ?` text format, one row per line.
/// Blank lines and `#` comments are skipped.
inline PatternMatrix parse_pattern(std::istream& in) {
  std::vector<Symbol> entries;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    std::size_t count = 0;
    while (tokens >> tok) {
      auto sym = tok.size() == 1 ? symbol_from_char(tok[0]) : std::nullopt;
      if (!sym) throw ParseError("invalid pattern entry '" + tok + "'", line_no);
      entries.push_back(*sym);
      ++count;
    }
    if (count == 0) continue;
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError("row has " + std::to_string(count) + " entries, expected " +
                           std::to_string(cols),
                       line_no);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("empty pattern matrix", 0);
  return PatternMatrix(rows, cols, std::move(entries));
}

inline PatternMatrix parse_pattern(const std::string& text) {
  std::istringstream in(text);
  return parse_pattern(in);
}

inline std::string format_pattern(const PatternMatrix& p) {
  std::string out;
  for (std::size_t r = 0; r < p.rows(); ++r) {
    for (std::size_t c = 0; c < p.cols(); ++c) {
      if (c) out += ' ';
      out += to_char(p(r, c));
    }
    out += '\n';
  }
  return out;
}

/// Row strings such as {"*0", "?*"}, handy for literals in tests and fixtures.
inline PatternMatrix pattern_from_rows(const std::vector<std::string>& rows) {
  std::string text;
  for (const auto& r : rows) {
    for (char c : r) {
      text += c;
      text += ' ';
    }
    text += '\n';
  }
  return parse_pattern(text);
}

}  // namespace sspat
