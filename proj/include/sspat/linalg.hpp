#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

#include "sspat/matrix.hpp"
#include "sspat/rational.hpp"

namespace sspat {

template <typename T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m(n, n, T(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_shape(a, b, "matrix sum");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_shape(a, b, "matrix difference");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions differ (" + shape_string(a) + " * " +
                         shape_string(b) + ")");
  }
  Matrix<T> out(a.rows(), b.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <typename T, typename S>
Matrix<T> scaled(const Matrix<T>& a, const S& s) {
  Matrix<T> out = a;
  for (auto& x : out.data()) x *= s;
  return out;
}

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
inline Rational magnitude(const Rational& x) { return abs(x); }

}  // namespace detail

/// Rank by row reduction with partial pivoting.
///
/// A pivot candidate whose magnitude is at most `tol` times the largest
/// initial magnitude counts as zero. With `Rational` entries and `tol == 0`
/// the result is the exact rank.
template <typename T>
std::size_t numeric_rank(Matrix<T> m, double tol = 0.0) {
  using Mag = decltype(detail::magnitude(std::declval<T>()));
  Mag scale(0);
  for (const auto& x : m.data()) {
    Mag a = detail::magnitude(x);
    if (a > scale) scale = a;
  }
  if (scale == Mag(0)) return 0;
  const Mag threshold = scale * Mag(tol);

  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t best = rank;
    Mag best_mag = detail::magnitude(m(rank, col));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      Mag a = detail::magnitude(m(r, col));
      if (a > best_mag) {
        best = r;
        best_mag = a;
      }
    }
    if (best_mag <= threshold) continue;
    if (best != rank)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(best, c), m(rank, c));
    const T pivot = m(rank, col);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col) == T(0)) continue;
      const T factor = m(r, col) / pivot;
      m(r, col) = T(0);
      for (std::size_t c = col + 1; c < m.cols(); ++c) m(r, c) -= factor * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

/// Exact determinant of a square rational matrix.
inline Rational determinant(Matrix<Rational> m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square " + shape_string(m));
  Rational det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Rational factor = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

}  // namespace sspat
