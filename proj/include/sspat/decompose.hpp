#pragma once

#include <utility>

#include "sspat/errors.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rational.hpp"

namespace sspat {

/// Splits a member C of P(A + B) into members of P(A) and P(B) whose exact
/// sum is C. Case table per entry (a, b are the pattern symbols):
///
///   C_ij == 0:  a, b both free -> (-1, 1); otherwise (0, 0)
///   C_ij != 0:  exactly one of a, b is * and the other 0 -> C_ij on the * side
///               a, b both free -> (C_ij/2, C_ij/2)
///               (0, ?) -> (0, C_ij);  (?, 0) -> (C_ij, 0)
///
/// Throws MembershipError naming the first entry where C is not in P(A + B).
inline std::pair<Matrix<Rational>, Matrix<Rational>> decompose_sum(const Matrix<Rational>& c,
                                                                   const PatternMatrix& a,
                                                                   const PatternMatrix& b) {
  require_same_shape(a, b, "decompose_sum");
  require_same_shape(a, c, "decompose_sum");
  Matrix<Rational> ar(c.rows(), c.cols(), Rational(0));
  Matrix<Rational> br(c.rows(), c.cols(), Rational(0));
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t k = 0; k < c.cols(); ++k) {
      const Symbol sa = a(r, k);
      const Symbol sb = b(r, k);
      const Symbol sum = sa + sb;
      const Rational& v = c(r, k);
      const bool zero = v == 0;
      if ((sum == Symbol::Zero && !zero) || (sum == Symbol::Star && zero)) {
        throw MembershipError("decompose_sum: entry (" + std::to_string(r) + "," +
                                  std::to_string(k) + ") = " + to_string(v) +
                                  " is not in the class of " + std::string(1, to_char(sum)),
                              r, k);
      }
      const bool both_free = is_free(sa) && is_free(sb);
      if (zero) {
        if (both_free) {
          ar(r, k) = -1;
          br(r, k) = 1;
        }
      } else if (both_free) {
        ar(r, k) = v / 2;
        br(r, k) = v / 2;
      } else if (is_free(sa)) {
        ar(r, k) = v;
      } else {
        br(r, k) = v;
      }
    }
  }
  return {std::move(ar), std::move(br)};
}

}  // namespace sspat
