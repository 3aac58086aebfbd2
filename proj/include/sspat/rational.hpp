#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "sspat/matrix.hpp"

namespace sspat {

/// Exact rational scalar (GMP, arbitrary precision, always canonical).
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

/// "3/2", "-1", "0": the canonical text form used in reports.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts integers, "p/q" and finite decimals such as "-0.25".
inline Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational: '" + text + "'"); };
  if (text.empty()) return fail();
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(text, 10);
      q.canonicalize();
      if (q.get_den() == 0) return fail();
      return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") return fail();
    if (digits.front() == '+') digits.erase(0, 1);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(text.size() - dot - 1));
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return fail();
  }
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion of a finite double (every double is a dyadic rational).
inline Rational from_double(double x) { return Rational(x); }

inline Matrix<double> to_double(const Matrix<Rational>& m) {
  return map(m, [](const Rational& q) { return q.get_d(); });
}

inline Matrix<std::complex<double>> to_complex(const Matrix<Rational>& m) {
  return map(m, [](const Rational& q) { return std::complex<double>(q.get_d(), 0.0); });
}

inline Matrix<Rational> to_rational(const Matrix<double>& m) {
  return map(m, [](double x) { return from_double(x); });
}

}  // namespace sspat
