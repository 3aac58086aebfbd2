#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sspat/decompose.hpp"
#include "sspat/errors.hpp"
#include "sspat/linalg.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rank.hpp"
#include "sspat/sampling.hpp"

namespace sspat {

/// Structured descriptor system E x' = A x + B u.
struct StructuredDescriptorSystem {
  PatternMatrix e;
  PatternMatrix a;
  PatternMatrix b;

  std::size_t states() const { return a.rows(); }

  void validate() const {
    if (a.rows() != a.cols()) throw DimensionError("descriptor: A must be square, got " + shape_string(a));
    if (e.rows() != a.rows() || e.cols() != a.cols())
      throw DimensionError("descriptor: E is " + shape_string(e) + ", A is " + shape_string(a));
    if (b.rows() != a.rows())
      throw DimensionError("descriptor: B is " + shape_string(b) + ", expected " +
                           std::to_string(a.rows()) + " rows");
  }
};

/// Structured system x' = A x + B u, y = C x + D u.
struct StructuredIOSystem {
  PatternMatrix a;  // n x n
  PatternMatrix b;  // n x m
  PatternMatrix c;  // p x n
  PatternMatrix d;  // p x m

  std::size_t states() const { return a.rows(); }
  std::size_t inputs() const { return b.cols(); }
  std::size_t outputs() const { return c.rows(); }

  void validate() const {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("system: A must be square, got " + shape_string(a));
    if (b.rows() != n) throw DimensionError("system: B is " + shape_string(b) + ", A is " + shape_string(a));
    if (c.cols() != n) throw DimensionError("system: C is " + shape_string(c) + ", A is " + shape_string(a));
    if (d.rows() != c.rows() || d.cols() != b.cols())
      throw DimensionError("system: D is " + shape_string(d) + ", expected " +
                           shape_string(c.rows(), b.cols()));
  }
};

enum class Property { SSC, RegularSSC, ISO, OutputControllability };
enum class Verdict { Holds, Fails, Inconclusive };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::SSC: return "SSC";
    case Property::RegularSSC: return "RegularSSC";
    case Property::ISO: return "ISO";
    case Property::OutputControllability: return "OutputControllability";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

enum class RankKind { Row, Column };

/// One pattern-level rank test that feeds a verdict.
struct Condition {
  std::string name;
  RankKind kind = RankKind::Row;
  std::size_t rows = 0;
  std::size_t cols = 0;
  RankVerdict verdict;
};

/// Verdict on a structural property together with the rank tests behind it.
///
/// Fails is only reported for necessary-and-sufficient tests; a failed
/// sufficient-only test yields Inconclusive.
struct AnalysisReport {
  Property property = Property::SSC;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Condition> conditions;
  std::optional<bool> rank_conditions_hold;  // descriptor systems only
  std::string notes;

  bool all_conditions_pass() const {
    for (const auto& c : conditions)
      if (!c.verdict.full_rank) return false;
    return true;
  }
};

namespace detail {

inline Condition row_condition(std::string name, const PatternMatrix& p) {
  return {std::move(name), RankKind::Row, p.rows(), p.cols(), full_row_rank(p)};
}

inline Condition column_condition(std::string name, const PatternMatrix& p) {
  return {std::move(name), RankKind::Column, p.rows(), p.cols(), full_column_rank(p)};
}

}  // namespace detail

/// Strong structural controllability of (A, B): [A B] and [A+I B] must both
/// have full row rank. Necessary and sufficient.
inline AnalysisReport check_ssc(const PatternMatrix& a, const PatternMatrix& b) {
  if (a.rows() != a.cols()) throw DimensionError("check_ssc: A must be square, got " + shape_string(a));
  if (b.rows() != a.rows())
    throw DimensionError("check_ssc: B is " + shape_string(b) + ", A is " + shape_string(a));
  const std::size_t n = a.rows();
  AnalysisReport rep;
  rep.property = Property::SSC;
  rep.conditions.push_back(detail::row_condition("[A B]", hstack({a, b})));
  rep.conditions.push_back(
      detail::row_condition("[A+I B]", hstack({pattern_add(a, identity_pattern(n)), b})));
  rep.verdict = rep.all_conditions_pass() ? Verdict::Holds : Verdict::Fails;
  return rep;
}

/// Regular strong structural controllability of (E, A, B).
///
/// The three conditions [E B], [A B], [A+E B] of full row rank are exactly the
/// rank conditions for every member (`rank_conditions_hold`); for regular
/// members they are sufficient only, so the property verdict is Holds or
/// Inconclusive.
inline AnalysisReport check_descriptor(const StructuredDescriptorSystem& sys) {
  sys.validate();
  AnalysisReport rep;
  rep.property = Property::RegularSSC;
  rep.conditions.push_back(detail::row_condition("[E B]", hstack({sys.e, sys.b})));
  rep.conditions.push_back(detail::row_condition("[A B]", hstack({sys.a, sys.b})));
  rep.conditions.push_back(detail::row_condition("[A+E B]", hstack({pattern_add(sys.a, sys.e), sys.b})));
  const bool ok = rep.all_conditions_pass();
  rep.rank_conditions_hold = ok;
  rep.verdict = ok ? Verdict::Holds : Verdict::Inconclusive;
  if (!ok) {
    rep.notes =
        "rank conditions fail for some member; regular members may still all be controllable";
  }
  return rep;
}

/// Strong structural input-state observability: [[A B],[C D]] and
/// [[A+I B],[C D]] must both have full column rank. Necessary and sufficient.
inline AnalysisReport check_iso(const StructuredIOSystem& sys) {
  sys.validate();
  const std::size_t n = sys.states();
  AnalysisReport rep;
  rep.property = Property::ISO;
  const PatternMatrix bottom = hstack({sys.c, sys.d});
  rep.conditions.push_back(
      detail::column_condition("[[A B],[C D]]", vstack({hstack({sys.a, sys.b}), bottom})));
  rep.conditions.push_back(detail::column_condition(
      "[[A+I B],[C D]]", vstack({hstack({pattern_add(sys.a, identity_pattern(n)), sys.b}), bottom})));
  rep.verdict = rep.all_conditions_pass() ? Verdict::Holds : Verdict::Fails;
  return rep;
}

/// Exact member (A, B, C, D) and lambda with [[A - lambda I, B],[C, D]]
/// column-rank deficient.
struct IsoWitness {
  Matrix<Rational> a, b, c, d;
  Rational lambda;
};

inline Matrix<Rational> iso_stack(const IsoWitness& w) {
  const std::size_t n = w.a.rows();
  const auto shifted = w.a - scaled(identity_matrix<Rational>(n), w.lambda);
  return vstack({hstack({shifted, w.b}), hstack({w.c, w.d})});
}

/// Turns a failed ISO report into an explicit unobservable member.
///
/// A deficient member of the first composite gives lambda = 0 directly. For
/// the second, the top-left block X of the witness is split as X = A_r + Delta
/// with Delta diagonal nonzero; scaling the top block row by Delta^-1 gives
/// the member (Delta^-1 A_r, Delta^-1 B_r, C_r, D_r) at lambda = -1.
inline std::optional<IsoWitness> iso_witness(const StructuredIOSystem& sys,
                                             const AnalysisReport& report) {
  if (report.property != Property::ISO || report.conditions.size() != 2) return std::nullopt;
  const std::size_t n = sys.states();
  const std::size_t m = sys.inputs();
  const std::size_t p = sys.outputs();
  for (std::size_t k = 0; k < 2; ++k) {
    const RankVerdict& v = report.conditions[k].verdict;
    if (v.full_rank || !v.witness) continue;
    const Matrix<Rational>& w = *v.witness;
    IsoWitness out{block(w, 0, 0, n, n), block(w, 0, n, n, m), block(w, n, 0, p, n),
                   block(w, n, n, p, m), Rational(0)};
    if (k == 1) {
      auto [ar, delta] = decompose_sum(out.a, sys.a, identity_pattern(n));
      for (std::size_t i = 0; i < n; ++i) {
        const Rational inv = 1 / delta(i, i);
        for (std::size_t j = 0; j < n; ++j) ar(i, j) *= inv;
        for (std::size_t j = 0; j < m; ++j) out.b(i, j) *= inv;
      }
      out.a = std::move(ar);
      out.lambda = -1;
    }
    if (numeric_rank(iso_stack(out)) < n + m) return out;
  }
  return std::nullopt;
}

/// [D, CB, CAB, ..., C A^max_power B]; block k+1 reuses C A^k from block k.
inline PatternMatrix build_output_ctrl_pattern(const StructuredIOSystem& sys, std::size_t max_power) {
  sys.validate();
  const std::size_t n = sys.states();
  if (n > 0 && max_power > n - 1) {
    throw InputError("max_power " + std::to_string(max_power) + " exceeds n-1 = " +
                     std::to_string(n - 1));
  }
  std::vector<PatternMatrix> blocks{sys.d};
  if (n > 0) {
    PatternMatrix ca = sys.c;
    for (std::size_t k = 0; k <= max_power; ++k) {
      if (k > 0) ca = pattern_mul(ca, sys.a);
      blocks.push_back(pattern_mul(ca, sys.b));
    }
  }
  return hstack(std::span<const PatternMatrix>(blocks));
}

/// Sufficient test for strong structural output controllability: full row
/// rank of [D, CB, ..., C A^(n-1) B]. Prefixes are tested as blocks are
/// appended and the first success stops the search (adding columns cannot
/// lose row rank). Holds on success, Inconclusive otherwise.
inline AnalysisReport check_output_controllability(const StructuredIOSystem& sys) {
  sys.validate();
  const std::size_t n = sys.states();
  AnalysisReport rep;
  rep.property = Property::OutputControllability;

  PatternMatrix prefix = sys.d;
  std::string name = "[D";
  auto test = [&]() {
    rep.conditions.push_back(detail::row_condition(name + "]", prefix));
    return rep.conditions.back().verdict.full_rank;
  };
  bool ok = test();
  PatternMatrix ca = sys.c;
  for (std::size_t k = 0; !ok && k < n; ++k) {
    if (k > 0) ca = pattern_mul(ca, sys.a);
    prefix = hstack({prefix, pattern_mul(ca, sys.b)});
    if (k == 0) name += " CB";
    else if (k == 1) name += " CAB";
    else name += " CA^" + std::to_string(k) + "B";
    ok = test();
  }
  rep.verdict = ok ? Verdict::Holds : Verdict::Inconclusive;
  if (!ok) rep.notes = "sufficient condition not met; some members may still be output controllable";
  return rep;
}

/// Numeric output-controllability matrix [D, CB, ..., C A^(n-1) B] of a member.
inline Matrix<Rational> output_ctrl_matrix(const Matrix<Rational>& a, const Matrix<Rational>& b,
                                           const Matrix<Rational>& c, const Matrix<Rational>& d) {
  std::vector<Matrix<Rational>> blocks{d};
  Matrix<Rational> ca = c;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (k > 0) ca = ca * a;
    blocks.push_back(ca * b);
  }
  return hstack(std::span<const Matrix<Rational>>(blocks));
}

/// Fraction of sampled members (E, A) for which det(lambda E - A) is nonzero
/// at a random rational lambda. Diagnostic only: there is no structural
/// regularity test.
inline double sample_regularity(const StructuredDescriptorSystem& sys, std::size_t trials,
                                std::uint64_t seed) {
  sys.validate();
  if (trials == 0) return 0.0;
  std::mt19937_64 rng(seed);
  ValueDistribution dist;
  std::size_t regular = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto e = sample_member(sys.e, dist, rng);
    const auto a = sample_member(sys.a, dist, rng);
    const Rational lambda = sample_nonzero(rng, dist);
    if (determinant(scaled(e, lambda) - a) != 0) ++regular;
  }
  return static_cast<double>(regular) / static_cast<double>(trials);
}

}  // namespace sspat
