#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "sspat/decompose.hpp"
#include "sspat/linalg.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rank.hpp"
#include "sspat/sampling.hpp"
#include "sspat/systems.hpp"

namespace sspat {

/// Outcome of a sampling cross-check.
struct OracleResult {
  std::string property;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::optional<std::string> counterexample;
  std::string detail;

  bool ok() const { return passed == trials && !counterexample; }
};

namespace detail {

inline constexpr std::array<double, 3> kQuestZeroProbabilities{0.0, 0.25, 1.0};

inline ValueDistribution trial_distribution(std::size_t trial) {
  ValueDistribution d;
  d.quest_zero_probability = kQuestZeroProbabilities[trial % kQuestZeroProbabilities.size()];
  return d;
}

/// Nonzero complex scalar: uniform angle, magnitude in {0.5, 1, 2}.
inline std::complex<double> sample_lambda(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  constexpr std::array<double, 3> mags{0.5, 1.0, 2.0};
  std::uniform_int_distribution<std::size_t> pick(0, mags.size() - 1);
  return std::polar(mags[pick(rng)], angle(rng));
}

inline std::string describe(const Matrix<Rational>& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ' ';
      s += to_string(m(r, c));
    }
  }
  return s + "]";
}

}  // namespace detail

/// Minkowski sum property: sampled C in P(A + B) splits exactly into members
/// of P(A) and P(B), and sums of sampled members land in P(A + B).
inline OracleResult oracle_minkowski(const PatternMatrix& a, const PatternMatrix& b,
                                     std::size_t trials, std::uint64_t seed) {
  const PatternMatrix sum = pattern_add(a, b);
  OracleResult res{"minkowski", trials, 0, std::nullopt, ""};
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto dist = detail::trial_distribution(t);
    const auto c = sample_member(sum, dist, rng);
    const auto [ar, br] = decompose_sum(c, a, b);
    const auto ax = sample_member(a, dist, rng);
    const auto bx = sample_member(b, dist, rng);
    if (contains(a, ar) && contains(b, br) && ar + br == c && contains(sum, ax + bx)) {
      ++res.passed;
    } else if (!res.counterexample) {
      res.counterexample = "C = " + detail::describe(c);
    }
  }
  res.detail = std::to_string(res.passed) + "/" + std::to_string(trials) + " decompositions verified";
  return res;
}

/// Pencil property. When A + B has full rank, sampled members and nonzero
/// complex lambda keep A_r - lambda B_r at full rank (relative tolerance
/// `tol`); otherwise an exact witness at lambda = -1 must exist.
inline OracleResult oracle_pencil(const PatternMatrix& a, const PatternMatrix& b, std::size_t trials,
                                  std::uint64_t seed, std::size_t lambdas_per_trial = 20,
                                  double tol = 1e-9) {
  const RankVerdict verdict = pencil_full_rank(a, b);
  OracleResult res{"pencil", trials, 0, std::nullopt, ""};
  const std::size_t full = std::min(a.rows(), a.cols());
  if (!verdict.full_rank) {
    res.trials = 1;
    if (auto w = pencil_witness(a, b, verdict)) {
      res.passed = 1;
      res.detail = "pencil not of full rank; witness at lambda = -1, A_r = " + detail::describe(w->a) +
                   ", B_r = " + detail::describe(w->b);
    } else {
      res.counterexample = "no exact witness for a rank-deficient pencil";
    }
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto dist = detail::trial_distribution(t);
    const auto ac = to_complex(sample_member(a, dist, rng));
    const auto bc = to_complex(sample_member(b, dist, rng));
    bool ok = true;
    for (std::size_t k = 0; k < lambdas_per_trial && ok; ++k) {
      const auto lambda = detail::sample_lambda(rng);
      ok = numeric_rank(ac - scaled(bc, lambda), tol) == full;
    }
    if (ok) ++res.passed;
    else if (!res.counterexample) res.counterexample = "rank drop at trial " + std::to_string(t);
  }
  res.detail = std::to_string(res.passed) + "/" + std::to_string(trials) +
               " sampled pencils of full rank";
  return res;
}

/// Rank soundness: a full-rank verdict must survive sampling with exact
/// arithmetic; a negative verdict must carry an exact witness.
inline OracleResult oracle_rank(const PatternMatrix& p, std::size_t trials, std::uint64_t seed) {
  const RankVerdict verdict = full_row_rank(p);
  OracleResult res{"rank", trials, 0, std::nullopt, ""};
  if (!verdict.full_rank) {
    res.trials = 1;
    if (verdict.witness && contains(p, *verdict.witness) && numeric_rank(*verdict.witness) < p.rows()) {
      res.passed = 1;
      res.detail = "not of full row rank; witness " + detail::describe(*verdict.witness);
    } else {
      res.counterexample = "missing or invalid witness";
    }
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto m = sample_member(p, detail::trial_distribution(t), rng);
    if (numeric_rank(m) == p.rows()) ++res.passed;
    else if (!res.counterexample) res.counterexample = "sampled member " + detail::describe(m);
  }
  res.detail = std::to_string(res.passed) + "/" + std::to_string(trials) +
               " sampled members of full row rank";
  return res;
}

}  // namespace sspat
