#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sspat/decompose.hpp"
#include "sspat/errors.hpp"
#include "sspat/linalg.hpp"
#include "sspat/matching.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rational.hpp"
#include "sspat/sampling.hpp"

namespace sspat {

struct Pivot {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Pivot&, const Pivot&) = default;
};

/// What is left when pivot elimination can make no further progress.
struct StallReport {
  std::string reason;
  std::vector<std::size_t> rows;  // surviving rows, original indices
  std::vector<std::size_t> cols;  // surviving columns, original indices
  PatternMatrix residual;         // rows x cols restriction of the input
};

/// Outcome of a strong full-rank test.
///
/// On success `pivots` holds one pivot per row (column for column-rank
/// verdicts) in elimination order, coordinates in the input matrix. On
/// failure `stall` describes where elimination stopped and `witness`, when
/// present, is a member of the pattern class with deficient rank, verified in
/// exact arithmetic.
struct RankVerdict {
  bool full_rank = false;
  std::vector<Pivot> pivots;
  std::optional<StallReport> stall;
  std::optional<Matrix<Rational>> witness;
};

// ---------------------------------------------------------------------------
// Witness construction
// ---------------------------------------------------------------------------

/// Builds a member M of P with y^T M = 0 for the given nonzero left vector y,
/// or nothing when some column makes that impossible (its only free entry
/// among the rows in supp(y) is a *).
///
/// Rows outside supp(y) take 1 on * and 0 on ?. Within supp(y) each column
/// sets * entries to 1 and solves one adjustable entry (a ? if available,
/// otherwise the last *) so that the weighted column sum vanishes.
inline std::optional<Matrix<Rational>> witness_from_left_kernel(const PatternMatrix& p,
                                                                std::span<const Rational> y) {
  if (y.size() != p.rows()) {
    throw DimensionError("left kernel vector has " + std::to_string(y.size()) +
                         " entries for a pattern with " + std::to_string(p.rows()) + " rows");
  }
  if (std::all_of(y.begin(), y.end(), [](const Rational& v) { return v == 0; })) return std::nullopt;

  Matrix<Rational> m(p.rows(), p.cols(), Rational(0));
  for (std::size_t r = 0; r < p.rows(); ++r)
    if (y[r] == 0)
      for (std::size_t c = 0; c < p.cols(); ++c)
        if (p(r, c) == Symbol::Star) m(r, c) = 1;

  std::vector<std::size_t> stars;
  std::vector<std::size_t> quests;
  for (std::size_t c = 0; c < p.cols(); ++c) {
    stars.clear();
    quests.clear();
    for (std::size_t r = 0; r < p.rows(); ++r) {
      if (y[r] == 0) continue;
      if (p(r, c) == Symbol::Star) stars.push_back(r);
      if (p(r, c) == Symbol::Quest) quests.push_back(r);
    }
    if (stars.empty()) continue;  // ? entries stay 0
    if (!quests.empty()) {
      Rational sum(0);
      for (std::size_t r : stars) {
        m(r, c) = 1;
        sum += y[r];
      }
      const std::size_t adj = quests.front();
      m(adj, c) = -sum / y[adj];
      continue;
    }
    if (stars.size() == 1) return std::nullopt;
    const std::size_t adj = stars.back();
    Rational sum(0);
    for (std::size_t i = 0; i + 1 < stars.size(); ++i) {
      m(stars[i], c) = 1;
      sum += y[stars[i]];
    }
    if (sum == 0) {
      m(stars.front(), c) = 2;
      sum += y[stars.front()];
    }
    m(adj, c) = -sum / y[adj];
  }
  if (!contains(p, m) || numeric_rank(m) >= p.rows()) return std::nullopt;
  return m;
}

/// Member with * -> 1 and ? -> 0.
inline Matrix<Rational> default_member(const PatternMatrix& p) {
  return map(p, [](Symbol s) { return s == Symbol::Star ? Rational(1) : Rational(0); });
}

/// Left vector +1 on the first listed row and -1 on the rest; for two rows
/// this makes the witness rows equal.
inline std::vector<Rational> alternating_indicator(std::size_t rows,
                                                   std::span<const std::size_t> support) {
  std::vector<Rational> y(rows, Rational(0));
  for (std::size_t i = 0; i < support.size(); ++i) y[support[i]] = i == 0 ? 1 : -1;
  return y;
}

// ---------------------------------------------------------------------------
// Pivot elimination
// ---------------------------------------------------------------------------

namespace detail {

/// Pivot elimination on rows. `choose` receives the eligible pivots (sorted
/// by column) and returns the index of the one to take.
template <typename Chooser>
RankVerdict eliminate_rows(const PatternMatrix& p, Chooser&& choose) {
  RankVerdict v;
  const std::size_t rows = p.rows();
  const std::size_t cols = p.cols();
  if (rows > cols) {
    v.full_rank = false;
    StallReport s;
    s.reason = "more rows than columns";
    for (std::size_t r = 0; r < rows; ++r) s.rows.push_back(r);
    for (std::size_t c = 0; c < cols; ++c) s.cols.push_back(c);
    s.residual = p;
    v.stall = std::move(s);
    v.witness = default_member(p);
    return v;
  }

  std::vector<bool> row_alive(rows, true);
  std::vector<bool> col_alive(cols, true);
  std::vector<std::size_t> count(cols, 0);
  std::vector<std::size_t> row_sum(cols, 0);  // sum of live nonzero row indices
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (is_free(p(r, c))) {
        ++count[c];
        row_sum[c] += r;
      }

  std::vector<Pivot> eligible;
  std::size_t remaining = rows;
  while (remaining > 0) {
    eligible.clear();
    for (std::size_t c = 0; c < cols; ++c)
      if (col_alive[c] && count[c] == 1 && p(row_sum[c], c) == Symbol::Star)
        eligible.push_back({row_sum[c], c});
    if (eligible.empty()) break;
    const Pivot pv = eligible[choose(std::span<const Pivot>(eligible))];
    v.pivots.push_back(pv);
    row_alive[pv.row] = false;
    col_alive[pv.col] = false;
    --remaining;
    for (std::size_t c = 0; c < cols; ++c)
      if (is_free(p(pv.row, c))) {
        --count[c];
        row_sum[c] -= pv.row;
      }
  }

  if (remaining == 0) {
    v.full_rank = true;
    return v;
  }

  StallReport s;
  s.reason = "no column with a single * among the remaining rows";
  for (std::size_t r = 0; r < rows; ++r)
    if (row_alive[r]) s.rows.push_back(r);
  for (std::size_t c = 0; c < cols; ++c)
    if (col_alive[c]) s.cols.push_back(c);
  s.residual = PatternMatrix(s.rows.size(), s.cols.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j) s.residual(i, j) = p(s.rows[i], s.cols[j]);
  // Every live column has zero, two or more, or a single ? nonzero on the
  // stalled rows, so those rows can be made to cancel.
  v.witness = witness_from_left_kernel(p, alternating_indicator(rows, s.rows));
  v.pivots.clear();
  v.full_rank = false;
  v.stall = std::move(s);
  return v;
}

inline RankVerdict transpose_verdict(RankVerdict v) {
  for (auto& pv : v.pivots) std::swap(pv.row, pv.col);
  if (v.stall) {
    std::swap(v.stall->rows, v.stall->cols);
    v.stall->residual = transpose(v.stall->residual);
    if (v.stall->reason == "more rows than columns") v.stall->reason = "more columns than rows";
    else v.stall->reason = "no row with a single * among the remaining columns";
  }
  if (v.witness) v.witness = transpose(*v.witness);
  return v;
}

}  // namespace detail

/// Decides whether every member of P's class has full row rank.
///
/// Repeatedly deletes a column whose only nonzero entry among the remaining
/// rows is a *, together with that row. All rows deleted means full row rank,
/// certified by the pivot list; a stall yields an exact rank-deficient member.
/// Ties go to the lowest column index.
inline RankVerdict full_row_rank(const PatternMatrix& p) {
  return detail::eliminate_rows(p, [](std::span<const Pivot>) { return std::size_t{0}; });
}

/// Same decision with pivots picked uniformly at random among eligible ones.
inline RankVerdict full_row_rank_random_order(const PatternMatrix& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::eliminate_rows(p, [&](std::span<const Pivot> e) {
    return std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng);
  });
}

/// Full column rank via the transpose; pivots are reported as (row, col) of P.
inline RankVerdict full_column_rank(const PatternMatrix& p) {
  return detail::transpose_verdict(full_row_rank(transpose(p)));
}

/// Re-runs the elimination along a claimed certificate: each pivot column must
/// have exactly one nonzero among the rows not yet deleted, and it must be *.
inline bool replay_row_certificate(const PatternMatrix& p, std::span<const Pivot> pivots) {
  if (pivots.size() != p.rows()) return false;
  std::vector<bool> row_alive(p.rows(), true);
  std::vector<bool> col_used(p.cols(), false);
  for (const Pivot& pv : pivots) {
    if (pv.row >= p.rows() || pv.col >= p.cols()) return false;
    if (!row_alive[pv.row] || col_used[pv.col]) return false;
    if (p(pv.row, pv.col) != Symbol::Star) return false;
    for (std::size_t r = 0; r < p.rows(); ++r)
      if (r != pv.row && row_alive[r] && is_free(p(r, pv.col))) return false;
    row_alive[pv.row] = false;
    col_used[pv.col] = true;
  }
  return true;
}

inline bool replay_column_certificate(const PatternMatrix& p, std::span<const Pivot> pivots) {
  std::vector<Pivot> swapped(pivots.begin(), pivots.end());
  for (auto& pv : swapped) std::swap(pv.row, pv.col);
  return replay_row_certificate(transpose(p), swapped);
}

// ---------------------------------------------------------------------------
// Matching cross-check
// ---------------------------------------------------------------------------

/// Square P is nonsingular for every member iff the bipartite graph of its
/// nonzero entries has exactly one perfect matching and that matching uses
/// only * entries.
inline bool strongly_nonsingular_square(const PatternMatrix& p) {
  if (p.rows() != p.cols()) {
    throw DimensionError("strongly_nonsingular_square: pattern is " + shape_string(p));
  }
  const std::size_t n = p.rows();
  BipartiteGraph g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (is_free(p(r, c))) g.add_edge(r, c);
  const Matching m = hopcroft_karp(g);
  if (m.size != n) return false;
  for (std::size_t r = 0; r < n; ++r)
    if (p(r, m.left_mate[r]) != Symbol::Star) return false;
  return matching_is_unique(g, m);
}

// ---------------------------------------------------------------------------
// Refutation search
// ---------------------------------------------------------------------------

/// Limits for the witness search in refute_full_rank.
struct RefutationBudget {
  std::vector<Rational> quest_values{-2, -1, 0, 1, 2};
  std::vector<Rational> star_values{-2, -1, 1, 2};
  std::size_t max_grid_entries = 10;        // free entries for exhaustive grid
  std::size_t max_grid_points = 250000;     // cap on grid combinations
  std::size_t max_random_restarts = 8;
  std::size_t descent_iterations = 200;
  std::uint64_t seed = 0;

  void validate() const {
    if (std::any_of(star_values.begin(), star_values.end(), [](const Rational& v) { return v == 0; }))
      throw InputError("refutation grid: star values must be nonzero");
    if (star_values.empty()) throw InputError("refutation grid: no star values");
  }
};

namespace detail {

inline bool simpler(const Rational& a, const Rational& b) {
  const Rational aa = abs(a);
  const Rational ab = abs(b);
  if (aa != ab) return aa < ab;
  return a > b;
}

inline std::vector<Rational> ordered(std::vector<Rational> v) {
  std::sort(v.begin(), v.end(), simpler);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool rank_deficient(const Matrix<Rational>& m) {
  const std::size_t target = std::min(m.rows(), m.cols());
  return numeric_rank(m) < target;
}

/// Smallest singular value and the matching left singular vector of M (rows <= cols).
inline std::pair<double, Eigen::VectorXd> smallest_left_singular(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(e * e.transpose());
  const double lambda = std::max(0.0, eig.eigenvalues()(0));
  return {std::sqrt(lambda), eig.eigenvectors().col(0)};
}

/// Nearest rational with denominator at most `max_den` (continued fractions).
inline Rational approximate_rational(double x, std::int64_t max_den) {
  const bool negative = x < 0;
  x = std::abs(x);
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(frac);
    if (a > 1e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    const std::int64_t h2 = ai * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double rem = frac - a;
    if (rem < 1e-12) break;
    frac = 1.0 / rem;
  }
  if (k1 == 0) return Rational(0);
  Rational q = make_rational(h1, k1);
  return negative ? Rational(-q) : q;
}

}  // namespace detail

/// Exhaustive search over the budget grid; only attempted when the number of
/// free entries and grid combinations are within budget.
inline std::optional<Matrix<Rational>> refute_by_grid(const PatternMatrix& p,
                                                      const RefutationBudget& budget) {
  budget.validate();
  const auto quest_vals = detail::ordered(budget.quest_values);
  const auto star_vals = detail::ordered(budget.star_values);
  std::vector<std::size_t> free_idx;
  double combos = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Symbol s = p.data()[i];
    if (!is_free(s)) continue;
    free_idx.push_back(i);
    combos *= static_cast<double>(s == Symbol::Star ? star_vals.size() : quest_vals.size());
  }
  if (free_idx.size() > budget.max_grid_entries ||
      combos > static_cast<double>(budget.max_grid_points))
    return std::nullopt;

  const auto& values_of = [&](std::size_t i) -> const std::vector<Rational>& {
    return p.data()[i] == Symbol::Star ? star_vals : quest_vals;
  };
  if (quest_vals.empty()) {
    for (std::size_t i : free_idx)
      if (p.data()[i] == Symbol::Quest) return std::nullopt;
  }

  Matrix<Rational> m(p.rows(), p.cols(), Rational(0));
  Matrix<double> md(p.rows(), p.cols(), 0.0);
  std::vector<std::size_t> digit(free_idx.size(), 0);
  for (std::size_t k = 0; k < free_idx.size(); ++k) {
    m.data()[free_idx[k]] = values_of(free_idx[k])[0];
    md.data()[free_idx[k]] = to_double(m.data()[free_idx[k]]);
  }
  const std::size_t target = std::min(p.rows(), p.cols());
  while (true) {
    // Floating filter first, exact confirmation on a hit.
    if (numeric_rank(md, 1e-9) < target && detail::rank_deficient(m)) return m;
    std::size_t k = 0;
    for (; k < free_idx.size(); ++k) {
      const auto& vals = values_of(free_idx[k]);
      if (++digit[k] < vals.size()) {
        m.data()[free_idx[k]] = vals[digit[k]];
        md.data()[free_idx[k]] = to_double(vals[digit[k]]);
        break;
      }
      digit[k] = 0;
      m.data()[free_idx[k]] = vals[0];
      md.data()[free_idx[k]] = to_double(vals[0]);
    }
    if (k == free_idx.size()) return std::nullopt;
  }
}

/// Row-subset heuristic: looks for a set of rows that can be made to cancel
/// (for two rows: made identical), column by column. The stalled rows of the
/// elimination are tried first, then all subsets of up to three rows.
inline std::optional<Matrix<Rational>> refute_by_row_subsets(const PatternMatrix& p) {
  if (p.rows() == 0) return std::nullopt;
  if (p.rows() > p.cols()) return default_member(p);
  const RankVerdict v = full_row_rank(p);
  if (v.full_rank) return std::nullopt;
  if (v.stall) {
    if (auto w = witness_from_left_kernel(p, alternating_indicator(p.rows(), v.stall->rows)))
      return w;
  }
  const std::size_t n = p.rows();
  std::vector<std::size_t> subset;
  for (std::size_t a = 0; a < n; ++a) {
    subset = {a};
    if (auto w = witness_from_left_kernel(p, alternating_indicator(n, subset))) return w;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      subset = {a, b};
      if (auto w = witness_from_left_kernel(p, alternating_indicator(n, subset))) return w;
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        subset = {a, b, c};
        if (auto w = witness_from_left_kernel(p, alternating_indicator(n, subset))) return w;
      }
  return std::nullopt;
}

/// Random restarts of coordinate descent on the smallest singular value,
/// followed by rounding the near-kernel left vector to rationals and an exact
/// repair of the matrix against it.
inline std::optional<Matrix<Rational>> refute_by_descent(const PatternMatrix& p,
                                                         const RefutationBudget& budget) {
  if (p.rows() == 0 || p.rows() > p.cols()) return std::nullopt;
  constexpr double kStarFloor = 1e-3;
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (is_free(p.data()[i])) free_idx.push_back(i);

  for (std::size_t restart = 0; restart < budget.max_random_restarts; ++restart) {
    ValueDistribution dist;
    dist.seed = budget.seed * 0x9E3779B97F4A7C15ULL + restart;
    Matrix<double> m = to_double(sample_member(p, dist));
    double best = detail::smallest_left_singular(m).first;
    double step = 0.5;
    for (std::size_t it = 0; it < budget.descent_iterations && best > 1e-13; ++it) {
      bool improved = false;
      for (std::size_t i : free_idx) {
        const double cur = m.data()[i];
        const double cands[] = {cur + step, cur - step, 0.0, -cur};
        for (double cand : cands) {
          if (p.data()[i] == Symbol::Star && std::abs(cand) < kStarFloor) continue;
          m.data()[i] = cand;
          const double s = detail::smallest_left_singular(m).first;
          if (s < best) {
            best = s;
            improved = true;
          } else {
            m.data()[i] = cur;
          }
          if (m.data()[i] != cur) break;
        }
      }
      if (!improved) {
        step *= 0.5;
        if (step < 1e-9) break;
      }
    }
    auto [sigma, y] = detail::smallest_left_singular(m);
    double scale = 0.0;
    for (const double x : m.data()) scale = std::max(scale, std::abs(x));
    if (sigma > 1e-6 * std::max(1.0, scale)) continue;

    const double ymax = y.cwiseAbs().maxCoeff();
    for (std::int64_t den : {1, 2, 4, 10, 100, 1000}) {
      std::vector<Rational> yq(p.rows());
      for (std::size_t r = 0; r < p.rows(); ++r) {
        const double v = y(static_cast<Eigen::Index>(r)) / ymax;
        yq[r] = std::abs(v) < 1e-6 ? Rational(0) : detail::approximate_rational(v, den);
      }
      if (auto w = witness_from_left_kernel(p, yq)) return w;
    }
  }
  return std::nullopt;
}

/// Searches for a member of P's class whose rank is below the row count.
/// Strategies, in order: exhaustive grid (small instances), row-subset
/// cancellation, randomized descent. A returned witness has been checked in
/// exact arithmetic; nothing returned means the budget ran out.
inline std::optional<Matrix<Rational>> refute_full_rank(const PatternMatrix& p,
                                                        const RefutationBudget& budget = {}) {
  if (p.rows() == 0) return std::nullopt;
  if (p.rows() > p.cols()) return default_member(p);
  if (auto w = refute_by_grid(p, budget)) return w;
  if (auto w = refute_by_row_subsets(p)) return w;
  return refute_by_descent(p, budget);
}

// ---------------------------------------------------------------------------
// Pencils
// ---------------------------------------------------------------------------

/// A - lambda B has full rank for every member pair and every nonzero complex
/// lambda iff A + B has full rank. Row rank is tested when rows <= cols,
/// column rank otherwise.
inline RankVerdict pencil_full_rank(const PatternMatrix& a, const PatternMatrix& b) {
  const PatternMatrix sum = pattern_add(a, b);
  return sum.rows() <= sum.cols() ? full_row_rank(sum) : full_column_rank(sum);
}

/// Member pair (A_r, B_r) and lambda with A_r - lambda B_r rank deficient.
struct PencilWitness {
  Matrix<Rational> a;
  Matrix<Rational> b;
  Rational lambda;
};

/// Splits a deficient member of P(A + B) into a pencil witness at lambda = -1.
inline std::optional<PencilWitness> pencil_witness(const PatternMatrix& a, const PatternMatrix& b,
                                                   const RankVerdict& verdict) {
  if (verdict.full_rank || !verdict.witness) return std::nullopt;
  auto [ar, br] = decompose_sum(*verdict.witness, a, b);
  PencilWitness w{std::move(ar), std::move(br), Rational(-1)};
  const auto pencil = w.a - scaled(w.b, w.lambda);
  if (!detail::rank_deficient(pencil)) return std::nullopt;
  return w;
}

}  // namespace sspat
