#include "sspat/rank.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sspat/oracle.hpp"

namespace sspat {
namespace {

PatternMatrix P(std::initializer_list<const char*> rows) {
  return pattern_from_rows(std::vector<std::string>(rows.begin(), rows.end()));
}

Matrix<Rational> R(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Rational> data;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    cols = r.size();
    for (long v : r) data.emplace_back(v);
  }
  return Matrix<Rational>(rows.size(), cols, std::move(data));
}

void ExpectValidWitness(const PatternMatrix& p, const RankVerdict& v, bool column) {
  ASSERT_FALSE(v.full_rank);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(contains(p, *v.witness));
  EXPECT_LT(numeric_rank(*v.witness), column ? p.cols() : p.rows());
}

TEST(NumericRankTest, Examples) {
  EXPECT_EQ(numeric_rank(identity_matrix<Rational>(3)), 3u);
  EXPECT_EQ(numeric_rank(Matrix<Rational>(2, 3, Rational(1))), 1u);
  EXPECT_EQ(numeric_rank(R({{1, 1}, {1, 2}})), 2u);
  EXPECT_EQ(numeric_rank(Matrix<Rational>(2, 2, Rational(0))), 0u);
  EXPECT_EQ(numeric_rank(Matrix<double>(2, 2, std::vector<double>{1.0, 1.0, 1.0, 1.0 + 1e-13}), 1e-9), 1u);
  using C = std::complex<double>;
  Matrix<C> m(2, 2, std::vector<C>{C(1, 1), C(2, 2), C(0, 1), C(0, 2)});
  EXPECT_EQ(numeric_rank(m, 1e-9), 1u);
}

TEST(FullRowRankTest, TriangularPattern) {
  const auto p = P({"*0", "?*"});
  const auto v = full_row_rank(p);
  ASSERT_TRUE(v.full_rank);
  EXPECT_EQ(v.pivots, (std::vector<Pivot>{{1, 1}, {0, 0}}));
  EXPECT_TRUE(replay_row_certificate(p, v.pivots));
  EXPECT_FALSE(v.witness.has_value());
}

TEST(FullRowRankTest, AllStar2x2Fails) {
  const auto p = P({"**", "**"});
  const auto v = full_row_rank(p);
  ExpectValidWitness(p, v, false);
  EXPECT_EQ(*v.witness, Matrix<Rational>(2, 2, Rational(1)));
  ASSERT_TRUE(v.stall.has_value());
  EXPECT_EQ(v.stall->rows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(v.stall->residual, p);
}

TEST(FullRowRankTest, IdentityBlockAlwaysFull) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 20; ++t) {
      const auto b = random_pattern(n, 1 + t % 4, rng);
      EXPECT_TRUE(full_row_rank(hstack({identity_pattern(n), b})).full_rank);
    }
}

TEST(FullRowRankTest, StaircasePattern) {
  const auto p = P({"**0", "0**"});
  const auto v = full_row_rank(p);
  ASSERT_TRUE(v.full_rank);
  EXPECT_TRUE(replay_row_certificate(p, v.pivots));
  // The alternative certificate through columns 1 and 3 is valid as well.
  EXPECT_TRUE(replay_row_certificate(p, std::vector<Pivot>{{0, 0}, {1, 2}}));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) EXPECT_EQ(numeric_rank(sample_member(p, {}, rng)), 2u);
}

TEST(FullRowRankTest, MoreRowsThanColumns) {
  const auto p = P({"*", "*"});
  const auto v = full_row_rank(p);
  ExpectValidWitness(p, v, false);
  EXPECT_EQ(v.stall->reason, "more rows than columns");
}

TEST(FullRowRankTest, EmptyShapes) {
  EXPECT_TRUE(full_row_rank(PatternMatrix(0, 3)).full_rank);
  EXPECT_TRUE(full_column_rank(PatternMatrix(3, 0)).full_rank);
  EXPECT_FALSE(full_row_rank(PatternMatrix(2, 0)).full_rank);
}

TEST(FullColumnRankTest, Examples) {
  const auto v1 = full_column_rank(P({"*", "?"}));
  EXPECT_TRUE(v1.full_rank);
  EXPECT_EQ(v1.pivots, (std::vector<Pivot>{{0, 0}}));
  EXPECT_TRUE(replay_column_certificate(P({"*", "?"}), v1.pivots));

  const auto p2 = P({"?", "?"});
  const auto v2 = full_column_rank(p2);
  ExpectValidWitness(p2, v2, true);
  EXPECT_EQ(*v2.witness, Matrix<Rational>(2, 1, Rational(0)));
}

TEST(StronglyNonsingularTest, Examples) {
  EXPECT_TRUE(strongly_nonsingular_square(P({"*?", "0*"})));
  EXPECT_FALSE(strongly_nonsingular_square(P({"**", "**"})));
  EXPECT_FALSE(strongly_nonsingular_square(P({"?0", "0*"})));
  EXPECT_FALSE(strongly_nonsingular_square(P({"*0", "*0"})));
  EXPECT_TRUE(strongly_nonsingular_square(P({"0*0", "00*", "*??"})));
  EXPECT_THROW(strongly_nonsingular_square(P({"**"})), DimensionError);
}

TEST(MatchingTest, HopcroftKarpMaximum) {
  // 3 left, 3 right; only two can be matched (left 1 and 2 share one vertex).
  BipartiteGraph g(3, 3);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 2);
  EXPECT_EQ(hopcroft_karp(g).size, 2u);

  BipartiteGraph cyc(2, 2);
  cyc.add_edge(0, 0);
  cyc.add_edge(0, 1);
  cyc.add_edge(1, 0);
  cyc.add_edge(1, 1);
  const auto m = hopcroft_karp(cyc);
  EXPECT_EQ(m.size, 2u);
  EXPECT_FALSE(matching_is_unique(cyc, m));
}

TEST(RefuteTest, Examples) {
  const auto w1 = refute_full_rank(P({"**", "**"}));
  ASSERT_TRUE(w1.has_value());
  EXPECT_EQ(*w1, Matrix<Rational>(2, 2, Rational(1)));

  const auto w2 = refute_by_row_subsets(P({"**?", "?**"}));
  ASSERT_TRUE(w2.has_value());
  EXPECT_EQ(*w2, Matrix<Rational>(2, 3, Rational(1)));
  const auto w2full = refute_full_rank(P({"**?", "?**"}));
  ASSERT_TRUE(w2full.has_value());
  EXPECT_TRUE(contains(P({"**?", "?**"}), *w2full));
  EXPECT_LT(numeric_rank(*w2full), 2u);

  EXPECT_FALSE(refute_full_rank(P({"*0", "?*"})).has_value());
}

TEST(RefuteTest, GridRespectsBudget) {
  RefutationBudget b;
  b.max_grid_entries = 3;
  EXPECT_FALSE(refute_by_grid(P({"**", "**"}), b).has_value());
  b.star_values = {Rational(0), Rational(1)};
  EXPECT_THROW(refute_by_grid(P({"*"}), b), InputError);
}

TEST(RefuteTest, DescentFindsExactWitness) {
  RefutationBudget b;
  b.seed = 4;
  for (const auto& p : {P({"**", "**"}), P({"**?", "?**"}), P({"***", "***", "?**"})}) {
    const auto w = refute_by_descent(p, b);
    ASSERT_TRUE(w.has_value()) << format_pattern(p);
    EXPECT_TRUE(contains(p, *w));
    EXPECT_LT(numeric_rank(*w), p.rows());
  }
  EXPECT_FALSE(refute_by_descent(P({"*0", "?*"}), b).has_value());
}

TEST(WitnessTest, LeftKernelConstruction) {
  const auto p = P({"***", "***", "***"});
  const std::vector<std::size_t> all{0, 1, 2};
  const auto w = witness_from_left_kernel(p, alternating_indicator(3, all));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(contains(p, *w));
  EXPECT_LT(numeric_rank(*w), 3u);
  // A lone * in a column of the support cannot cancel.
  const std::vector<std::size_t> both{0, 1};
  EXPECT_FALSE(witness_from_left_kernel(P({"*0", "0*"}), alternating_indicator(2, both)).has_value());
}

TEST(PencilTest, Examples) {
  EXPECT_TRUE(pencil_full_rank(P({"*0"}), P({"0*"})).full_rank);

  const auto a = P({"*"});
  const auto v = pencil_full_rank(a, a);
  EXPECT_FALSE(v.full_rank);
  const auto w = pencil_witness(a, a, v);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->lambda, -1);
  EXPECT_EQ(w->a(0, 0) + w->b(0, 0), 0);
  EXPECT_NE(w->a(0, 0), 0);

  const auto i2 = identity_pattern(2);
  const auto vi = pencil_full_rank(i2, i2);
  EXPECT_FALSE(vi.full_rank);
  EXPECT_TRUE(pencil_witness(i2, i2, vi).has_value());
  EXPECT_THROW(pencil_full_rank(P({"*"}), P({"**"})), DimensionError);
}

// --- properties -----------------------------------------------------------

TEST(RankPropertyTest, SoundnessBySampling) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 60; ++t) {
    const std::size_t r = dim(rng);
    const auto p = random_pattern(r, r + dim(rng) - 1, rng);
    if (!full_row_rank(p).full_rank) continue;
    ++checked;
    const auto res = oracle_rank(p, 200, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(res.ok()) << format_pattern(p) << res.counterexample.value_or("");
  }
  EXPECT_GT(checked, 20);
}

TEST(RankPropertyTest, EveryNegativeVerdictCarriesWitness) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 1000; ++t) {
    const auto p = random_pattern(dim(rng), dim(rng), rng);
    const auto v = full_row_rank(p);
    if (v.full_rank) {
      EXPECT_TRUE(replay_row_certificate(p, v.pivots));
    } else {
      ExpectValidWitness(p, v, false);
    }
  }
}

TEST(RankPropertyTest, PivotConfluence) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> rows(1, 5), cols(1, 8);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_pattern(rows(rng), cols(rng), rng);
    const bool expected = full_row_rank(p).full_rank;
    for (std::uint64_t order = 0; order < 10; ++order) {
      const auto v = full_row_rank_random_order(p, order + 100 * static_cast<std::uint64_t>(t));
      EXPECT_EQ(v.full_rank, expected);
      if (v.full_rank) EXPECT_TRUE(replay_row_certificate(p, v.pivots));
    }
  }
}

TEST(RankPropertyTest, ColumnMonotonicity) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t r = dim(rng);
    const auto p = random_pattern(r, dim(rng) + r - 1, rng);
    if (!full_row_rank(p).full_rank) continue;
    EXPECT_TRUE(full_row_rank(hstack({p, random_pattern(r, dim(rng), rng)})).full_rank);
  }
}

TEST(RankPropertyTest, PermutationInvariance) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    const auto p = random_pattern(r, c, rng);
    std::vector<std::size_t> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    PatternMatrix q(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) q(i, j) = p(rp[i], cp[j]);
    EXPECT_EQ(full_row_rank(p).full_rank, full_row_rank(q).full_rank);
    EXPECT_EQ(full_column_rank(p).full_rank, full_column_rank(q).full_rank);
  }
}

TEST(RankPropertyTest, SquareRowAndColumnAgree) {
  // All 3^9 square 3x3 patterns.
  for (int code = 0; code < 19683; ++code) {
    PatternMatrix p(3, 3);
    int x = code;
    for (auto& s : p.data()) {
      s = static_cast<Symbol>(x % 3);
      x /= 3;
    }
    const bool row = full_row_rank(p).full_rank;
    ASSERT_EQ(row, full_column_rank(p).full_rank) << format_pattern(p);
    ASSERT_EQ(row, strongly_nonsingular_square(p)) << format_pattern(p);
  }
}

TEST(RankPropertyTest, CorruptedCertificateFailsReplay) {
  const auto p = P({"*00", "?*0", "??*"});
  const auto v = full_row_rank(p);
  ASSERT_TRUE(v.full_rank);
  ASSERT_TRUE(replay_row_certificate(p, v.pivots));
  auto reversed = v.pivots;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_FALSE(replay_row_certificate(p, reversed));
  auto truncated = v.pivots;
  truncated.pop_back();
  EXPECT_FALSE(replay_row_certificate(p, truncated));
  auto moved = v.pivots;
  moved[0].col = (moved[0].col + 1) % 3;
  EXPECT_FALSE(replay_row_certificate(p, moved));
}

}  // namespace
}  // namespace sspat
