#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sspat/errors.hpp"
#include "sspat/pattern.hpp"
#include "sspat/rational.hpp"

namespace sspat {

/// How members of a pattern class are drawn.
struct ValueDistribution {
  double star_min = 0.5;  // magnitude range for nonzero draws, lower bound > 0
  double star_max = 2.0;
  double quest_zero_probability = 0.25;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(star_min > 0.0) || !(star_min <= star_max) || !std::isfinite(star_max)) {
      throw InputError("star magnitude range must be a finite interval with lower bound > 0");
    }
    if (!(quest_zero_probability >= 0.0 && quest_zero_probability <= 1.0)) {
      throw InputError("quest_zero_probability must lie in [0, 1]");
    }
  }
};

/// Sampled values are multiples of 1/kSampleDenominator, which keeps exact
/// arithmetic on sampled members cheap.
inline constexpr std::int64_t kSampleDenominator = 1024;

/// Nonzero value with magnitude in the distribution's range and random sign.
inline Rational sample_nonzero(std::mt19937_64& rng, const ValueDistribution& dist) {
  const auto lo = static_cast<std::int64_t>(std::ceil(dist.star_min * kSampleDenominator));
  const auto hi = static_cast<std::int64_t>(std::floor(dist.star_max * kSampleDenominator));
  Rational mag;
  if (lo > hi) {
    mag = from_double(dist.star_min);
  } else {
    std::uniform_int_distribution<std::int64_t> pick(lo, hi);
    mag = make_rational(pick(rng), kSampleDenominator);
  }
  std::bernoulli_distribution negative(0.5);
  return negative(rng) ? Rational(-mag) : mag;
}

/// Draws a member of P's pattern class from a caller-owned generator.
inline Matrix<Rational> sample_member(const PatternMatrix& p, const ValueDistribution& dist,
                                      std::mt19937_64& rng) {
  dist.validate();
  Matrix<Rational> m(p.rows(), p.cols(), Rational(0));
  std::bernoulli_distribution quest_zero(dist.quest_zero_probability);
  for (std::size_t i = 0; i < p.size(); ++i) {
    switch (p.data()[i]) {
      case Symbol::Zero:
        break;
      case Symbol::Star:
        m.data()[i] = sample_nonzero(rng, dist);
        break;
      case Symbol::Quest:
        if (!quest_zero(rng)) m.data()[i] = sample_nonzero(rng, dist);
        break;
    }
  }
  return m;
}

/// Draws a member of P's pattern class; deterministic in `dist.seed`.
inline Matrix<Rational> sample_member(const PatternMatrix& p, const ValueDistribution& dist) {
  std::mt19937_64 rng(dist.seed);
  return sample_member(p, dist, rng);
}

/// Uniformly random pattern, used by property tests and oracles.
inline PatternMatrix random_pattern(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  PatternMatrix p(rows, cols);
  for (auto& s : p.data()) s = static_cast<Symbol>(pick(rng));
  return p;
}

}  // namespace sspat
