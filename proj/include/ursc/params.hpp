#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ursc/rational.hpp"

namespace ursc {

/// Parameters of the randomized code construction, together with the derived
/// block structure.
///
/// A sampled matrix has `block_count` blocks of `block_len` rows each; all
/// bits in block 0 are one, and a bit in block b is one with probability
/// 1/sqrt(b+1).  `rows` is the full derived length; hand-written code files
/// may carry a different actual length (see CodeMatrix::t).
struct ConstructionParams {
  std::int64_t n = 0;            // number of codewords (columns), >= 2
  Rational alpha;                // collision budget fraction, in (0, 1]
  Rational eps;                  // elongation exponent slack, > 0
  Rational c;                    // global length multiplier, > 0
  std::optional<std::uint64_t> seed;  // absent for hand-written codes

  // Derived (see make_params):
  std::int64_t block_len = 0;    // L = max(1, ceil(ln n))
  std::int64_t block_count = 0;  // B = ceil((c / alpha^(2+eps)) * n^2)
  std::int64_t rows = 0;         // t = B * L
};

/// Inclusive pair of interval boundaries used by the checker: the prefix
/// segment is [0, tau1] and the tail segment is [tau1, tau2] (the boundary
/// position is shared by both segments).
struct ElongationPair {
  std::int64_t tau1 = 0;
  std::int64_t tau2 = 0;
};

namespace detail {

/// c / alpha^(2+eps), evaluated in floating point (the exponent is not an
/// integer in general, so this quantity has no exact rational form).
inline double length_scale(const ConstructionParams& p) {
  return p.c.to_double() /
         std::pow(p.alpha.to_double(), 2.0 + p.eps.to_double());
}

}  // namespace detail

/// Validates the free parameters and fills in the derived block structure.
inline ConstructionParams make_params(std::int64_t n, const Rational& alpha,
                                      const Rational& eps, const Rational& c,
                                      std::optional<std::uint64_t> seed) {
  if (n < 2) {
    throw std::invalid_argument("make_params: n must be at least 2");
  }
  if (alpha.num() <= 0 || alpha > Rational(1, 1)) {
    throw std::invalid_argument("make_params: alpha must be in (0, 1]");
  }
  if (eps.num() <= 0) {
    throw std::invalid_argument("make_params: eps must be positive");
  }
  if (c.num() <= 0) {
    throw std::invalid_argument("make_params: c must be positive");
  }
  ConstructionParams p;
  p.n = n;
  p.alpha = alpha;
  p.eps = eps;
  p.c = c;
  p.seed = seed;
  p.block_len = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(std::log(static_cast<double>(n)))));
  const double blocks =
      std::ceil(detail::length_scale(p) * static_cast<double>(n) *
                static_cast<double>(n));
  if (!(blocks >= 1.0) || blocks > 1e15) {
    throw std::invalid_argument("make_params: derived block count out of range");
  }
  p.block_count = static_cast<std::int64_t>(blocks);
  p.rows = p.block_count * p.block_len;
  return p;
}

/// Probability that a sampled bit in row r is one: 1/sqrt(b+1) where
/// b = floor(r / block_len).  Row indices outside [0, rows) are rejected.
inline double bit_probability(const ConstructionParams& p, std::int64_t r) {
  if (r < 0 || r >= p.rows) {
    throw std::out_of_range("bit_probability: row out of range");
  }
  const std::int64_t b = r / p.block_len;
  return 1.0 / std::sqrt(static_cast<double>(b + 1));
}

namespace detail {

/// Unclamped prefix boundary floor((c/64) * k^2 * ln n).
inline std::int64_t raw_tau1(const ConstructionParams& p, std::int64_t k) {
  const double v = p.c.to_double() / 64.0 * static_cast<double>(k) *
                   static_cast<double>(k) *
                   std::log(static_cast<double>(p.n));
  return static_cast<std::int64_t>(std::floor(v));
}

/// Unclamped tail boundary floor((c/alpha^(2+eps)) * k^2 * ln n).
inline std::int64_t raw_tau2(const ConstructionParams& p, std::int64_t k) {
  const double v = length_scale(p) * static_cast<double>(k) *
                   static_cast<double>(k) *
                   std::log(static_cast<double>(p.n));
  return static_cast<std::int64_t>(std::floor(v));
}

}  // namespace detail

/// Checker interval boundaries for set size k, clamped into [0, t_clamp-1].
/// tau1 <= tau2 always holds (alpha <= 1 <= 64 makes the raw values ordered).
inline ElongationPair elongation_bounds(const ConstructionParams& p,
                                        std::int64_t k,
                                        std::int64_t t_clamp) {
  if (k < 2 || k > p.n) {
    throw std::invalid_argument("elongation_bounds: k must be in [2, n]");
  }
  if (t_clamp < 1) {
    throw std::invalid_argument("elongation_bounds: empty code");
  }
  const auto clamp = [t_clamp](std::int64_t v) {
    return std::max<std::int64_t>(0, std::min(v, t_clamp - 1));
  };
  return ElongationPair{clamp(detail::raw_tau1(p, k)),
                        clamp(detail::raw_tau2(p, k))};
}

/// Same, clamped to the derived full length.
inline ElongationPair elongation_bounds(const ConstructionParams& p,
                                        std::int64_t k) {
  return elongation_bounds(p, k, p.rows);
}

/// Largest set size Delta <= n whose unclamped tail boundary fits within
/// t_target rows, or nullopt when even Delta = 2 does not fit.  A code of
/// t_target rows checked up to this Delta retains its guarantees for all
/// participant sets of at most Delta codewords.
inline std::optional<std::int64_t> max_supported_k(
    const ConstructionParams& p, std::int64_t t_target) {
  std::optional<std::int64_t> best;
  for (std::int64_t k = 2; k <= p.n; ++k) {
    if (detail::raw_tau2(p, k) <= t_target) {
      best = k;
    } else {
      break;  // raw_tau2 is nondecreasing in k
    }
  }
  return best;
}

}  // namespace ursc
