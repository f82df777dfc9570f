#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ursc/params.hpp"
#include "ursc/random.hpp"
#include "ursc/rational.hpp"

namespace ursc {

/// Monte-Carlo averages of the three segment statistics of a random column
/// pair: prefix weight (upper segment), tail weight (lower segment), and the
/// slipped-collision count against the partner column at one fixed shift.
struct SegmentStats {
  std::int64_t trials = 0;
  Rational mean_upper;      // avg ones of column A in [0, tau1]
  Rational mean_lower;      // avg ones of column A in [tau1, tau2]
  Rational mean_collision;  // avg |(A & slipped(shift(B, i)))[tau1..tau2]|
  ElongationPair window;    // the (tau1, tau2) the averages refer to
};

/// Open interval (lower, upper) predicted for a statistic's expectation.
struct StatInterval {
  long double lower = 0;
  long double upper = 0;
  bool contains(long double x) const { return lower < x && x < upper; }
};

inline long double to_long_double(const Rational& r) {
  return static_cast<long double>(r.num()) / static_cast<long double>(r.den());
}

/// Predicted range of the mean prefix weight: ((1/8)sqrt(c)*k*ln n,
/// (1/2)sqrt(c)*k*ln n).
inline StatInterval upper_segment_interval(const ConstructionParams& p,
                                           std::int64_t k) {
  const long double base = std::sqrt(to_long_double(p.c)) *
                           static_cast<long double>(k) *
                           std::log(static_cast<long double>(p.n));
  return StatInterval{base / 8, base / 2};
}

/// Predicted range of the mean tail weight:
/// ((1/a^(1+eps/2) - 1/8)sqrt(c)*k*ln n, 4(1/a^(1+eps/2))sqrt(c)*k*ln n).
inline StatInterval lower_segment_interval(const ConstructionParams& p,
                                           std::int64_t k) {
  const long double base = std::sqrt(to_long_double(p.c)) *
                           static_cast<long double>(k) *
                           std::log(static_cast<long double>(p.n));
  const long double a_pow = std::pow(to_long_double(p.alpha),
                                     1.0L + to_long_double(p.eps) / 2);
  return StatInterval{(1 / a_pow - 0.125L) * base, 4 / a_pow * base};
}

/// Lower bound predicted (with high probability) for the minimum tail weight
/// over all columns at set size k: (3/5)sqrt(c)*k*ln n.
inline long double weight_floor_bound(const ConstructionParams& p,
                                      std::int64_t k) {
  return 0.6L * std::sqrt(to_long_double(p.c)) * static_cast<long double>(k) *
         std::log(static_cast<long double>(p.n));
}

/// Samples `trials` fresh column pairs from the construction distribution and
/// averages the segment statistics at set size k and the given shift.
///
/// Trial r uses its own stream seeded with mix64(seed + r), so results are
/// independent of batching.  Within a trial the draw order is: column A at
/// positions 0..tau2 ascending, then column B at exactly the positions the
/// shifted slipped window can touch, in ascending position order.  Positions
/// the statistics never read are not drawn; this is distribution-equivalent
/// to sampling full columns since all bits are independent.
inline SegmentStats empirical_segment_stats(const ConstructionParams& params,
                                            std::int64_t k, long long shift,
                                            std::int64_t trials) {
  if (trials < 1) {
    throw std::invalid_argument("empirical_segment_stats: trials must be >= 1");
  }
  if (!params.seed.has_value()) {
    throw std::invalid_argument("empirical_segment_stats: params carry no seed");
  }
  const ElongationPair e = elongation_bounds(params, k);
  const std::int64_t t = params.rows;
  const std::int64_t tau1 = e.tau1;
  const std::int64_t tau2 = e.tau2;

  // Per-block probabilities up to the last block any read can touch.
  std::vector<double> block_p(static_cast<std::size_t>(t / params.block_len + 1));
  for (std::size_t b = 0; b < block_p.size(); ++b) {
    block_p[b] = 1.0 / std::sqrt(static_cast<double>(b) + 1.0);
  }
  const auto prob_at = [&](std::int64_t r) {
    return block_p[static_cast<std::size_t>(r / params.block_len)];
  };

  // Positions of B that slipped(shift(B, i)) exposes inside [tau1, tau2]:
  // the cyclic interval starting at tau1 + shift - 1 of length (window + 2).
  const std::int64_t norm_shift =
      ((shift % t) + t) % t;
  const std::int64_t b_len = std::min<std::int64_t>(tau2 - tau1 + 3, t);
  const std::int64_t b_lo = ((tau1 + norm_shift - 1) % t + t) % t;

  std::vector<std::uint8_t> a_bits(static_cast<std::size_t>(tau2 + 1));
  std::vector<std::uint8_t> b_bits(static_cast<std::size_t>(t), 0);

  std::int64_t sum_upper = 0;
  std::int64_t sum_lower = 0;
  std::int64_t sum_collision = 0;

  for (std::int64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 eng(mix64(*params.seed + static_cast<std::uint64_t>(trial)));
    for (std::int64_t r = 0; r <= tau2; ++r) {
      const bool bit = uniform01(eng) < prob_at(r);
      a_bits[static_cast<std::size_t>(r)] = bit;
      if (bit) {
        if (r <= tau1) ++sum_upper;
        if (r >= tau1) ++sum_lower;
      }
    }
    if (b_len >= t) {
      for (std::int64_t r = 0; r < t; ++r) {
        b_bits[static_cast<std::size_t>(r)] = uniform01(eng) < prob_at(r);
      }
    } else {
      // Ascending absolute order: the wrapped head segment first.
      const std::int64_t end = b_lo + b_len;  // may exceed t
      if (end > t) {
        for (std::int64_t r = 0; r < end - t; ++r) {
          b_bits[static_cast<std::size_t>(r)] = uniform01(eng) < prob_at(r);
        }
      }
      for (std::int64_t r = b_lo; r < std::min(end, t); ++r) {
        b_bits[static_cast<std::size_t>(r)] = uniform01(eng) < prob_at(r);
      }
    }
    for (std::int64_t r = tau1; r <= tau2; ++r) {
      if (!a_bits[static_cast<std::size_t>(r)]) continue;
      const std::int64_t base = r + norm_shift;
      const bool hit = b_bits[static_cast<std::size_t>((base - 1 + t) % t)] ||
                       b_bits[static_cast<std::size_t>(base % t)] ||
                       b_bits[static_cast<std::size_t>((base + 1) % t)];
      if (hit) ++sum_collision;
    }
  }

  SegmentStats out;
  out.trials = trials;
  out.mean_upper = Rational(sum_upper, trials);
  out.mean_lower = Rational(sum_lower, trials);
  out.mean_collision = Rational(sum_collision, trials);
  out.window = e;
  return out;
}

}  // namespace ursc
