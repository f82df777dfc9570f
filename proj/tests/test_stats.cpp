#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ursc/params.hpp"
#include "ursc/rational.hpp"
#include "ursc/stats.hpp"

using ursc::Rational;
using ursc::SegmentStats;
using ursc::empirical_segment_stats;
using ursc::make_params;

TEST_CASE("prefix mean is exactly one when the prefix is a single dense row") {
  // n=8, c=1, alpha=1, eps=1/2: tau1(2) = floor(4 ln 8 / 64) = 0, and row 0
  // lies in block zero where the bit probability is one.
  const auto p = make_params(8, Rational(1, 1), Rational(1, 2), Rational(1, 1),
                             5);
  const SegmentStats s = empirical_segment_stats(p, 2, 0, 50);
  REQUIRE(s.trials == 50);
  REQUIRE(s.window.tau1 == 0);
  REQUIRE(s.window.tau2 == 8);
  REQUIRE(s.mean_upper == Rational(1, 1));
  // Tail contains row 0, so its weight is at least one in every trial.
  REQUIRE(s.mean_lower >= Rational(1, 1));
}

TEST_CASE("averages are independent of batching") {
  // Trial r draws from its own stream seeded with seed + r, so a 20-trial
  // mean equals the weighted merge of 10 trials at seed and 10 at seed+10.
  const auto base = make_params(8, Rational(1, 2), Rational(1, 2),
                                Rational(1, 1), 900);
  const SegmentStats all = empirical_segment_stats(base, 3, 7, 20);

  auto shifted = base;
  shifted.seed = 910;
  const SegmentStats head = empirical_segment_stats(base, 3, 7, 10);
  const SegmentStats tail = empirical_segment_stats(shifted, 3, 7, 10);

  const auto weighted = [](const Rational& a, const Rational& b) {
    return a * Rational(10, 1) + b * Rational(10, 1);
  };
  REQUIRE(all.mean_upper * Rational(20, 1) ==
          weighted(head.mean_upper, tail.mean_upper));
  REQUIRE(all.mean_lower * Rational(20, 1) ==
          weighted(head.mean_lower, tail.mean_lower));
  REQUIRE(all.mean_collision * Rational(20, 1) ==
          weighted(head.mean_collision, tail.mean_collision));
}

TEST_CASE("shift is cyclic in the code length") {
  const auto p = make_params(8, Rational(1, 2), Rational(1, 2), Rational(1, 1),
                             31);
  const std::int64_t t = p.rows;
  const SegmentStats zero = empirical_segment_stats(p, 2, 0, 25);
  const SegmentStats full = empirical_segment_stats(p, 2, t, 25);
  REQUIRE(zero.mean_collision == full.mean_collision);

  const SegmentStats minus = empirical_segment_stats(p, 2, -1, 25);
  const SegmentStats wrap = empirical_segment_stats(p, 2, t - 1, 25);
  REQUIRE(minus.mean_collision == wrap.mean_collision);
}

TEST_CASE("collision mean never exceeds the tail mean") {
  // The collision statistic counts a subset of column A's tail ones.
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto p = make_params(8, Rational(1, 2), Rational(1, 2),
                               Rational(1, 1), seed);
    const SegmentStats s = empirical_segment_stats(p, 4, 11, 30);
    REQUIRE(s.mean_collision <= s.mean_lower);
  }
}

TEST_CASE("interval formulas at a reference point") {
  // sqrt(c)*k*ln n with c=4, k=3, n=8: base = 2*3*ln 8.
  const auto p = make_params(8, Rational(1, 1), Rational(1, 1), Rational(4, 1),
                             std::nullopt);
  const long double base = 6.0L * std::log(8.0L);
  const auto up = ursc::upper_segment_interval(p, 3);
  REQUIRE(static_cast<double>(up.lower) ==
          Catch::Approx(static_cast<double>(base / 8)));
  REQUIRE(static_cast<double>(up.upper) ==
          Catch::Approx(static_cast<double>(base / 2)));

  // alpha = 1 makes a^(1+eps/2) = 1: lower interval is ((1-1/8)b, 4b).
  const auto low = ursc::lower_segment_interval(p, 3);
  REQUIRE(static_cast<double>(low.lower) ==
          Catch::Approx(static_cast<double>(0.875L * base)));
  REQUIRE(static_cast<double>(low.upper) ==
          Catch::Approx(static_cast<double>(4 * base)));

  REQUIRE(static_cast<double>(ursc::weight_floor_bound(p, 3)) ==
          Catch::Approx(static_cast<double>(0.6L * base)));

  // Open interval semantics.
  const ursc::StatInterval iv{1.0L, 2.0L};
  REQUIRE(iv.contains(1.5L));
  REQUIRE_FALSE(iv.contains(1.0L));
  REQUIRE_FALSE(iv.contains(2.0L));

  // alpha = 1/4, eps = 2: a^(1+eps/2) = (1/4)^2 = 1/16, so 1/a_pow = 16.
  const auto p4 = make_params(8, Rational(1, 4), Rational(2, 1),
                              Rational(1, 1), std::nullopt);
  const long double b4 = 3.0L * std::log(8.0L);
  const auto low4 = ursc::lower_segment_interval(p4, 3);
  REQUIRE(static_cast<double>(low4.lower) ==
          Catch::Approx(static_cast<double>((16.0L - 0.125L) * b4)));
  REQUIRE(static_cast<double>(low4.upper) ==
          Catch::Approx(static_cast<double>(64.0L * b4)));
}

TEST_CASE("sampling validation") {
  const auto p = make_params(8, Rational(1, 2), Rational(1, 2), Rational(1, 1),
                             7);
  REQUIRE_THROWS_AS(empirical_segment_stats(p, 2, 0, 0),
                    std::invalid_argument);
  auto seedless = p;
  seedless.seed = std::nullopt;
  REQUIRE_THROWS_AS(empirical_segment_stats(seedless, 2, 0, 5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(empirical_segment_stats(p, 1, 0, 5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(empirical_segment_stats(p, 9, 0, 5),
                    std::invalid_argument);
}

TEST_CASE("determinism across calls") {
  const auto p = make_params(8, Rational(1, 2), Rational(1, 2), Rational(1, 1),
                             1234);
  const SegmentStats a = empirical_segment_stats(p, 3, 5, 40);
  const SegmentStats b = empirical_segment_stats(p, 3, 5, 40);
  REQUIRE(a.mean_upper == b.mean_upper);
  REQUIRE(a.mean_lower == b.mean_lower);
  REQUIRE(a.mean_collision == b.mean_collision);
}
