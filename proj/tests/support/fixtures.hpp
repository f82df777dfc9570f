#pragma once

// Hand fixtures shared by the unit tests and the acceptance harness.  The
// position lists are frozen; the properties that make them useful (cover
// bounds, oracle verdicts) are re-verified by tests rather than trusted.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ursc/matrix.hpp"
#include "ursc/params.hpp"

namespace fixtures {

inline ursc::CodeMatrix positions_matrix(
    const ursc::ConstructionParams& params, std::int64_t t,
    const std::vector<std::vector<std::size_t>>& cols) {
  ursc::CodeMatrix m;
  m.params = params;
  m.t = t;
  for (const auto& pos : cols) {
    m.columns.push_back(
        ursc::BitVector::from_positions(static_cast<std::size_t>(t), pos));
  }
  return m;
}

/// Two weight-2 columns whose slipped shifted copies can never cover both 1s
/// of the other column: all pairwise cyclic differences are >= 3 apart.
/// Supports set size 2 (its level-2 tail boundary is 13 < 16).
inline ursc::CodeMatrix t16_pass() {
  const auto p = ursc::make_params(2, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(5, 1), std::nullopt);
  return positions_matrix(p, 16, {{0, 4}, {0, 8}});
}

/// Variant whose second column has 1s at {0,5}: the identity shift's slipped
/// copy covers both 1s of column 0 (positions 0 and 4 fall into the widened
/// runs around 0 and 5).
inline ursc::CodeMatrix t16_fail() {
  const auto p = ursc::make_params(2, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(5, 1), std::nullopt);
  return positions_matrix(p, 16, {{0, 4}, {0, 5}});
}

/// Four weight-5 columns with pairwise slipped cover <= 1 at every shift
/// (verified exhaustively in tests).  Any member of a 4-set keeps >= 5-3 = 2
/// isolated positions per period, so each periodic repetition survives one
/// decode-buffer reset straddle.  Header supports set sizes up to 4
/// (tau2(4,4) = 310 <= 312).
inline ursc::CodeMatrix neighborhood_code() {
  const auto p = ursc::make_params(4, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(14, 1), std::nullopt);
  return positions_matrix(p, 312,
                          {{0, 3, 6, 9, 12},
                           {0, 15, 30, 45, 60},
                           {0, 18, 36, 54, 72},
                           {0, 21, 42, 63, 84}});
}

/// Eight weight-4 columns with pairwise slipped cover <= 1 at every shift,
/// sized for the extended-id universe of two-node local broadcast
/// (2^(2*1+1) = 8 ids).  A sender keeps >= 4-2 = 2 isolated positions per
/// period against a receiver whose own id changes mid-period, so every
/// period delivers a decode even across one reset straddle.
inline ursc::CodeMatrix broadcast_code() {
  const auto p = ursc::make_params(8, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(6, 1), std::nullopt);
  return positions_matrix(p, 256,
                          {{0, 3, 6, 9},
                           {0, 12, 24, 36},
                           {0, 15, 30, 45},
                           {0, 18, 39, 57},
                           {0, 27, 54, 81},
                           {0, 33, 66, 99},
                           {0, 42, 84, 126},
                           {0, 48, 96, 144}});
}

/// Deliberately worthless two-row code whose header nevertheless supports
/// set sizes up to 4 (tau2(4,4) = 2 <= 2): lets the beeping simulator run on
/// any graph with <= 4 nodes, with one period of only 22 rounds, so the full
/// wake-offset product is enumerable.  Gives no isolation guarantee; used
/// for Safety-only sweeps (no node may ever log a non-neighbor, whatever the
/// code).
inline ursc::CodeMatrix tiny_safety_code() {
  const auto p = ursc::make_params(4, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(1, 8), std::nullopt);
  return positions_matrix(p, 2, {{0}, {0, 1}, {1}, {0}});
}

/// Three stations over t=30 with a header that supports only set size 2
/// (tau2(3,2) = 21 <= 30 < 49 = tau2(3,3)): instances with all three
/// stations exercise the full-vector deadline branch.
inline ursc::CodeMatrix cr3_code() {
  const auto p = ursc::make_params(3, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(5, 1), std::nullopt);
  return positions_matrix(p, 30, {{0, 3}, {0, 9}, {1, 20}});
}

/// Two identical columns: every pair of equal activation offsets collides in
/// every transmitting round, so contention resolution must fail; also the
/// classic cover-free check fails (each column covers the other).
inline ursc::CodeMatrix equal_columns() {
  const auto p = ursc::make_params(2, ursc::Rational(1, 1), ursc::Rational(1, 2),
                                   ursc::Rational(5, 1), std::nullopt);
  return positions_matrix(p, 16, {{0, 4}, {0, 4}});
}

/// Exhaustive maximum of |col_u & slipped(shift(col_v, i))| over all ordered
/// pairs u != v and all shifts i: the oracle for the fixtures' cover bound.
inline std::int64_t max_slipped_cover(const ursc::CodeMatrix& m) {
  std::int64_t best = 0;
  const std::int64_t n = static_cast<std::int64_t>(m.columns.size());
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = 0; v < n; ++v) {
      if (u == v) continue;
      for (std::int64_t i = 0; i < m.t; ++i) {
        const auto cover =
            m.column(u) & ursc::slipped(ursc::cyclic_shift(m.column(v), i));
        best = std::max<std::int64_t>(best, ursc::weight(cover));
      }
    }
  }
  return best;
}

}  // namespace fixtures
