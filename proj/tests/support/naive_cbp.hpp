#pragma once

// Independent re-implementation of the collision-bound check, written
// against the definitions rather than the library: plain bool/int loops, no
// BitVector, no shared helpers.  Deliberately slow; used to cross-check the
// production checker on small matrices.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ursc/matrix.hpp"
#include "ursc/rational.hpp"

namespace naive {

struct NaiveViolation {
  std::int64_t k = 0;
  std::int64_t j = 0;
  std::int64_t j_prime = 0;  // == j for a weight violation
  std::int64_t i = 0;        // == 0 for a weight violation
  bool collision = false;
};

struct NaiveReport {
  bool passed = false;
  std::vector<NaiveViolation> violations;  // canonical (k, j, j', i) order
  std::int64_t cells = 0;                  // total cells scanned
};

inline std::vector<std::vector<bool>> to_bools(const ursc::CodeMatrix& m) {
  std::vector<std::vector<bool>> cols;
  for (const auto& c : m.columns) {
    std::vector<bool> bits(static_cast<std::size_t>(m.t), false);
    for (std::int64_t r = 0; r < m.t; ++r) {
      bits[static_cast<std::size_t>(r)] = c.get(static_cast<std::size_t>(r));
    }
    cols.push_back(std::move(bits));
  }
  return cols;
}

// floor(a / b) for b > 0, written without the library's helper.
inline std::int64_t naive_floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline std::int64_t count_interval(const std::vector<bool>& x, std::int64_t b1,
                                   std::int64_t b2) {
  std::int64_t c = 0;
  for (std::int64_t r = b1; r <= b2; ++r) {
    if (x[static_cast<std::size_t>(r)]) ++c;
  }
  return c;
}

// 1s of `col` shifted by i and widened one position each way, cyclically:
// position r is set iff some one-position y of col and d in {-1,0,1} satisfy
// r == y - i + d  (mod t).
inline std::vector<bool> slipped_shift(const std::vector<bool>& col,
                                       std::int64_t t, std::int64_t i) {
  std::vector<bool> out(static_cast<std::size_t>(t), false);
  for (std::int64_t y = 0; y < t; ++y) {
    if (!col[static_cast<std::size_t>(y)]) continue;
    for (std::int64_t d = -1; d <= 1; ++d) {
      const std::int64_t r = (((y - i + d) % t) + t) % t;
      out[static_cast<std::size_t>(r)] = true;
    }
  }
  return out;
}

/// Windows are given per set size as inclusive (tau1, tau2) pairs indexed by
/// k; entries below k = 2 are ignored.
inline NaiveReport naive_check(
    const ursc::CodeMatrix& m, const ursc::Rational& alpha,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& window,
    std::int64_t k_max) {
  const std::int64_t n = static_cast<std::int64_t>(m.columns.size());
  const std::int64_t t = m.t;
  const auto cols = to_bools(m);
  const std::int64_t a_num = alpha.num();
  const std::int64_t a_den = alpha.den();

  NaiveReport rep;
  for (std::int64_t k = 2; k <= k_max; ++k) {
    const auto [tau1, tau2] = window[static_cast<std::size_t>(k)];
    if (tau1 < 0 || tau1 > tau2 || tau2 >= t) {
      throw std::invalid_argument("naive_check: bad window");
    }
    for (std::int64_t j = 0; j < n; ++j) {
      const std::int64_t tail =
          count_interval(cols[static_cast<std::size_t>(j)], tau1, tau2);
      const std::int64_t bound =
          naive_floor_div(a_num * tail - a_den, a_den * (k - 1));
      for (std::int64_t jp = 0; jp < n; ++jp) {
        if (jp == j) {
          ++rep.cells;
          const std::int64_t head =
              count_interval(cols[static_cast<std::size_t>(j)], 0, tau1);
          if (head * a_den > a_num * tail) {
            rep.violations.push_back(NaiveViolation{k, j, j, 0, false});
          }
          continue;
        }
        for (std::int64_t i = 0; i < t; ++i) {
          ++rep.cells;
          const auto z =
              slipped_shift(cols[static_cast<std::size_t>(jp)], t, i);
          std::int64_t hits = 0;
          for (std::int64_t r = tau1; r <= tau2; ++r) {
            if (cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] &&
                z[static_cast<std::size_t>(r)]) {
              ++hits;
            }
          }
          if (hits > bound) {
            rep.violations.push_back(NaiveViolation{k, j, jp, i, true});
          }
        }
      }
    }
  }
  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace naive
