#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ursc/bitvector.hpp"
#include "ursc/matrix.hpp"
#include "ursc/rational.hpp"

namespace ursc {

/// A configuration falsifying the shift-resilient isolation condition: for
/// the designated codeword and the recorded shifts of the other members of T,
/// the slipped superposition covers too many of its prefix ones.
struct UrscWitness {
  std::int64_t k = 0;
  std::vector<std::int64_t> T;  // ascending column indices, |T| = k
  std::int64_t designated = 0;  // element of T
  // (column, shift) per member of T minus the designated one, ascending.
  std::vector<std::pair<std::int64_t, std::int64_t>> shifts;
  std::int64_t lhs = 0;         // covered ones of the designated prefix
  Rational rhs_threshold;       // alpha * prefix weight; violation: lhs >= rhs
};

struct OracleOptions {
  std::int64_t k_max = 0;             // 0 means all sizes up to n
  std::int64_t max_configs = 10'000'000;  // 0 means unlimited (guarded)
};

struct OracleReport {
  bool passed = false;
  std::optional<UrscWitness> witness;
  std::int64_t configs_checked = 0;  // (T, designated, shift-tuple) evaluations
  bool budget_exhausted = false;
};

namespace detail {

/// Ones of x & y among positions [0, tau], without a temporary vector.
inline std::int64_t prefix_and_count(const BitVector& x, const BitVector& y,
                                     std::int64_t tau) {
  const auto& xw = x.words();
  const auto& yw = y.words();
  const std::size_t last = static_cast<std::size_t>(tau) >> 6;
  std::int64_t count = 0;
  for (std::size_t w = 0; w < last; ++w) count += std::popcount(xw[w] & yw[w]);
  const unsigned rem = (static_cast<unsigned>(tau) & 63u) + 1;
  const std::uint64_t mask =
      rem == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
  count += std::popcount(xw[last] & yw[last] & mask);
  return count;
}

inline bool next_combination(std::vector<std::int64_t>& comb, std::int64_t n) {
  const std::int64_t k = static_cast<std::int64_t>(comb.size());
  std::int64_t i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (std::int64_t j = i + 1; j < k; ++j) {
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(i)] + (j - i);
  }
  return true;
}

}  // namespace detail

/// Exhaustive check of the defining property: for every set T of k columns
/// (k = 2..k_max), every designated member, and every combination of cyclic
/// shifts of the other members, the slipped superposition must cover strictly
/// fewer than alpha times the designated codeword's ones within the prefix
/// [0, tau_fn(k)].
///
/// The scan runs in canonical order -- k ascending, T in lexicographic order,
/// designated ascending within T, shift tuples in odometer order (last
/// coordinate fastest) -- and stops at the first witness, so the report is a
/// pure function of the inputs.  Cost grows as C(n,k)*k*t^(k-1): strictly a
/// desk-scale instrument.
inline OracleReport verify_ursc_bruteforce(
    const CodeMatrix& m, const Rational& alpha,
    const std::function<std::int64_t(std::int64_t)>& tau_fn,
    const OracleOptions& opt = {}) {
  const std::int64_t n = static_cast<std::int64_t>(m.columns.size());
  const std::int64_t t = m.t;
  if (n < 2) {
    throw std::invalid_argument("verify_ursc_bruteforce: need >= 2 columns");
  }
  const std::int64_t k_max = opt.k_max > 0 ? opt.k_max : n;
  if (k_max < 2 || k_max > n) {
    throw std::invalid_argument("verify_ursc_bruteforce: k_max out of range");
  }

  std::vector<std::int64_t> tau(static_cast<std::size_t>(k_max + 1), 0);
  for (std::int64_t k = 2; k <= k_max; ++k) {
    tau[static_cast<std::size_t>(k)] = tau_fn(k);
    if (tau[static_cast<std::size_t>(k)] < 0 ||
        tau[static_cast<std::size_t>(k)] >= t) {
      throw std::invalid_argument("verify_ursc_bruteforce: tau out of range");
    }
  }

  // Refuse open-ended runs whose configuration count cannot even be tallied.
  if (opt.max_configs == 0) {
    long double total = 0;
    for (std::int64_t k = 2; k <= k_max; ++k) {
      long double combos = 1;
      for (std::int64_t i = 0; i < k; ++i) {
        combos *= static_cast<long double>(n - i) / static_cast<long double>(i + 1);
      }
      long double tuples = 1;
      for (std::int64_t i = 0; i + 1 < k; ++i) tuples *= static_cast<long double>(t);
      total += combos * static_cast<long double>(k) * tuples;
    }
    if (total > 1e12L) {
      throw std::invalid_argument(
          "verify_ursc_bruteforce: search space too large for an unlimited "
          "run; set max_configs");
    }
  }

  // All cyclic shifts of every slipped column, so each superposition step is
  // one OR.  slipped(shift(x, s)) == shift(slipped(x), s).
  std::vector<std::vector<BitVector>> slip_shift(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    const BitVector sl = slipped(m.columns[static_cast<std::size_t>(j)]);
    auto& row = slip_shift[static_cast<std::size_t>(j)];
    row.reserve(static_cast<std::size_t>(t));
    for (std::int64_t s = 0; s < t; ++s) row.push_back(cyclic_shift(sl, s));
  }

  OracleReport rep;
  const BitVector zero(static_cast<std::size_t>(t));

  for (std::int64_t k = 2; k <= k_max; ++k) {
    const std::int64_t tk = tau[static_cast<std::size_t>(k)];
    std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    do {
      for (std::int64_t d = 0; d < k; ++d) {
        const std::int64_t j = comb[static_cast<std::size_t>(d)];
        const auto& cj = m.columns[static_cast<std::size_t>(j)];
        const std::int64_t prefix_w =
            interval_weight(cj, 0, static_cast<std::size_t>(tk));
        std::vector<std::int64_t> others;
        others.reserve(static_cast<std::size_t>(k - 1));
        for (std::int64_t i = 0; i < k; ++i) {
          if (i != d) others.push_back(comb[static_cast<std::size_t>(i)]);
        }
        const std::int64_t depth = k - 1;

        // Odometer over shift tuples with running prefix superpositions:
        // prefix[q] = OR of the first q shifted slipped columns.
        std::vector<std::int64_t> shift(static_cast<std::size_t>(depth), 0);
        std::vector<BitVector> prefix(static_cast<std::size_t>(depth + 1), zero);
        for (std::int64_t q = 0; q < depth; ++q) {
          prefix[static_cast<std::size_t>(q + 1)] =
              prefix[static_cast<std::size_t>(q)] |
              slip_shift[static_cast<std::size_t>(
                  others[static_cast<std::size_t>(q)])][0];
        }
        bool done = false;
        while (!done) {
          if (opt.max_configs > 0 && rep.configs_checked >= opt.max_configs) {
            rep.budget_exhausted = true;
            rep.passed = false;
            return rep;
          }
          ++rep.configs_checked;
          const std::int64_t lhs = detail::prefix_and_count(
              cj, prefix[static_cast<std::size_t>(depth)], tk);
          if (!lt_scaled(lhs, alpha, prefix_w)) {
            UrscWitness w;
            w.k = k;
            w.T = comb;
            w.designated = j;
            for (std::int64_t q = 0; q < depth; ++q) {
              w.shifts.emplace_back(others[static_cast<std::size_t>(q)],
                                    shift[static_cast<std::size_t>(q)]);
            }
            w.lhs = lhs;
            w.rhs_threshold = alpha * Rational(prefix_w, 1);
            rep.witness = std::move(w);
            rep.passed = false;
            return rep;
          }
          // Advance the odometer (last coordinate fastest) and rebuild the
          // superposition prefixes from the changed coordinate on.
          std::int64_t q = depth - 1;
          while (q >= 0 && shift[static_cast<std::size_t>(q)] == t - 1) {
            shift[static_cast<std::size_t>(q)] = 0;
            --q;
          }
          if (q < 0) {
            done = true;
          } else {
            ++shift[static_cast<std::size_t>(q)];
            for (std::int64_t r = q; r < depth; ++r) {
              prefix[static_cast<std::size_t>(r + 1)] =
                  prefix[static_cast<std::size_t>(r)] |
                  slip_shift[static_cast<std::size_t>(
                      others[static_cast<std::size_t>(r)])]
                            [static_cast<std::size_t>(
                                shift[static_cast<std::size_t>(r)])];
            }
          }
        }
      }
    } while (detail::next_combination(comb, n));
  }
  rep.passed = true;
  return rep;
}

/// Convenience overload with a constant prefix bound for every set size.
inline OracleReport verify_ursc_bruteforce(const CodeMatrix& m,
                                           const Rational& alpha,
                                           std::int64_t tau,
                                           const OracleOptions& opt = {}) {
  return verify_ursc_bruteforce(m, alpha, [tau](std::int64_t) { return tau; },
                                opt);
}

struct ClassicWitness {
  std::vector<std::int64_t> T;  // ascending column indices
  std::int64_t designated = 0;  // member with no isolating row
};

struct ClassicReport {
  bool passed = false;
  std::optional<ClassicWitness> witness;
  std::int64_t configs_checked = 0;  // (T, designated) pairs evaluated
  bool budget_exhausted = false;
};

/// Baseline superimposed-code check, no shifts and no slip: every set T of
/// exactly k columns must isolate each member in some row (a row where the
/// member has 1 and all other members have 0).  First witness in (T,
/// designated) lexicographic order.
inline ClassicReport verify_classic(const CodeMatrix& m, std::int64_t k,
                                    std::int64_t max_configs = 10'000'000) {
  const std::int64_t n = static_cast<std::int64_t>(m.columns.size());
  if (k < 2 || k > n) {
    throw std::invalid_argument("verify_classic: k out of range");
  }
  ClassicReport rep;
  std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  const std::size_t n_words = m.columns[0].words().size();
  std::vector<std::uint64_t> others(n_words);
  do {
    for (std::int64_t d = 0; d < k; ++d) {
      if (max_configs > 0 && rep.configs_checked >= max_configs) {
        rep.budget_exhausted = true;
        rep.passed = false;
        return rep;
      }
      ++rep.configs_checked;
      std::fill(others.begin(), others.end(), 0);
      for (std::int64_t i = 0; i < k; ++i) {
        if (i == d) continue;
        const auto& w =
            m.columns[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])]
                .words();
        for (std::size_t q = 0; q < n_words; ++q) others[q] |= w[q];
      }
      const auto& cw =
          m.columns[static_cast<std::size_t>(comb[static_cast<std::size_t>(d)])]
              .words();
      bool isolated = false;
      for (std::size_t q = 0; q < n_words && !isolated; ++q) {
        isolated = (cw[q] & ~others[q]) != 0;  // tails are zero in both
      }
      if (!isolated) {
        rep.witness =
            ClassicWitness{comb, comb[static_cast<std::size_t>(d)]};
        rep.passed = false;
        return rep;
      }
    }
  } while (detail::next_combination(comb, n));
  rep.passed = true;
  return rep;
}

}  // namespace ursc
