#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ursc/bitvector.hpp"
#include "ursc/matrix.hpp"
#include "ursc/parallel.hpp"
#include "ursc/params.hpp"
#include "ursc/rational.hpp"

namespace ursc {

enum class Inequality {
  weight,            // prefix weight vs scaled tail weight, one cell per (k, j)
  collision_weight,  // slipped-collision count vs floor bound, per (k, j, j', i)
};

/// One failed checker cell.  Weight cells are recorded with j_prime == j and
/// i == 0 so that every violation sorts under one canonical key.
struct Violation {
  std::int64_t k = 0;
  std::int64_t j = 0;
  std::int64_t j_prime = 0;
  std::int64_t i = 0;
  Inequality which = Inequality::weight;

  friend bool operator<(const Violation& a, const Violation& b) {
    return std::tie(a.k, a.j, a.j_prime, a.i, a.which) <
           std::tie(b.k, b.j, b.j_prime, b.i, b.which);
  }
  friend bool operator==(const Violation& a, const Violation& b) {
    return std::tie(a.k, a.j, a.j_prime, a.i, a.which) ==
           std::tie(b.k, b.j, b.j_prime, b.i, b.which);
  }
};

struct CheckReport {
  bool passed = false;
  // All violations (sorted by (k, j, j', i)), or in fail-fast mode exactly
  // the first one in that order.
  std::vector<Violation> violations;
  // Cells evaluated: the full cell count when the scan completes, or the
  // canonical rank of the first violation in fail-fast mode.  Deterministic
  // for any worker count.
  std::int64_t cells_checked = 0;
};

struct CheckOptions {
  bool fail_fast = false;
  int workers = 1;
  // Check set sizes 2..k_max only; 0 means all sizes up to n.
  std::int64_t k_max = 0;
};

/// Prefix-vs-tail weight inequality for one codeword:
///   |c[0..tau1]|  <=  alpha * |c[tau1..tau2]|
/// decided exactly (both segments include the shared boundary position).
inline bool check_weight_inequality(const BitVector& col, const Rational& alpha,
                                    const ElongationPair& e) {
  const std::int64_t upper =
      interval_weight(col, 0, static_cast<std::size_t>(e.tau1));
  const std::int64_t lower =
      interval_weight(col, static_cast<std::size_t>(e.tau1),
                      static_cast<std::size_t>(e.tau2));
  return leq_scaled(upper, alpha, lower);
}

/// Right-hand side of the collision inequality for a codeword of tail weight
/// W in a set of size k: floor((alpha*W - 1) / (k - 1)), exact over
/// rationals.  Negative when alpha*W < 1, in which case no count passes.
inline std::int64_t collision_bound(const Rational& alpha, std::int64_t tail_weight,
                                    std::int64_t k) {
  if (k < 2) throw std::invalid_argument("collision_bound: k must be >= 2");
  return floor_div(
      static_cast<__int128>(alpha.num()) * tail_weight - alpha.den(),
      static_cast<__int128>(alpha.den()) * (k - 1));
}

/// Collision inequality for an ordered codeword pair (c_j, c_j') at cyclic
/// shift i (any integer; normalized mod t):
///   |(c_j AND slipped(c_j' shifted by i))[tau1..tau2]|
///       <=  floor((alpha * |c_j[tau1..tau2]| - 1) / (k - 1))
inline bool check_collision_weight_inequality(const BitVector& col_j,
                                              const BitVector& col_jp,
                                              const Rational& alpha,
                                              std::int64_t k, long long i,
                                              const ElongationPair& e) {
  const BitVector hit = col_j & slipped(cyclic_shift(col_jp, i));
  const std::int64_t lhs =
      interval_weight(hit, static_cast<std::size_t>(e.tau1),
                      static_cast<std::size_t>(e.tau2));
  const std::int64_t tail =
      interval_weight(col_j, static_cast<std::size_t>(e.tau1),
                      static_cast<std::size_t>(e.tau2));
  return lhs <= collision_bound(alpha, tail, k);
}

namespace detail {

/// Cumulative popcount per word; answers "ones at positions < p" in O(1).
class RankIndex {
 public:
  explicit RankIndex(const std::vector<std::uint64_t>& words) {
    pre_.resize(words.size() + 1, 0);
    for (std::size_t i = 0; i < words.size(); ++i) {
      pre_[i + 1] = pre_[i] + std::popcount(words[i]);
    }
    words_ = &words;
  }

  std::int64_t ones_below(std::int64_t p) const {
    const std::size_t wi = static_cast<std::size_t>(p) >> 6;
    std::int64_t r = pre_[wi];
    const unsigned rem = static_cast<unsigned>(p) & 63u;
    if (rem) {
      r += std::popcount((*words_)[wi] &
                         (~std::uint64_t{0} >> (64 - rem)));
    }
    return r;
  }

  std::int64_t interval(const ElongationPair& e) const {
    return ones_below(e.tau2 + 1) - ones_below(e.tau1);
  }

 private:
  std::vector<std::int64_t> pre_;
  const std::vector<std::uint64_t>* words_ = nullptr;
};

/// y repeated twice, so any cyclic 64-bit window of y can be read with one
/// unaligned (non-wrapping) load.
inline std::vector<std::uint64_t> doubled_words(const BitVector& y) {
  const std::int64_t t = static_cast<std::int64_t>(y.size());
  std::vector<std::uint64_t> out((2 * t + 63) / 64 + 1, 0);
  for (std::int64_t pass = 0; pass < 2; ++pass) {
    const std::int64_t base = pass * t;
    for (std::int64_t r = 0; r < t; ++r) {
      if (y.get(static_cast<std::size_t>(r))) {
        const std::int64_t p = base + r;
        out[static_cast<std::size_t>(p >> 6)] |= std::uint64_t{1}
                                                 << (p & 63);
      }
    }
  }
  return out;
}

inline std::uint64_t read64(const std::vector<std::uint64_t>& w2,
                            std::int64_t pos) {
  const std::size_t wi = static_cast<std::size_t>(pos) >> 6;
  const unsigned rem = static_cast<unsigned>(pos) & 63u;
  if (!rem) return w2[wi];
  return (w2[wi] >> rem) | (w2[wi + 1] << (64 - rem));
}

/// Counts sum over r in [a, b] of x[r] * y[(r + shift) mod t], where y2 is
/// doubled_words(y).  Used by the fail-fast rescan, which touches one narrow
/// window per cell and must not pay for whole-vector temporaries.
inline std::int64_t masked_and_count(const BitVector& x,
                                     const std::vector<std::uint64_t>& y2,
                                     std::int64_t t, std::int64_t a,
                                     std::int64_t b, std::int64_t shift) {
  std::int64_t count = 0;
  const auto& xw = x.words();
  std::int64_t r = a;
  while (r <= b) {
    const std::int64_t chunk = std::min<std::int64_t>(64 - (r & 63), b - r + 1);
    std::uint64_t xm = xw[static_cast<std::size_t>(r >> 6)] >> (r & 63);
    if (chunk < 64) xm &= (std::uint64_t{1} << chunk) - 1;
    if (xm) {
      const std::int64_t pos = (r + shift) % t;
      count += std::popcount(xm & read64(y2, pos));
    }
    r += chunk;
  }
  return count;
}

}  // namespace detail

/// Checks the two collision-bound inequalities over every set size k in
/// [2, k_max], every ordered codeword pair, and every cyclic shift.
///
/// The verdict and the report are pure functions of the inputs: violations
/// are listed in (k, j, j', i) order, fail-fast returns exactly the first
/// violation under that order, and the worker count never changes any output
/// (work is split into index-chunked tasks whose results merge in task
/// order).
inline CheckReport check_cbp(const CodeMatrix& m, const Rational& alpha,
                             const std::function<ElongationPair(std::int64_t)>& e_fn,
                             const CheckOptions& opt = {}) {
  const std::int64_t n = static_cast<std::int64_t>(m.columns.size());
  const std::int64_t t = m.t;
  if (n < 2) throw std::invalid_argument("check_cbp: need at least 2 columns");
  const std::int64_t k_max = opt.k_max > 0 ? opt.k_max : n;
  if (k_max < 2 || k_max > n) {
    throw std::invalid_argument("check_cbp: k_max out of range");
  }

  // Materialize and validate the windows once.
  std::vector<ElongationPair> window(static_cast<std::size_t>(k_max + 1));
  for (std::int64_t k = 2; k <= k_max; ++k) {
    const ElongationPair e = e_fn(k);
    if (e.tau1 < 0 || e.tau1 > e.tau2 || e.tau2 >= t) {
      throw std::invalid_argument("check_cbp: interval out of range");
    }
    window[static_cast<std::size_t>(k)] = e;
  }

  // Tail weights and collision bounds per (column, k).
  std::vector<std::vector<std::int64_t>> tail(
      static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(k_max + 1), 0));
  std::vector<std::vector<std::int64_t>> bound = tail;
  for (std::int64_t j = 0; j < n; ++j) {
    const detail::RankIndex rank(m.columns[static_cast<std::size_t>(j)].words());
    for (std::int64_t k = 2; k <= k_max; ++k) {
      const auto& e = window[static_cast<std::size_t>(k)];
      const std::int64_t w = rank.interval(e);
      tail[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = w;
      bound[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          collision_bound(alpha, w, k);
    }
  }

  const std::int64_t total_cells =
      (k_max - 1) * (n + n * (n - 1) * t);

  // --- fail-fast rescan in canonical order -------------------------------
  // Used once some violation is known to exist; finds the first cell in
  // (k, j, j', i) order, evaluating each cell against only its own window.
  const auto canonical_first = [&]() -> CheckReport {
    std::vector<std::vector<std::uint64_t>> doubled(
        static_cast<std::size_t>(n));
    std::int64_t cells = 0;
    for (std::int64_t k = 2; k <= k_max; ++k) {
      const auto& e = window[static_cast<std::size_t>(k)];
      for (std::int64_t j = 0; j < n; ++j) {
        const auto& cj = m.columns[static_cast<std::size_t>(j)];
        for (std::int64_t jp = 0; jp < n; ++jp) {
          if (jp == j) {
            ++cells;
            if (!check_weight_inequality(cj, alpha, e)) {
              return CheckReport{false,
                                 {Violation{k, j, j, 0, Inequality::weight}},
                                 cells};
            }
            continue;
          }
          auto& y2 = doubled[static_cast<std::size_t>(jp)];
          if (y2.empty()) {
            y2 = detail::doubled_words(
                slipped(m.columns[static_cast<std::size_t>(jp)]));
          }
          const std::int64_t cap =
              bound[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          for (std::int64_t i = 0; i < t; ++i) {
            ++cells;
            if (detail::masked_and_count(cj, y2, t, e.tau1, e.tau2, i) > cap) {
              return CheckReport{
                  false,
                  {Violation{k, j, jp, i, Inequality::collision_weight}},
                  cells};
            }
          }
        }
      }
    }
    // Caller guaranteed a violation exists; reaching here is a logic error.
    throw std::logic_error("check_cbp: rescan found no violation");
  };

  // --- main scan ----------------------------------------------------------
  // Task layout: task j in [0, n) covers the weight cells of column j; task
  // n + p covers ordered pair p (row-major over (j, j') with j' != j).
  const std::int64_t pair_count = n * (n - 1);
  const std::int64_t n_tasks = n + pair_count;

  std::vector<BitVector> slipped_cols;
  slipped_cols.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    slipped_cols.push_back(slipped(m.columns[static_cast<std::size_t>(j)]));
  }

  std::vector<std::vector<Violation>> found(static_cast<std::size_t>(n_tasks));
  std::atomic<bool> abort{false};

  parallel_tasks(n_tasks, opt.workers, [&](std::int64_t task) {
    if (opt.fail_fast && abort.load(std::memory_order_relaxed)) return;
    auto& out = found[static_cast<std::size_t>(task)];
    if (task < n) {
      const std::int64_t j = task;
      const auto& cj = m.columns[static_cast<std::size_t>(j)];
      for (std::int64_t k = 2; k <= k_max; ++k) {
        if (!check_weight_inequality(cj, alpha,
                                     window[static_cast<std::size_t>(k)])) {
          out.push_back(Violation{k, j, j, 0, Inequality::weight});
          if (opt.fail_fast) {
            abort.store(true, std::memory_order_relaxed);
            return;
          }
        }
      }
      return;
    }
    const std::int64_t p = task - n;
    const std::int64_t j = p / (n - 1);
    std::int64_t jp = p % (n - 1);
    if (jp >= j) ++jp;
    const auto& cj = m.columns[static_cast<std::size_t>(j)];
    const auto& sl = slipped_cols[static_cast<std::size_t>(jp)];
    const auto* cap = bound[static_cast<std::size_t>(j)].data();
    for (std::int64_t i = 0; i < t; ++i) {
      if (opt.fail_fast && (i & 255) == 0 &&
          abort.load(std::memory_order_relaxed)) {
        return;
      }
      const BitVector hit = cj & cyclic_shift(sl, i);
      const detail::RankIndex rank(hit.words());
      for (std::int64_t k = 2; k <= k_max; ++k) {
        if (rank.interval(window[static_cast<std::size_t>(k)]) >
            cap[static_cast<std::size_t>(k)]) {
          out.push_back(Violation{k, j, jp, i, Inequality::collision_weight});
          if (opt.fail_fast) {
            abort.store(true, std::memory_order_relaxed);
            return;
          }
        }
      }
    }
  });

  std::vector<Violation> all;
  for (auto& v : found) {
    all.insert(all.end(), v.begin(), v.end());
  }
  if (all.empty()) {
    return CheckReport{true, {}, total_cells};
  }
  if (opt.fail_fast) {
    return canonical_first();
  }
  std::sort(all.begin(), all.end());
  return CheckReport{false, std::move(all), total_cells};
}

/// Convenience overload: windows from the construction formula, clamped to
/// the matrix's actual length.
inline CheckReport check_cbp(const CodeMatrix& m, const CheckOptions& opt = {}) {
  return check_cbp(
      m, m.params.alpha,
      [&](std::int64_t k) { return elongation_bounds(m.params, k, m.t); }, opt);
}

struct ConstructResult {
  std::optional<CodeMatrix> matrix;  // empty when the iteration budget ran out
  std::int64_t iterations = 0;       // sampling attempts consumed
  CheckReport last_report;           // diagnostics from the last attempt
  std::int64_t k_max = 0;            // largest set size the check covered
};

/// Retry-until-valid construction: attempt a (0-based) samples with seed+a
/// and keeps the first matrix whose collision-bound check passes.  The result
/// is a pure function of (params, max_iters): the returned matrix records the
/// effective seed, so re-checking a written file reproduces the verdict.
inline ConstructResult construct_ursc(const ConstructionParams& params,
                                      std::int64_t max_iters, int workers = 1) {
  if (!params.seed.has_value()) {
    throw std::invalid_argument("construct_ursc: params carry no seed");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("construct_ursc: max_iters must be >= 1");
  }
  ConstructResult res;
  res.k_max = params.n;
  for (std::int64_t a = 0; a < max_iters; ++a) {
    ConstructionParams attempt = params;
    attempt.seed = *params.seed + static_cast<std::uint64_t>(a);
    CodeMatrix m = sample_matrix(attempt);
    res.last_report =
        check_cbp(m, params.alpha,
                  [&](std::int64_t k) {
                    return elongation_bounds(params, k, m.t);
                  },
                  CheckOptions{true, workers, 0});
    res.iterations = a + 1;
    if (res.last_report.passed) {
      res.matrix = std::move(m);
      return res;
    }
  }
  return res;
}

struct ConstructWithLengthResult {
  std::optional<CodeMatrix> matrix;
  std::int64_t iterations = 0;
  CheckReport last_report;
  std::int64_t k_max = 0;  // largest set size supported by t_target
};

/// Length-limited construction: samples matrices of exactly t_target rows and
/// checks set sizes only up to the largest k whose tail boundary fits in
/// t_target.  Rejects targets that support no k at all.
inline ConstructWithLengthResult construct_ursc_with_length(
    const ConstructionParams& params, std::int64_t t_target,
    std::int64_t max_iters, int workers = 1) {
  if (!params.seed.has_value()) {
    throw std::invalid_argument("construct_ursc_with_length: params carry no seed");
  }
  if (max_iters < 1) {
    throw std::invalid_argument(
        "construct_ursc_with_length: max_iters must be >= 1");
  }
  if (t_target < 1 || t_target > params.rows) {
    throw std::invalid_argument(
        "construct_ursc_with_length: t_target must be in [1, derived t]");
  }
  const auto k_max = max_supported_k(params, t_target);
  if (!k_max.has_value()) {
    throw std::invalid_argument(
        "construct_ursc_with_length: t_target supports no set size (k = 2 "
        "already needs more rows)");
  }
  ConstructWithLengthResult res;
  res.k_max = *k_max;
  for (std::int64_t a = 0; a < max_iters; ++a) {
    ConstructionParams attempt = params;
    attempt.seed = *params.seed + static_cast<std::uint64_t>(a);
    CodeMatrix m = sample_matrix_rows(attempt, t_target);
    res.last_report =
        check_cbp(m, params.alpha,
                  [&](std::int64_t k) {
                    return elongation_bounds(params, k, t_target);
                  },
                  CheckOptions{true, workers, *k_max});
    res.iterations = a + 1;
    if (res.last_report.passed) {
      res.matrix = std::move(m);
      return res;
    }
  }
  return res;
}

}  // namespace ursc
