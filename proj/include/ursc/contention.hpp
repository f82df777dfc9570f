#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ursc/bitvector.hpp"
#include "ursc/matrix.hpp"
#include "ursc/params.hpp"
#include "ursc/rational.hpp"

namespace ursc {

/// One contention-resolution instance: which stations are active, when each
/// one's local clock starts, and how many solo transmissions each must get.
struct CrInstance {
  std::int64_t n = 0;                           // id universe
  std::vector<std::int64_t> stations;           // sorted, distinct, in {1..n}
  std::map<std::int64_t, std::int64_t> delta;   // station -> activation round
  std::int64_t s = 1;                           // required successes each
};

inline void validate_instance(const CrInstance& inst) {
  if (inst.n < 1) throw std::invalid_argument("cr: empty id universe");
  if (inst.s < 1) throw std::invalid_argument("cr: s must be >= 1");
  if (inst.stations.empty()) throw std::invalid_argument("cr: no stations");
  if (!std::is_sorted(inst.stations.begin(), inst.stations.end()) ||
      std::adjacent_find(inst.stations.begin(), inst.stations.end()) !=
          inst.stations.end()) {
    throw std::invalid_argument("cr: stations must be sorted and distinct");
  }
  for (const auto v : inst.stations) {
    if (v < 1 || v > inst.n) throw std::invalid_argument("cr: station id out of range");
    const auto it = inst.delta.find(v);
    if (it == inst.delta.end()) {
      throw std::invalid_argument("cr: station missing activation round");
    }
    if (it->second < 0) throw std::invalid_argument("cr: negative activation round");
  }
}

/// Non-adaptive schedule: station v transmits at global round delta(v)+r iff
/// bits[r] is 1, and never after the vector ends.
struct TransmissionVector {
  std::int64_t station;
  BitVector bits;  // no default: a vector always belongs to a concrete column
};

/// Minimum column weight on the widest elongation window [tau1(n,n), tau2(n,n)].
inline std::int64_t weight_floor(const CodeMatrix& m) {
  const auto e = elongation_bounds(m.params, m.params.n, m.t);
  std::int64_t best = -1;
  for (const auto& col : m.columns) {
    const std::int64_t w = interval_weight(col, static_cast<std::size_t>(e.tau1),
                                           static_cast<std::size_t>(e.tau2));
    if (best < 0 || w < best) best = w;
  }
  return best;
}

/// Repetition count R = ceil(s / ((1-alpha) * weight_floor)), computed in
/// exact arithmetic.  The protocol needs alpha < 1: the flip slack (1-alpha)
/// is what converts surviving window weight into solo transmissions.
inline std::int64_t repetition_count(std::int64_t s, const Rational& alpha,
                                     std::int64_t wf) {
  if (s < 1) throw std::invalid_argument("repetition_count: s must be >= 1");
  if (wf <= 0) {
    throw std::invalid_argument(
        "repetition_count: degenerate code (weight floor is zero)");
  }
  if (!(alpha.num() < alpha.den())) {
    throw std::invalid_argument(
        "repetition_count: protocol requires alpha < 1");
  }
  // ceil(s*q / ((q-p)*wf)) for alpha = p/q.
  const __int128 num = static_cast<__int128>(s) * alpha.den();
  const __int128 den = static_cast<__int128>(alpha.den() - alpha.num()) * wf;
  return static_cast<std::int64_t>((num + den - 1) / den);
}

inline TransmissionVector transmission_vector(const CodeMatrix& m, std::int64_t v,
                                              std::int64_t s,
                                              const Rational& alpha) {
  if (v < 1 || v > m.params.n) {
    throw std::invalid_argument("transmission_vector: id out of range");
  }
  const std::int64_t r = repetition_count(s, alpha, weight_floor(m));
  const BitVector& col = m.column(static_cast<std::size_t>(v - 1));
  BitVector bits(static_cast<std::size_t>(m.t * r));
  for (std::int64_t rep = 0; rep < r; ++rep) {
    for (std::int64_t i = 0; i < m.t; ++i) {
      if (col.get(static_cast<std::size_t>(i))) {
        bits.set(static_cast<std::size_t>(rep * m.t + i), true);
      }
    }
  }
  return TransmissionVector{v, std::move(bits)};
}

enum class RoundKind { Silence, Success, Collision };

struct RoundOutcome {
  RoundKind kind = RoundKind::Silence;
  std::vector<std::int64_t> transmitters;  // sorted ids; 0, 1 or >= 2 of them
};

using RoundLog = std::vector<RoundOutcome>;  // index = global round

/// Pure synchronous channel: 0 transmitters -> silence, exactly 1 -> success,
/// >= 2 -> collision.
inline RoundLog simulate_channel(
    const CrInstance& inst,
    const std::map<std::int64_t, TransmissionVector>& vectors,
    std::int64_t horizon) {
  validate_instance(inst);
  if (horizon < 0) throw std::invalid_argument("simulate_channel: negative horizon");
  for (const auto v : inst.stations) {
    const auto it = vectors.find(v);
    if (it == vectors.end() || it->second.station != v) {
      throw std::invalid_argument("simulate_channel: vectors must cover stations");
    }
  }
  RoundLog log(static_cast<std::size_t>(horizon));
  for (std::int64_t g = 0; g < horizon; ++g) {
    auto& out = log[static_cast<std::size_t>(g)];
    for (const auto v : inst.stations) {
      const std::int64_t local = g - inst.delta.at(v);
      const auto& bits = vectors.at(v).bits;
      if (local < 0 || local >= static_cast<std::int64_t>(bits.size())) continue;
      if (bits.get(static_cast<std::size_t>(local))) out.transmitters.push_back(v);
    }
    out.kind = out.transmitters.empty()   ? RoundKind::Silence
               : out.transmitters.size() == 1 ? RoundKind::Success
                                              : RoundKind::Collision;
  }
  return log;
}

struct StationLatency {
  std::vector<std::int64_t> success_local_rounds;  // strictly increasing
  std::optional<std::int64_t> latency_to_s;        // local round of s-th success
};

struct LatencyReport {
  std::map<std::int64_t, StationLatency> stations;
  bool all_reached = false;  // every station has latency_to_s
};

inline LatencyReport latency_report(const RoundLog& log, const CrInstance& inst) {
  validate_instance(inst);
  LatencyReport rep;
  for (const auto v : inst.stations) rep.stations[v];
  for (std::size_t g = 0; g < log.size(); ++g) {
    const auto& out = log[g];
    if (out.kind != RoundKind::Success) continue;
    const std::int64_t v = out.transmitters.front();
    const auto it = rep.stations.find(v);
    if (it == rep.stations.end()) continue;
    it->second.success_local_rounds.push_back(static_cast<std::int64_t>(g) -
                                              inst.delta.at(v));
  }
  rep.all_reached = true;
  for (auto& [v, st] : rep.stations) {
    if (static_cast<std::int64_t>(st.success_local_rounds.size()) >= inst.s) {
      st.latency_to_s = st.success_local_rounds[static_cast<std::size_t>(inst.s - 1)];
    } else {
      rep.all_reached = false;
    }
  }
  return rep;
}

struct CrCounterexample {
  std::vector<std::int64_t> stations;  // the instance's T, sorted
  std::vector<std::int64_t> delta;     // aligned with stations
  std::int64_t failing_station = 0;
  std::int64_t successes = 0;          // solo rounds achieved by the deadline
  std::int64_t deadline = 0;           // inclusive local-round deadline used
};

struct CrCheckReport {
  bool passed = false;
  std::optional<CrCounterexample> counterexample;
  std::int64_t instances_checked = 0;
  bool budget_exhausted = false;
};

/// Inclusive local-round deadline for an instance of k stations: the k-level
/// elongation bound when the code supports k, else the full vector length.
inline std::int64_t cr_deadline_index(const CodeMatrix& m, std::int64_t k,
                                      std::int64_t reps) {
  const auto mk = max_supported_k(m.params, m.t);
  if (mk.has_value() && k <= *mk) {
    const std::int64_t kk = std::clamp<std::int64_t>(k, 2, *mk);
    return elongation_bounds(m.params, kk, m.t).tau2;
  }
  return m.t * reps - 1;
}

/// Sweeps every instance (T, delta) with |T| <= k_max and offsets in
/// [0, offset_bound)^|T|, in canonical order (size, then T lexicographic,
/// then the offset odometer with the last station fastest), and reports the
/// first instance whose stations do not all reach s solo transmissions by the
/// code-derived deadline.
inline CrCheckReport exhaustive_cr_check(const CodeMatrix& m, const Rational& alpha,
                                         std::int64_t k_max, std::int64_t s,
                                         std::int64_t offset_bound,
                                         std::int64_t max_instances = 50'000'000) {
  const std::int64_t n = m.params.n;
  if (k_max < 1 || k_max > n) {
    throw std::invalid_argument("exhaustive_cr_check: k_max must be in [1, n]");
  }
  if (offset_bound < 1) {
    throw std::invalid_argument("exhaustive_cr_check: offset_bound must be >= 1");
  }
  std::map<std::int64_t, TransmissionVector> vectors;
  for (std::int64_t v = 1; v <= n; ++v) {
    vectors.insert_or_assign(v, transmission_vector(m, v, s, alpha));
  }
  const std::int64_t reps =
      static_cast<std::int64_t>(vectors.at(1).bits.size()) / m.t;

  CrCheckReport rep;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const std::int64_t deadline = cr_deadline_index(m, k, reps);
    std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
    bool more_sets = true;
    while (more_sets) {
      std::vector<std::int64_t> offs(static_cast<std::size_t>(k), 0);
      bool more_offs = true;
      while (more_offs) {
        if (rep.instances_checked >= max_instances) {
          rep.budget_exhausted = true;
          return rep;
        }
        ++rep.instances_checked;
        CrInstance inst;
        inst.n = n;
        inst.stations = comb;
        inst.s = s;
        std::int64_t max_delta = 0;
        for (std::int64_t i = 0; i < k; ++i) {
          inst.delta[comb[static_cast<std::size_t>(i)]] =
              offs[static_cast<std::size_t>(i)];
          max_delta = std::max(max_delta, offs[static_cast<std::size_t>(i)]);
        }
        const RoundLog log =
            simulate_channel(inst, vectors, max_delta + deadline + 1);
        const LatencyReport lat = latency_report(log, inst);
        for (const auto v : inst.stations) {
          const auto& st = lat.stations.at(v);
          if (!st.latency_to_s.has_value() || *st.latency_to_s > deadline) {
            CrCounterexample ce;
            ce.stations = comb;
            ce.delta = offs;
            ce.failing_station = v;
            std::int64_t ok = 0;
            for (const auto r : st.success_local_rounds) {
              if (r <= deadline) ++ok;
            }
            ce.successes = ok;
            ce.deadline = deadline;
            rep.counterexample = ce;
            return rep;
          }
        }
        // Advance the offset odometer, last coordinate fastest.
        std::int64_t pos = k - 1;
        while (pos >= 0) {
          if (++offs[static_cast<std::size_t>(pos)] < offset_bound) break;
          offs[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        more_offs = pos >= 0;
      }
      // Next k-combination of {1..n} in lexicographic order.
      std::int64_t pos = k - 1;
      while (pos >= 0 &&
             comb[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) {
        --pos;
      }
      if (pos < 0) {
        more_sets = false;
      } else {
        ++comb[static_cast<std::size_t>(pos)];
        for (std::int64_t i = pos + 1; i < k; ++i) {
          comb[static_cast<std::size_t>(i)] =
              comb[static_cast<std::size_t>(i - 1)] + 1;
        }
      }
    }
  }
  rep.passed = true;
  return rep;
}

}  // namespace ursc
