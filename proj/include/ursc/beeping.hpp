#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ursc/bitvector.hpp"
#include "ursc/matrix.hpp"
#include "ursc/params.hpp"

namespace ursc {

/// Simple undirected graph over an id universe {1..n_ids}.
struct Graph {
  std::int64_t n_ids = 0;
  std::vector<std::int64_t> nodes;                          // sorted ids
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // a < b, sorted

  bool has_node(std::int64_t v) const {
    return std::binary_search(nodes.begin(), nodes.end(), v);
  }
};

inline Graph make_graph(std::int64_t n_ids, std::vector<std::int64_t> nodes,
                        std::vector<std::pair<std::int64_t, std::int64_t>> edges) {
  if (n_ids < 1) throw std::invalid_argument("make_graph: empty id universe");
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    throw std::invalid_argument("make_graph: duplicate node id");
  }
  for (const auto v : nodes) {
    if (v < 1 || v > n_ids) throw std::invalid_argument("make_graph: id out of range");
  }
  Graph g;
  g.n_ids = n_ids;
  g.nodes = std::move(nodes);
  for (auto& e : edges) {
    if (e.first == e.second) throw std::invalid_argument("make_graph: self-loop");
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!g.has_node(e.first) || !g.has_node(e.second)) {
      throw std::invalid_argument("make_graph: edge endpoint not a node");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("make_graph: duplicate edge");
  }
  g.edges = std::move(edges);
  return g;
}

inline std::int64_t max_degree(const Graph& g) {
  std::map<std::int64_t, std::int64_t> deg;
  for (const auto& e : g.edges) {
    ++deg[e.first];
    ++deg[e.second];
  }
  std::int64_t best = 0;
  for (const auto& [v, d] : deg) best = std::max(best, d);
  return best;
}

/// Identifier payload width: bits needed to write any of the n ids as (v-1).
inline std::int64_t block_width(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("block_width: n must be >= 1");
  std::int64_t w = 0;
  while ((std::int64_t{1} << w) < n) ++w;
  return w;
}

/// Framed, pair-encoded identifier beeped in place of each codeword 1:
/// prefix 1110001, then each bit of (v-1) written MSB-first as 10 (for 1) or
/// 01 (for 0).  Length 7 + 2*block_width(n).
inline BitVector block_id(std::int64_t v, std::int64_t n) {
  if (v < 1 || v > n) throw std::invalid_argument("block_id: id out of range");
  const std::int64_t w = block_width(n);
  BitVector out(static_cast<std::size_t>(7 + 2 * w));
  out.set(0, true);
  out.set(1, true);
  out.set(2, true);
  out.set(6, true);
  const std::uint64_t val = static_cast<std::uint64_t>(v - 1);
  for (std::int64_t b = 0; b < w; ++b) {
    const bool bit = (val >> (w - 1 - b)) & 1u;
    out.set(static_cast<std::size_t>(7 + 2 * b), bit);
    out.set(static_cast<std::size_t>(7 + 2 * b + 1), !bit);
  }
  return out;
}

/// Exact inverse of block_id: the id whose block matches the window, if any.
inline std::optional<std::int64_t> decode_block_id(const BitVector& window,
                                                   std::int64_t n) {
  const std::int64_t w = block_width(n);
  if (static_cast<std::int64_t>(window.size()) != 7 + 2 * w) {
    throw std::invalid_argument("decode_block_id: wrong window length");
  }
  static constexpr bool kPrefix[7] = {true, true, true, false, false, false, true};
  for (int i = 0; i < 7; ++i) {
    if (window.get(static_cast<std::size_t>(i)) != kPrefix[i]) return std::nullopt;
  }
  std::uint64_t val = 0;
  for (std::int64_t b = 0; b < w; ++b) {
    const bool hi = window.get(static_cast<std::size_t>(7 + 2 * b));
    const bool lo = window.get(static_cast<std::size_t>(7 + 2 * b + 1));
    if (hi == lo) return std::nullopt;  // 00 and 11 are not valid pairs
    val = (val << 1) | (hi ? 1u : 0u);
  }
  const std::int64_t v = static_cast<std::int64_t>(val) + 1;
  if (v > n) return std::nullopt;
  return v;
}

/// The code product: every 1 of the codeword becomes a copy of the block id,
/// every 0 a block of zeros.
inline BitVector expand_codeword(const BitVector& code, const BitVector& bid) {
  const std::size_t blk = bid.size();
  BitVector out(code.size() * blk);
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (!code.get(i)) continue;
    for (std::size_t j = 0; j < blk; ++j) {
      if (bid.get(j)) out.set(i * blk + j, true);
    }
  }
  return out;
}

using WakeSchedule = std::map<std::int64_t, std::int64_t>;  // id -> wake round

/// One learn event: (global round, learned id) per listening node.
using NeighborhoodResult =
    std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>>;

namespace detail {

inline std::uint64_t pattern_of(const BitVector& bid) {
  std::uint64_t p = 0;
  for (std::size_t i = 0; i < bid.size(); ++i) {
    p = (p << 1) | (bid.get(i) ? 1u : 0u);
  }
  return p;
}

inline void validate_schedule(const Graph& g, const WakeSchedule& wake) {
  for (const auto v : g.nodes) {
    const auto it = wake.find(v);
    if (it == wake.end()) {
      throw std::invalid_argument("simulate: node missing from wake schedule");
    }
    if (it->second < 0) {
      throw std::invalid_argument("simulate: negative wake round");
    }
  }
}

inline void validate_code_supports(const Graph& g, const CodeMatrix& code) {
  if (g.n_ids > code.params.n) {
    throw std::invalid_argument("simulate: graph universe exceeds code universe");
  }
  const std::int64_t delta = max_degree(g);
  const auto mk = max_supported_k(code.params, code.t);
  if (!mk.has_value() || *mk < delta) {
    throw std::invalid_argument(
        "simulate: code too short for the graph's maximum degree");
  }
}

}  // namespace detail

/// Synchronous beeping simulator for the periodic neighborhood-learning
/// protocol, reusable across wake schedules (the per-code and per-graph
/// precomputation dominates single runs at sweep scale).
///
/// Per local round p of an awake node: with blk = 7+2w and period P = t*blk,
/// the node beeps iff its expanded codeword has a 1 at p mod P; it records 1
/// iff it beeped or any graph neighbor beeped this round; its record buffer
/// is re-zeroed at every period start, so a trailing decode window straddling
/// the period boundary reads zeros in the wrapped part and cannot match any
/// block id (they start with 1).  After recording, the trailing window of
/// length blk is checked and any decoded id other than the node's own is
/// logged the first time it appears.
class BeepEngine {
 public:
  BeepEngine(Graph g, const CodeMatrix& code)
      : g_(std::move(g)), n_uni_(code.params.n) {
    detail::validate_code_supports(g_, code);
    const std::int64_t w = block_width(n_uni_);
    blk_ = 7 + 2 * w;
    period_ = code.t * blk_;
    win_mask_ = (std::uint64_t{1} << blk_) - 1;
    const std::size_t m = g_.nodes.size();
    index_of_.clear();
    for (std::size_t i = 0; i < m; ++i) index_of_[g_.nodes[i]] = i;
    neighbors_.assign(m, {});
    for (const auto& e : g_.edges) {
      neighbors_[index_of_[e.first]].push_back(index_of_[e.second]);
      neighbors_[index_of_[e.second]].push_back(index_of_[e.first]);
    }
    expanded_.reserve(m);
    for (const auto v : g_.nodes) {
      const BitVector ex = expand_codeword(
          code.column(static_cast<std::size_t>(v - 1)), block_id(v, n_uni_));
      std::vector<std::uint8_t> bytes(static_cast<std::size_t>(period_));
      for (std::int64_t p = 0; p < period_; ++p) {
        bytes[static_cast<std::size_t>(p)] = ex.get(static_cast<std::size_t>(p));
      }
      expanded_.push_back(std::move(bytes));
    }
    for (std::int64_t v = 1; v <= n_uni_; ++v) {
      decode_[detail::pattern_of(block_id(v, n_uni_))] = v;
    }
  }

  std::int64_t period() const { return period_; }
  std::int64_t block_len() const { return blk_; }
  const Graph& graph() const { return g_; }

  NeighborhoodResult run(const WakeSchedule& wake, std::int64_t horizon) const {
    detail::validate_schedule(g_, wake);
    if (horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
    const std::size_t m = g_.nodes.size();
    std::vector<std::int64_t> wake_at(m);
    for (std::size_t i = 0; i < m; ++i) wake_at[i] = wake.at(g_.nodes[i]);

    std::vector<std::uint64_t> win(m, 0);
    std::vector<std::uint8_t> beep(m, 0);
    std::vector<std::vector<std::uint8_t>> learned(
        m, std::vector<std::uint8_t>(static_cast<std::size_t>(n_uni_ + 1), 0));
    NeighborhoodResult out;
    for (const auto v : g_.nodes) out[v];

    for (std::int64_t round = 0; round < horizon; ++round) {
      for (std::size_t i = 0; i < m; ++i) {
        beep[i] = round >= wake_at[i] &&
                  expanded_[i][static_cast<std::size_t>((round - wake_at[i]) %
                                                        period_)];
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (round < wake_at[i]) continue;
        std::uint8_t heard = beep[i];
        for (const auto nb : neighbors_[i]) heard |= beep[nb];
        const std::int64_t p = (round - wake_at[i]) % period_;
        if (p == 0) win[i] = 0;  // fresh record buffer each period
        win[i] = ((win[i] << 1) | heard) & win_mask_;
        const auto hit = decode_.find(win[i]);
        if (hit != decode_.end()) {
          const std::int64_t w = hit->second;
          if (w != g_.nodes[i] && !learned[i][static_cast<std::size_t>(w)]) {
            learned[i][static_cast<std::size_t>(w)] = 1;
            out[g_.nodes[i]].emplace_back(round, w);
          }
        }
      }
    }
    return out;
  }

 private:
  Graph g_;
  std::int64_t n_uni_;
  std::int64_t blk_ = 0;
  std::int64_t period_ = 0;
  std::uint64_t win_mask_ = 0;
  std::map<std::int64_t, std::size_t> index_of_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::vector<std::uint8_t>> expanded_;
  std::unordered_map<std::uint64_t, std::int64_t> decode_;
};

inline NeighborhoodResult simulate_neighborhood_learning(const Graph& g,
                                                         const WakeSchedule& wake,
                                                         const CodeMatrix& code,
                                                         std::int64_t horizon) {
  return BeepEngine(g, code).run(wake, horizon);
}

/// One chunk of a split message: the sender's identity, a first-chunk flag,
/// and a payload of the same width as the identity.
struct ExtendedMessage {
  std::string sender_bits;  // w chars of '0'/'1', MSB first, value v-1
  bool first_flag = false;
  std::string chunk;        // w payload chars

  friend bool operator==(const ExtendedMessage& a, const ExtendedMessage& b) {
    return a.sender_bits == b.sender_bits && a.first_flag == b.first_flag &&
           a.chunk == b.chunk;
  }
  friend bool operator!=(const ExtendedMessage& a, const ExtendedMessage& b) {
    return !(a == b);
  }
};

/// Splits a nonempty 0/1 message into ceil(|m|/w) chunks of w bits (last one
/// zero-padded); chunk i carries the sender id and a flag marking i = 0.
inline std::vector<ExtendedMessage> extended_messages(std::int64_t v,
                                                      const std::string& message,
                                                      std::int64_t n) {
  if (message.empty()) {
    throw std::invalid_argument("extended_messages: message must be nonempty");
  }
  for (const char ch : message) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("extended_messages: message must be over {0,1}");
    }
  }
  if (v < 1 || v > n) throw std::invalid_argument("extended_messages: id out of range");
  const std::int64_t w = block_width(n);
  if (w < 1) {
    throw std::invalid_argument("extended_messages: universe too small to chunk");
  }
  std::string sender(static_cast<std::size_t>(w), '0');
  for (std::int64_t b = 0; b < w; ++b) {
    if ((static_cast<std::uint64_t>(v - 1) >> (w - 1 - b)) & 1u) {
      sender[static_cast<std::size_t>(b)] = '1';
    }
  }
  const std::int64_t count =
      (static_cast<std::int64_t>(message.size()) + w - 1) / w;
  std::vector<ExtendedMessage> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    ExtendedMessage em;
    em.sender_bits = sender;
    em.first_flag = i == 0;
    em.chunk = message.substr(static_cast<std::size_t>(i * w),
                              static_cast<std::size_t>(w));
    em.chunk.resize(static_cast<std::size_t>(w), '0');
    out.push_back(std::move(em));
  }
  return out;
}

/// Injective map of an extended message into the id universe: its 2w+1 bits
/// (sender, flag, payload) read MSB-first as an integer, plus one.
inline std::int64_t extended_to_id(const ExtendedMessage& em) {
  std::uint64_t val = 0;
  for (const char ch : em.sender_bits) val = (val << 1) | (ch == '1' ? 1u : 0u);
  val = (val << 1) | (em.first_flag ? 1u : 0u);
  for (const char ch : em.chunk) val = (val << 1) | (ch == '1' ? 1u : 0u);
  return static_cast<std::int64_t>(val) + 1;
}

/// Inverse of extended_to_id for a given identity width; rejects ids outside
/// the 2^(2w+1)-sized extended universe.
inline std::optional<ExtendedMessage> extended_from_id(std::int64_t id,
                                                       std::int64_t w) {
  const std::int64_t bits = 2 * w + 1;
  if (id < 1 || id > (std::int64_t{1} << bits)) return std::nullopt;
  std::uint64_t val = static_cast<std::uint64_t>(id - 1);
  ExtendedMessage em;
  em.sender_bits.assign(static_cast<std::size_t>(w), '0');
  em.chunk.assign(static_cast<std::size_t>(w), '0');
  for (std::int64_t b = 0; b < w; ++b) {
    if ((val >> (bits - 1 - b)) & 1u) em.sender_bits[static_cast<std::size_t>(b)] = '1';
  }
  em.first_flag = (val >> w) & 1u;
  for (std::int64_t b = 0; b < w; ++b) {
    if ((val >> (w - 1 - b)) & 1u) em.chunk[static_cast<std::size_t>(b)] = '1';
  }
  return em;
}

inline std::int64_t extended_sender(const ExtendedMessage& em) {
  std::uint64_t val = 0;
  for (const char ch : em.sender_bits) val = (val << 1) | (ch == '1' ? 1u : 0u);
  return static_cast<std::int64_t>(val) + 1;
}

struct ReassembledMessage {
  bool complete = false;
  std::string bits;  // best-effort payload concatenation (may be partial)
};

/// Rebuilds a message from one sender's decode stream, in arrival order.
/// Consecutive duplicate chunks (the same chunk decoded several times within
/// one periodic repetition) collapse to one.  The message starts at the first
/// flag-1 chunk; it is complete when a second flag-1 run appears (cycle
/// closed) or, for single-chunk messages, when the flag-1 chunk itself was
/// received more than once.
inline ReassembledMessage reassemble_message(
    const std::vector<ExtendedMessage>& chunks) {
  for (const auto& em : chunks) {
    if (em.sender_bits != chunks.front().sender_bits) {
      throw std::invalid_argument("reassemble_message: mixed senders");
    }
  }
  // Collapse consecutive duplicates, keeping each run's length.
  std::vector<std::pair<ExtendedMessage, std::int64_t>> runs;
  for (const auto& em : chunks) {
    if (!runs.empty() && runs.back().first == em) {
      ++runs.back().second;
    } else {
      runs.emplace_back(em, 1);
    }
  }
  ReassembledMessage out;
  std::size_t start = runs.size();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].first.first_flag) {
      start = i;
      break;
    }
  }
  if (start == runs.size()) return out;  // no first chunk seen yet
  std::size_t end = runs.size();
  for (std::size_t i = start + 1; i < runs.size(); ++i) {
    if (runs[i].first.first_flag) {
      end = i;
      out.complete = true;
      break;
    }
  }
  if (!out.complete && runs[start].second >= 2) {
    out.complete = true;  // one-chunk message seen repeatedly
  }
  for (std::size_t i = start; i < end; ++i) out.bits += runs[i].first.chunk;
  return out;
}

struct BroadcastEvent {
  std::int64_t round = 0;
  std::int64_t receiver = 0;
  std::int64_t sender = 0;
  ExtendedMessage chunk;
};

struct BroadcastResult {
  std::vector<BroadcastEvent> events;  // in (round, receiver) order
  // receiver -> sender -> reassembled message at horizon
  std::map<std::int64_t, std::map<std::int64_t, ReassembledMessage>> received;
};

/// Local-broadcast variant: in its q-th periodic repetition a node uses its
/// (q mod #chunks)-th extended message as its identity in the larger code
/// universe, beeping that id's codeword expanded with that id's block id.
/// Receivers decode ids back to chunks and reassemble per sender at the
/// horizon.  Requires the code universe to contain all 2^(2w+1) extended ids.
inline BroadcastResult simulate_local_broadcast(
    const Graph& g, const WakeSchedule& wake, const CodeMatrix& code,
    const std::map<std::int64_t, std::string>& messages, std::int64_t horizon) {
  detail::validate_schedule(g, wake);
  detail::validate_code_supports(g, code);
  if (horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
  const std::int64_t w = block_width(g.n_ids);
  if (w < 1) {
    throw std::invalid_argument("simulate_local_broadcast: universe too small");
  }
  const std::int64_t ext_universe = std::int64_t{1} << (2 * w + 1);
  if (code.params.n < ext_universe) {
    throw std::invalid_argument(
        "simulate_local_broadcast: code universe smaller than the extended-id "
        "universe 2^(2w+1)");
  }
  const std::int64_t n_code = code.params.n;
  const std::int64_t w_code = block_width(n_code);
  const std::int64_t blk = 7 + 2 * w_code;
  const std::int64_t period = code.t * blk;
  const std::uint64_t win_mask = (std::uint64_t{1} << blk) - 1;

  const std::size_t m = g.nodes.size();
  std::map<std::int64_t, std::size_t> index_of;
  for (std::size_t i = 0; i < m; ++i) index_of[g.nodes[i]] = i;
  std::vector<std::vector<std::size_t>> neighbors(m);
  for (const auto& e : g.edges) {
    neighbors[index_of[e.first]].push_back(index_of[e.second]);
    neighbors[index_of[e.second]].push_back(index_of[e.first]);
  }

  // Per node, per chunk: the expanded transmission pattern of one period.
  std::vector<std::vector<std::vector<std::uint8_t>>> expanded(m);
  std::vector<std::int64_t> wake_at(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t v = g.nodes[i];
    wake_at[i] = wake.at(v);
    const auto mit = messages.find(v);
    if (mit == messages.end()) {
      throw std::invalid_argument("simulate_local_broadcast: node has no message");
    }
    const auto exts = extended_messages(v, mit->second, g.n_ids);
    for (const auto& em : exts) {
      const std::int64_t id = extended_to_id(em);
      const BitVector ex = expand_codeword(
          code.column(static_cast<std::size_t>(id - 1)), block_id(id, n_code));
      std::vector<std::uint8_t> bytes(static_cast<std::size_t>(period));
      for (std::int64_t p = 0; p < period; ++p) {
        bytes[static_cast<std::size_t>(p)] = ex.get(static_cast<std::size_t>(p));
      }
      expanded[i].push_back(std::move(bytes));
    }
  }

  std::unordered_map<std::uint64_t, std::int64_t> decode;
  for (std::int64_t v = 1; v <= n_code; ++v) {
    decode[detail::pattern_of(block_id(v, n_code))] = v;
  }

  std::vector<std::uint64_t> win(m, 0);
  std::vector<std::uint8_t> beep(m, 0);
  // Per (receiver, sender): the raw ordered decode stream.
  std::map<std::int64_t, std::map<std::int64_t, std::vector<ExtendedMessage>>>
      streams;
  BroadcastResult out;

  for (std::int64_t round = 0; round < horizon; ++round) {
    for (std::size_t i = 0; i < m; ++i) {
      beep[i] = 0;
      if (round < wake_at[i]) continue;
      const std::int64_t local = round - wake_at[i];
      const auto& chunks = expanded[i];
      const std::size_t q =
          static_cast<std::size_t>((local / period) %
                                   static_cast<std::int64_t>(chunks.size()));
      beep[i] = chunks[q][static_cast<std::size_t>(local % period)];
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (round < wake_at[i]) continue;
      std::uint8_t heard = beep[i];
      for (const auto nb : neighbors[i]) heard |= beep[nb];
      const std::int64_t p = (round - wake_at[i]) % period;
      if (p == 0) win[i] = 0;
      win[i] = ((win[i] << 1) | heard) & win_mask;
      const auto hit = decode.find(win[i]);
      if (hit == decode.end()) continue;
      const auto em = extended_from_id(hit->second, w);
      if (!em.has_value()) continue;  // beyond the extended universe
      const std::int64_t sender = extended_sender(*em);
      const std::int64_t receiver = g.nodes[i];
      if (sender == receiver || sender > g.n_ids) continue;
      streams[receiver][sender].push_back(*em);
      out.events.push_back(BroadcastEvent{round, receiver, sender, *em});
    }
  }

  for (const auto v : g.nodes) out.received[v];
  for (const auto& [receiver, per_sender] : streams) {
    for (const auto& [sender, stream] : per_sender) {
      out.received[receiver][sender] = reassemble_message(stream);
    }
  }
  return out;
}

}  // namespace ursc
