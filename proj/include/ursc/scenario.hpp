#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ursc/beeping.hpp"
#include "ursc/contention.hpp"

namespace ursc {

/// Beeping scenario file: graph, wake schedule, horizon, code reference, and
/// (for local broadcast) per-node messages as hex-encoded bit strings.
struct BeepScenario {
  std::vector<std::int64_t> nodes;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  WakeSchedule wake;
  std::int64_t horizon = 0;
  std::string code_file;
  std::map<std::int64_t, std::string> messages;  // id -> bit string; empty =>
                                                 // neighborhood-learning mode
  std::optional<std::int64_t> n_ids;             // universe override
};

struct CrScenario {
  std::vector<std::int64_t> stations;
  std::map<std::int64_t, std::int64_t> delta;
  std::int64_t s = 1;
  std::int64_t horizon = 0;
  std::string code_file;
};

/// Hex string -> bit string, 4 bits per hex digit, most significant bit first.
inline std::string hex_to_bits(const std::string& hex) {
  if (hex.empty()) throw std::invalid_argument("hex_to_bits: empty string");
  std::string out;
  out.reserve(hex.size() * 4);
  for (const char ch : hex) {
    int v = 0;
    if (ch >= '0' && ch <= '9') {
      v = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      v = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      v = ch - 'A' + 10;
    } else {
      throw std::invalid_argument("hex_to_bits: invalid hex digit");
    }
    for (int b = 3; b >= 0; --b) out.push_back((v >> b) & 1 ? '1' : '0');
  }
  return out;
}

inline std::string bits_to_hex(const std::string& bits) {
  if (bits.size() % 4 != 0) {
    throw std::invalid_argument("bits_to_hex: length must be a multiple of 4");
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bits.size() / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const char ch = bits[i + b];
      if (ch != '0' && ch != '1') {
        throw std::invalid_argument("bits_to_hex: invalid bit");
      }
      v = (v << 1) | (ch == '1');
    }
    out.push_back(kDigits[v]);
  }
  return out;
}

namespace detail {

inline std::int64_t require_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw std::invalid_argument(std::string("scenario: missing integer field '") +
                                key + "'");
  }
  return j[key].get<std::int64_t>();
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw std::invalid_argument(std::string("scenario: missing string field '") +
                                key + "'");
  }
  return j[key].get<std::string>();
}

inline std::map<std::int64_t, std::int64_t> parse_round_map(
    const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_object()) {
    throw std::invalid_argument(std::string("scenario: missing object field '") +
                                key + "'");
  }
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& [k, v] : j[key].items()) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("scenario: round map values must be integers");
    }
    out[std::stoll(k)] = v.get<std::int64_t>();
  }
  return out;
}

}  // namespace detail

inline BeepScenario parse_beep_scenario(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: bad JSON: ") + e.what());
  }
  BeepScenario sc;
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw std::invalid_argument("scenario: missing array field 'nodes'");
  }
  for (const auto& v : j["nodes"]) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("scenario: node ids must be integers");
    }
    sc.nodes.push_back(v.get<std::int64_t>());
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) {
      throw std::invalid_argument("scenario: 'edges' must be an array");
    }
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw std::invalid_argument("scenario: each edge must be [a, b]");
      }
      sc.edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
    }
  }
  sc.wake = detail::parse_round_map(j, "wake");
  sc.horizon = detail::require_int(j, "horizon");
  sc.code_file = detail::require_string(j, "code_file");
  if (j.contains("messages") && !j["messages"].is_null()) {
    if (!j["messages"].is_object()) {
      throw std::invalid_argument("scenario: 'messages' must be an object");
    }
    for (const auto& [k, v] : j["messages"].items()) {
      if (!v.is_string()) {
        throw std::invalid_argument("scenario: messages must be hex strings");
      }
      sc.messages[std::stoll(k)] = hex_to_bits(v.get<std::string>());
    }
  }
  if (j.contains("n_ids")) sc.n_ids = detail::require_int(j, "n_ids");
  return sc;
}

/// The scenario's graph; the id universe defaults to the largest node id.
inline Graph scenario_graph(const BeepScenario& sc) {
  std::int64_t n_ids = 0;
  for (const auto v : sc.nodes) n_ids = std::max(n_ids, v);
  if (sc.n_ids.has_value()) n_ids = *sc.n_ids;
  return make_graph(n_ids, sc.nodes, sc.edges);
}

inline CrScenario parse_cr_scenario(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: bad JSON: ") + e.what());
  }
  CrScenario sc;
  if (!j.contains("stations") || !j["stations"].is_array()) {
    throw std::invalid_argument("scenario: missing array field 'stations'");
  }
  for (const auto& v : j["stations"]) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("scenario: station ids must be integers");
    }
    sc.stations.push_back(v.get<std::int64_t>());
  }
  sc.delta = detail::parse_round_map(j, "delta");
  sc.s = detail::require_int(j, "s");
  sc.horizon = detail::require_int(j, "horizon");
  sc.code_file = detail::require_string(j, "code_file");
  return sc;
}

}  // namespace ursc
