#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ursc/bitvector.hpp"
#include "ursc/params.hpp"
#include "ursc/random.hpp"

namespace ursc {

/// A code: n columns (codewords) of t rows each.
///
/// For sampled codes t equals params.rows (or the explicit target length of a
/// length-limited construction) and params.seed reproduces the bits; for
/// hand-written code files t is whatever the file says and seed is absent.
struct CodeMatrix {
  ConstructionParams params;
  std::int64_t t = 0;
  std::vector<BitVector> columns;

  const BitVector& column(std::int64_t j) const {
    if (j < 0 || j >= static_cast<std::int64_t>(columns.size())) {
      throw std::out_of_range("CodeMatrix: column index out of range");
    }
    return columns[static_cast<std::size_t>(j)];
  }
};

/// Samples a matrix with `rows` rows from the block distribution, column by
/// column from a single seeded stream.  Every bit consumes exactly one draw,
/// so the output is a pure function of (params, rows).
inline CodeMatrix sample_matrix_rows(const ConstructionParams& params,
                                     std::int64_t rows) {
  if (!params.seed.has_value()) {
    throw std::invalid_argument("sample_matrix: params carry no seed");
  }
  if (rows < 1 || rows > params.rows) {
    throw std::invalid_argument("sample_matrix: bad row count");
  }
  CodeMatrix m;
  m.params = params;
  m.t = rows;
  m.columns.reserve(static_cast<std::size_t>(params.n));
  std::mt19937_64 eng(*params.seed);
  for (std::int64_t j = 0; j < params.n; ++j) {
    BitVector col(static_cast<std::size_t>(rows));
    for (std::int64_t r = 0; r < rows; ++r) {
      if (uniform01(eng) < bit_probability(params, r)) {
        col.set(static_cast<std::size_t>(r), true);
      }
    }
    m.columns.push_back(std::move(col));
  }
  return m;
}

/// Samples a full-length matrix (t = params.rows).
inline CodeMatrix sample_matrix(const ConstructionParams& params) {
  return sample_matrix_rows(params, params.rows);
}

namespace detail {

inline std::string seed_field(const ConstructionParams& p) {
  return p.seed.has_value() ? std::to_string(*p.seed) : std::string("none");
}

inline std::int64_t parse_header_int(const std::string& line,
                                     const std::string& key,
                                     std::size_t& cursor) {
  const std::string tag = key + "=";
  const auto at = line.find(tag, cursor);
  if (at == std::string::npos) {
    throw std::runtime_error("code file: missing header field '" + key + "'");
  }
  std::size_t pos = 0;
  const std::string rest = line.substr(at + tag.size());
  const long long v = std::stoll(rest, &pos);
  cursor = at + tag.size() + pos;
  return v;
}

inline std::string parse_header_token(const std::string& line,
                                      const std::string& key,
                                      std::size_t& cursor) {
  const std::string tag = key + "=";
  const auto at = line.find(tag, cursor);
  if (at == std::string::npos) {
    throw std::runtime_error("code file: missing header field '" + key + "'");
  }
  auto end = line.find(' ', at + tag.size());
  if (end == std::string::npos) end = line.size();
  cursor = end;
  return line.substr(at + tag.size(), end - (at + tag.size()));
}

}  // namespace detail

/// Writes the canonical text form:
///
///   URSC 1
///   n=<n> t=<t> alpha=<p>/<q> eps=<p>/<q> c=<p>/<q> seed=<u64|none>
///   <n lines of t characters '0'/'1', column per line, position 0 first>
///
/// The writer is canonical, so read-then-write reproduces a written file
/// byte for byte.
inline void write_matrix(const CodeMatrix& m, std::ostream& out) {
  out << "URSC 1\n";
  out << "n=" << m.params.n << " t=" << m.t
      << " alpha=" << m.params.alpha.to_string()
      << " eps=" << m.params.eps.to_string()
      << " c=" << m.params.c.to_string()
      << " seed=" << detail::seed_field(m.params) << "\n";
  for (const auto& col : m.columns) {
    out << col.to_string() << "\n";
  }
}

inline std::string matrix_to_string(const CodeMatrix& m) {
  std::ostringstream os;
  write_matrix(m, os);
  return os.str();
}

/// Parses the text form.  Malformed input (wrong magic, bad field, wrong
/// column count or length, characters outside {0,1}) raises std::runtime_error.
inline CodeMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "URSC 1") {
    throw std::runtime_error("code file: bad magic line (want 'URSC 1')");
  }
  if (!std::getline(in, line)) {
    throw std::runtime_error("code file: missing header line");
  }
  std::size_t cursor = 0;
  const std::int64_t n = detail::parse_header_int(line, "n", cursor);
  const std::int64_t t = detail::parse_header_int(line, "t", cursor);
  const Rational alpha =
      Rational::parse(detail::parse_header_token(line, "alpha", cursor));
  const Rational eps =
      Rational::parse(detail::parse_header_token(line, "eps", cursor));
  const Rational c =
      Rational::parse(detail::parse_header_token(line, "c", cursor));
  const std::string seed_text =
      detail::parse_header_token(line, "seed", cursor);
  std::optional<std::uint64_t> seed;
  if (seed_text != "none") {
    try {
      std::size_t pos = 0;
      seed = std::stoull(seed_text, &pos);
      if (pos != seed_text.size()) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
      throw std::runtime_error("code file: bad seed field '" + seed_text + "'");
    }
  }
  if (t < 1) throw std::runtime_error("code file: t must be positive");

  CodeMatrix m;
  m.params = make_params(n, alpha, eps, c, seed);
  m.t = t;
  for (std::int64_t j = 0; j < n; ++j) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("code file: expected " + std::to_string(n) +
                               " column lines");
    }
    if (static_cast<std::int64_t>(line.size()) != t) {
      throw std::runtime_error("code file: column line has wrong length");
    }
    try {
      m.columns.push_back(BitVector::from_string(line));
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("code file: column has characters outside {0,1}");
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty()) {
      throw std::runtime_error("code file: trailing content after columns");
    }
  }
  return m;
}

inline CodeMatrix matrix_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

}  // namespace ursc
