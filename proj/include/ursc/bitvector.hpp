#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ursc {

/// Fixed-length binary vector packed into 64-bit words.
///
/// Position 0 is the least significant bit of word 0.  Bits at or beyond the
/// logical length are kept zero at all times, so whole-word operations
/// (popcount, AND, OR) need no per-call masking.  Vectors of length zero are
/// rejected: every codeword in this library has at least one position.
class BitVector {
 public:
  explicit BitVector(std::size_t length)
      : len_(length), words_((length + 63) / 64, 0) {
    if (length == 0) throw std::invalid_argument("BitVector: length 0");
  }

  /// Builds a vector from a string of '0'/'1', position 0 first.
  static BitVector from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i, true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("BitVector: bad character in bit string");
      }
    }
    return v;
  }

  /// Builds a vector of the given length with ones exactly at `positions`.
  static BitVector from_positions(std::size_t length,
                                  const std::vector<std::size_t>& positions) {
    BitVector v(length);
    for (std::size_t p : positions) v.set(p, true);
    return v;
  }

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.len_ == b.len_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVector& a, const BitVector& b) {
    return !(a == b);
  }

  /// Bitwise AND of two vectors of equal length.
  friend BitVector operator&(const BitVector& a, const BitVector& b) {
    a.check_same_length(b);
    BitVector out(a.len_);
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      out.words_[i] = a.words_[i] & b.words_[i];
    }
    return out;
  }

  /// Bitwise OR (superposition of two aligned vectors).
  friend BitVector operator|(const BitVector& a, const BitVector& b) {
    a.check_same_length(b);
    BitVector out(a.len_);
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      out.words_[i] = a.words_[i] | b.words_[i];
    }
    return out;
  }

  BitVector& operator|=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
    }
    return *this;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("BitVector: index out of range");
  }
  void check_same_length(const BitVector& other) const {
    if (len_ != other.len_) {
      throw std::invalid_argument("BitVector: length mismatch");
    }
  }

  std::size_t len_;
  std::vector<std::uint64_t> words_;

  friend BitVector cyclic_shift(const BitVector& x, long long i);
};

/// Number of ones in the whole vector.
inline std::int64_t weight(const BitVector& x) {
  std::int64_t total = 0;
  for (std::uint64_t w : x.words()) total += std::popcount(w);
  return total;
}

/// Number of ones at positions b1..b2, both ends included.
inline std::int64_t interval_weight(const BitVector& x, std::size_t b1,
                                    std::size_t b2) {
  if (b1 > b2 || b2 >= x.size()) {
    throw std::out_of_range("interval_weight: bad interval");
  }
  const auto& w = x.words();
  const std::size_t first = b1 >> 6, last = b2 >> 6;
  const std::uint64_t lo_mask = ~std::uint64_t{0} << (b1 & 63);
  const std::uint64_t hi_mask =
      ~std::uint64_t{0} >> (63 - (b2 & 63));
  if (first == last) {
    return std::popcount(w[first] & lo_mask & hi_mask);
  }
  std::int64_t total = std::popcount(w[first] & lo_mask);
  for (std::size_t i = first + 1; i < last; ++i) total += std::popcount(w[i]);
  total += std::popcount(w[last] & hi_mask);
  return total;
}

/// Cyclic shift: result[r] = x[(r + i) mod t].  Negative and out-of-range
/// shift amounts are normalized mod t, so the operation is total in i.
inline BitVector cyclic_shift(const BitVector& x, long long i) {
  const std::size_t t = x.size();
  const std::size_t s =
      static_cast<std::size_t>(((i % static_cast<long long>(t)) +
                                static_cast<long long>(t)) %
                               static_cast<long long>(t));
  if (s == 0) return x;
  BitVector out(t);
  const auto& w = x.words_;
  auto& o = out.words_;
  const std::size_t nw = w.size();

  // result = (x >> s) | (x << (t - s)), on the t-bit register.
  const std::size_t rq = s >> 6, rr = s & 63;
  for (std::size_t k = 0; k < nw; ++k) {
    const std::uint64_t lo = (k + rq < nw) ? w[k + rq] : 0;
    const std::uint64_t hi = (k + rq + 1 < nw) ? w[k + rq + 1] : 0;
    o[k] = rr ? (lo >> rr) | (hi << (64 - rr)) : lo;
  }
  const std::size_t l = t - s;
  const std::size_t lq = l >> 6, lr = l & 63;
  for (std::size_t k = nw; k-- > lq;) {
    const std::uint64_t lo = w[k - lq];
    const std::uint64_t hi = (k >= lq + 1) ? w[k - lq - 1] : 0;
    o[k] |= lr ? (lo << lr) | (hi >> (64 - lr)) : lo;
  }
  // Clear bits at positions >= t introduced by the left part.
  if (t & 63) {
    o[nw - 1] &= ~std::uint64_t{0} >> (64 - (t & 63));
  }
  return out;
}

/// Slipped vector z(-1) | z | z(+1): every run of ones widens by one position
/// on each side (cyclically).
inline BitVector slipped(const BitVector& z) {
  return cyclic_shift(z, -1) | z | cyclic_shift(z, 1);
}

/// Superposition (OR) of cyclically shifted vectors.  All inputs must share
/// one length; the list must be nonempty (an empty superposition has no
/// well-defined length).
inline BitVector superposition(
    const std::vector<std::pair<BitVector, long long>>& parts) {
  if (parts.empty()) {
    throw std::invalid_argument("superposition: empty input");
  }
  BitVector acc = cyclic_shift(parts.front().first, parts.front().second);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc |= cyclic_shift(parts[i].first, parts[i].second);
  }
  return acc;
}

}  // namespace ursc
