#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ursc {

/// Exact rational number with a positive denominator, kept in lowest terms.
///
/// All code-checking verdicts in this library are decided by exact
/// cross-multiplied integer comparisons, never by floating point; this type
/// carries the parameters (alpha, eps, c, per-trial means) those verdicts are
/// built from.  Intermediate products are evaluated in 128-bit arithmetic, so
/// numerators/denominators up to ~2^62 are safe.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static Rational from_int(std::int64_t v) { return Rational(v, 1); }

  /// Parses "p/q" or a bare integer "p".  q must be nonzero.
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(parse_int(text), 1);
      }
      return Rational(parse_int(text.substr(0, slash)),
                      parse_int(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<__int128>(a.num_) * b.num_,
                        static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<__int128>(a.num_) * b.den_ +
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }

 private:
  static std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty");
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  }

  static Rational make_reduced(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
      throw std::overflow_error("Rational: value out of 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_;
  std::int64_t den_;
};

/// Floor of a/b for b > 0, correct for negative a (rounds toward -infinity).
inline std::int64_t floor_div(__int128 a, __int128 b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be > 0");
  __int128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  if (q > INT64_MAX || q < INT64_MIN) {
    throw std::overflow_error("floor_div: result out of range");
  }
  return static_cast<std::int64_t>(q);
}

/// True iff lhs <= r * rhs, decided exactly.
inline bool leq_scaled(std::int64_t lhs, const Rational& r, std::int64_t rhs) {
  return static_cast<__int128>(lhs) * r.den() <=
         static_cast<__int128>(r.num()) * rhs;
}

/// True iff lhs < r * rhs, decided exactly.
inline bool lt_scaled(std::int64_t lhs, const Rational& r, std::int64_t rhs) {
  return static_cast<__int128>(lhs) * r.den() <
         static_cast<__int128>(r.num()) * rhs;
}

}  // namespace ursc
