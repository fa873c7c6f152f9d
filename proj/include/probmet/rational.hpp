#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace probmet {

/// Exact rational on int64 storage, always reduced, denominator > 0.
/// Intermediates run through __int128; anything that cannot be stored
/// reduced in int64 throws std::overflow_error instead of wrapping.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(std::int64_t num, std::int64_t den) { assign(num, den); }
  // NOLINTNEXTLINE(google-explicit-constructor): integers are rationals.
  Rat(std::int64_t num) : num_(num) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from_i128(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from_i128(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  /// Exact three-way comparison via cross multiplication.
  friend int cmp(const Rat& a, const Rat& b) {
    __int128 l = i128(a.num_) * b.den_;
    __int128 r = i128(b.num_) * a.den_;
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

  /// "5", "5/3"; a leading '-' only for negative values (never produced by
  /// the file formats, which are nonnegative throughout).
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  /// Parses the nonnegative grammar: digits, or digits '/' digits.
  /// Unreduced input is accepted and canonicalized. Anything else
  /// (signs, spaces, decimals, empty fields) throws std::invalid_argument.
  static Rat parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(parse_digits(s), 1);
    return Rat(parse_digits(s.substr(0, slash)),
               parse_digits(s.substr(slash + 1)));
  }

 private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static Rat from_i128(__int128 n, __int128 d) {
    Rat r;
    r.assign128(n, d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) {
    assign128(i128(n), i128(d));
  }

  void assign128(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational exceeds 64-bit storage");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  static std::int64_t parse_digits(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number field");
    __int128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("malformed rational: expected digits, got \"" +
                                    std::string(s) + "\"");
      v = v * 10 + (c - '0');
      if (v > INT64_MAX) throw std::overflow_error("integer literal too large");
    }
    return static_cast<std::int64_t>(v);
  }

  std::int64_t num_{0};
  std::int64_t den_{1};
};

/// A point of [0, +inf]: a nonnegative rational or the absorbing infinity.
/// Infinity is a distinct symbol, maximal for comparison, absorbing for +.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  ExtReal(const Rat& v) : val_(v) {
    if (v.is_negative()) throw std::invalid_argument("negative distance");
  }
  // NOLINTNEXTLINE(google-explicit-constructor)
  ExtReal(std::int64_t v) : ExtReal(Rat(v)) {}

  static ExtReal infinity() {
    ExtReal e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && val_.is_zero(); }

  /// Finite payload; throws on infinity.
  const Rat& finite() const {
    if (inf_) throw std::logic_error("finite() on infinity");
    return val_;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.val_ + b.val_);
  }

  friend int cmp(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return b.inf_ ? 0 : 1;
    if (b.inf_) return -1;
    return cmp(a.val_, b.val_);
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return cmp(a, b) == 0;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) {
    return cmp(a, b) != 0;
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    return cmp(a, b) < 0;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) {
    return cmp(a, b) <= 0;
  }
  friend bool operator>(const ExtReal& a, const ExtReal& b) {
    return cmp(a, b) > 0;
  }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) {
    return cmp(a, b) >= 0;
  }

  std::string str() const { return inf_ ? "inf" : val_.str(); }

  /// Grammar: "inf", "5", "5/3". Decimals and signs are rejected.
  static ExtReal parse(std::string_view s) {
    if (s == "inf") return infinity();
    return ExtReal(Rat::parse(s));
  }

 private:
  bool inf_{false};
  Rat val_{};
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a >= b ? a : b; }

/// A rational in [0, 1]; the value scale of distribution functions and the
/// level scale of level families.
class UnitVal {
 public:
  constexpr UnitVal() = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  UnitVal(const Rat& v) : val_(v) {
    if (v.is_negative() || v > Rat(1))
      throw std::invalid_argument("unit value outside [0,1]: " + v.str());
  }
  UnitVal(std::int64_t num, std::int64_t den) : UnitVal(Rat(num, den)) {}

  static UnitVal zero() { return UnitVal(); }
  static UnitVal one() { return UnitVal(Rat(1)); }

  const Rat& rat() const { return val_; }
  bool is_zero() const { return val_.is_zero(); }
  bool is_one() const { return val_ == Rat(1); }

  UnitVal one_minus() const { return UnitVal(Rat(1) - val_); }

  friend int cmp(const UnitVal& a, const UnitVal& b) {
    return cmp(a.val_, b.val_);
  }
  friend bool operator==(const UnitVal& a, const UnitVal& b) {
    return a.val_ == b.val_;
  }
  friend bool operator!=(const UnitVal& a, const UnitVal& b) {
    return !(a == b);
  }
  friend bool operator<(const UnitVal& a, const UnitVal& b) {
    return cmp(a, b) < 0;
  }
  friend bool operator<=(const UnitVal& a, const UnitVal& b) {
    return cmp(a, b) <= 0;
  }
  friend bool operator>(const UnitVal& a, const UnitVal& b) {
    return cmp(a, b) > 0;
  }
  friend bool operator>=(const UnitVal& a, const UnitVal& b) {
    return cmp(a, b) >= 0;
  }

  std::string str() const { return val_.str(); }

  static UnitVal parse(std::string_view s) {
    if (s == "inf") throw std::invalid_argument("unit value cannot be inf");
    return UnitVal(Rat::parse(s));
  }

 private:
  Rat val_{};
};

inline UnitVal min(const UnitVal& a, const UnitVal& b) { return a <= b ? a : b; }
inline UnitVal max(const UnitVal& a, const UnitVal& b) { return a >= b ? a : b; }

}  // namespace probmet
