#pragma once

// Exact rational arithmetic over 128-bit integers.
//
// Every operation is exact. Intermediate products that would not fit in
// 128 bits raise std::overflow_error instead of wrapping, so a value that
// comes out of this type is always the true rational result.

#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mmr {

using int128 = __int128;
using uint128 = unsigned __int128;

namespace detail {

[[noreturn]] inline void throw_overflow() {
  throw std::overflow_error("mmr::Rational: 128-bit overflow");
}

inline int ctz128(uint128 v) {
  const auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

inline uint128 gcd128(uint128 a, uint128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = ctz128(a | b);
  a >>= ctz128(a);
  do {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline uint128 uabs(int128 v) {
  return v < 0 ? uint128(0) - static_cast<uint128>(v) : static_cast<uint128>(v);
}

inline int128 gcd_signed(int128 a, int128 b) {
  return static_cast<int128>(gcd128(uabs(a), uabs(b)));
}

inline int128 mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw_overflow();
  return r;
}

inline int128 add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw_overflow();
  return r;
}

inline int128 sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw_overflow();
  return r;
}

// Floor division for b > 0.
inline int128 floor_div(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

inline std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  uint128 u = uabs(v);
  std::string out;
  while (u != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

inline int128 parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  int128 v = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    v = add(mul(v, 10), c - '0');
  }
  return neg ? -v : v;
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int v) : num_(v) {}            // NOLINT(google-explicit-constructor)
  constexpr Rational(long v) : num_(v) {}           // NOLINT(google-explicit-constructor)
  constexpr Rational(long long v) : num_(v) {}      // NOLINT(google-explicit-constructor)
  constexpr Rational(unsigned long v) : num_(static_cast<int128>(v)) {}  // NOLINT
  constexpr Rational(unsigned long long v) : num_(static_cast<int128>(v)) {}  // NOLINT

  Rational(int128 num, int128 den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("mmr::Rational: zero denominator");
    normalize();
  }

  /// Parses "p", "p/q" or a finite decimal such as "-2.75".
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return Rational(detail::parse_int(trim(text.substr(0, slash))),
                      detail::parse_int(trim(text.substr(slash + 1))));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string digits(text.substr(0, dot));
      const std::string_view frac = text.substr(dot + 1);
      digits.append(frac);
      if (digits.empty() || digits == "-" || digits == "+") {
        throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
      }
      int128 den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den = detail::mul(den, 10);
      return Rational(detail::parse_int(digits), den);
    }
    return Rational(detail::parse_int(text), 1);
  }

  [[nodiscard]] int128 num() const { return num_; }
  [[nodiscard]] int128 den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }

  [[nodiscard]] int128 floor() const { return detail::floor_div(num_, den_); }

  [[nodiscard]] double to_double() const {
    // Split to keep precision for large numerators.
    const int128 q = detail::floor_div(num_, den_);
    const int128 r = num_ - q * den_;
    return static_cast<double>(q) + static_cast<double>(r) / static_cast<double>(den_);
  }

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const {
    if (den_ == 1) return detail::to_string(num_);
    return detail::to_string(num_) + "/" + detail::to_string(den_);
  }

  /// Decimal rendering rounded half away from zero to `digits` places.
  [[nodiscard]] std::string decimal(int digits = 6) const {
    int128 scale = 1;
    for (int i = 0; i < digits; ++i) scale = detail::mul(scale, 10);
    const uint128 a = detail::uabs(num_);
    const uint128 d = static_cast<uint128>(den_);
    const uint128 whole = a / d;
    const uint128 rem = a % d;
    // rem * scale can exceed 128 bits only for absurd denominators; fall back to double.
    uint128 frac_scaled;
    if (rem != 0 && static_cast<uint128>(scale) > std::numeric_limits<uint128>::max() / rem) {
      frac_scaled = static_cast<uint128>(
          static_cast<double>(rem) / static_cast<double>(d) * static_cast<double>(scale) + 0.5);
    } else {
      frac_scaled = (rem * static_cast<uint128>(scale) * 2 + d) / (2 * d);
    }
    uint128 w = whole;
    if (frac_scaled >= static_cast<uint128>(scale)) {
      ++w;
      frac_scaled -= static_cast<uint128>(scale);
    }
    std::string out = (num_ < 0 && (w != 0 || frac_scaled != 0)) ? "-" : "";
    out += detail::to_string(static_cast<int128>(w));
    if (digits > 0) {
      std::string f = detail::to_string(static_cast<int128>(frac_scaled));
      out += '.';
      out.append(static_cast<std::size_t>(digits) - f.size(), '0');
      out += f;
    }
    return out;
  }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::sub(0, num_);
    r.den_ = den_;
    return r;
  }
  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { return *this = add(*this, o, false); }
  Rational& operator-=(const Rational& o) { return *this = add(*this, o, true); }
  Rational& operator*=(const Rational& o) { return *this = mul(*this, o); }
  Rational& operator/=(const Rational& o) { return *this = div(*this, o); }

  friend Rational operator+(const Rational& a, const Rational& b) { return add(a, b, false); }
  friend Rational operator-(const Rational& a, const Rational& b) { return add(a, b, true); }
  friend Rational operator*(const Rational& a, const Rational& b) { return mul(a, b); }
  friend Rational operator/(const Rational& a, const Rational& b) { return div(a, b); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa <=> sb;
    int128 l;
    int128 r;
    if (!__builtin_mul_overflow(a.num_, b.den_, &l) && !__builtin_mul_overflow(b.num_, a.den_, &r)) {
      return l <=> r;
    }
    return compare_slow(a.num_, a.den_, b.num_, b.den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = detail::sub(0, num_);
      den_ = detail::sub(0, den_);
    }
    if (den_ != 1) {
      const int128 g = detail::gcd_signed(num_, den_);
      if (g > 1) {
        num_ /= g;
        den_ /= g;
      }
    }
  }

  static Rational add(const Rational& a, const Rational& b, bool negate_b) {
    Rational r;
    if (a.den_ == 1 && b.den_ == 1) {
      r.num_ = negate_b ? detail::sub(a.num_, b.num_) : detail::add(a.num_, b.num_);
      return r;
    }
    const int128 bn = negate_b ? detail::sub(0, b.num_) : b.num_;
    if (a.den_ == b.den_) {
      r.num_ = detail::add(a.num_, bn);
      r.den_ = a.den_;
      r.normalize();
      return r;
    }
    const int128 g = detail::gcd_signed(a.den_, b.den_);
    const int128 ad = a.den_ / g;
    const int128 bd = b.den_ / g;
    const int128 t = detail::add(detail::mul(a.num_, bd), detail::mul(bn, ad));
    const int128 g2 = t == 0 ? g : detail::gcd_signed(t, g);
    r.num_ = t / g2;
    r.den_ = detail::mul(ad, b.den_ / g2);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  static Rational mul(const Rational& a, const Rational& b) {
    Rational r;
    if (a.den_ == 1 && b.den_ == 1) {
      r.num_ = detail::mul(a.num_, b.num_);
      return r;
    }
    if (a.num_ == 0 || b.num_ == 0) return r;
    const int128 g1 = detail::gcd_signed(a.num_, b.den_);
    const int128 g2 = detail::gcd_signed(b.num_, a.den_);
    r.num_ = detail::mul(a.num_ / g1, b.num_ / g2);
    r.den_ = detail::mul(a.den_ / g2, b.den_ / g1);
    return r;
  }

  static Rational div(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("mmr::Rational: division by zero");
    Rational inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    if (inv.den_ < 0) {
      inv.num_ = -inv.num_;
      inv.den_ = -inv.den_;
    }
    return mul(a, inv);
  }

  // Exact comparison of a/b and c/d (b, d > 0) via continued-fraction expansion.
  static std::strong_ordering compare_slow(int128 a, int128 b, int128 c, int128 d) {
    bool flipped = false;
    for (;;) {
      const int128 qa = detail::floor_div(a, b);
      const int128 qc = detail::floor_div(c, d);
      if (qa != qc) {
        auto o = qa <=> qc;
        return flipped ? 0 <=> o : o;
      }
      a -= qa * b;
      c -= qc * d;
      if (a == 0 || c == 0) {
        auto o = a == 0 ? (c == 0 ? std::strong_ordering::equal : std::strong_ordering::less)
                        : std::strong_ordering::greater;
        return flipped ? 0 <=> o : o;
      }
      // a/b and c/d now lie in (0,1); compare reciprocals with reversed order.
      std::swap(a, b);
      std::swap(c, d);
      flipped = !flipped;
    }
  }

  int128 num_ = 0;
  int128 den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace mmr

template <>
struct std::hash<mmr::Rational> {
  std::size_t operator()(const mmr::Rational& r) const noexcept {
    const auto mix = [](std::uint64_t h, std::uint64_t v) {
      return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    };
    std::uint64_t h = 0;
    h = mix(h, static_cast<std::uint64_t>(r.num()));
    h = mix(h, static_cast<std::uint64_t>(static_cast<mmr::uint128>(r.num()) >> 64));
    h = mix(h, static_cast<std::uint64_t>(r.den()));
    h = mix(h, static_cast<std::uint64_t>(static_cast<mmr::uint128>(r.den()) >> 64));
    return static_cast<std::size_t>(h);
  }
};
