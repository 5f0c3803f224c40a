#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coresched {

// Exact rational arithmetic on int64. Port loads under heterogeneous speeds
// are sums of size/s_h terms; floats would make argmin tie-breaking depend on
// rounding, so every load, bound and makespan in this project is a Rat.
// Intermediates run through __int128 and results must reduce back into int64,
// which holds comfortably for speeds on the 1/64 grid and integer demands.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rat(long long n, long long d) { *this = make(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rat: division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // "p/q", or just "p" for integers.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static std::optional<Rat> parse(std::string_view text);

 private:
  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("Rat: value out of int64 range");
    Rat r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::optional<Rat> Rat::parse(std::string_view text) {
  auto parse_ll = [](std::string_view s, long long* out) {
    if (s.empty()) return false;
    size_t pos = 0;
    bool neg = s[0] == '-';
    if (neg) pos = 1;
    if (pos == s.size()) return false;
    long long v = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9') return false;
      if (v > (INT64_MAX - (s[pos] - '0')) / 10) return false;
      v = v * 10 + (s[pos] - '0');
    }
    *out = neg ? -v : v;
    return true;
  };
  size_t slash = text.find('/');
  long long n = 0;
  long long d = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(text, &n)) return std::nullopt;
  } else {
    if (!parse_ll(text.substr(0, slash), &n)) return std::nullopt;
    if (!parse_ll(text.substr(slash + 1), &d)) return std::nullopt;
    if (d == 0) return std::nullopt;
  }
  return Rat(n, d);
}

}  // namespace coresched
