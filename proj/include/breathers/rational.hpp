#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "breathers/ball.hpp"

// Exact rational carrier for the table parameters. All model constants are
// small rationals; they stay exact until converted to a Ball once per run.

namespace breathers {

struct Rat {
  __int128 n = 0;
  __int128 d = 1;

  Rat() = default;
  Rat(long v) : n(v), d(1) {}
  Rat(__int128 num, __int128 den) : n(num), d(den) { normalize(); }

  static __int128 igcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a;
  }

  void normalize() {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = igcd(n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > (__int128)1 << 100 || -n > (__int128)1 << 100 || d > (__int128)1 << 100)
      throw OverflowError("rational overflow");
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.n * b.n, a.d * b.d); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.n == 0) throw std::invalid_argument("rational division by zero");
    return Rat(a.n * b.d, a.d * b.n);
  }
  Rat operator-() const { return Rat(-n, d); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.n * b.d < b.n * a.d; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  bool is_zero() const { return n == 0; }
  Rat abs() const { return n < 0 ? Rat(-n, d) : *this; }
  double approx() const { return (double)n / (double)d; }

  // Parses "p/q", "p", or "2^-20" style dyadics written as p/q.
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    auto toi = [](const std::string& t) -> __int128 {
      if (t.empty()) throw std::invalid_argument("empty rational component");
      bool neg = t[0] == '-';
      size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      __int128 v = 0;
      for (; i < t.size(); ++i) {
        if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad rational: " + t);
        v = v * 10 + (t[i] - '0');
      }
      return neg ? -v : v;
    };
    if (slash == std::string::npos) return Rat(toi(s), 1);
    return Rat(toi(s.substr(0, slash)), toi(s.substr(slash + 1)));
  }

  std::string str() const {
    auto is = [](__int128 v) {
      if (v == 0) return std::string("0");
      bool neg = v < 0;
      if (neg) v = -v;
      std::string t;
      while (v) { t.insert(t.begin(), char('0' + (int)(v % 10))); v /= 10; }
      return neg ? "-" + t : t;
    };
    return d == 1 ? is(n) : is(n) + "/" + is(d);
  }
};

namespace detail {
template <class B>
Ball<B> ball_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  Ball<B> acc = Ball<B>::from_long(0);
  for (int c = 3; c >= 0; --c) {
    long chunk = (long)(std::uint32_t)(u >> (32 * c));
    acc = scale2(acc, 32) + Ball<B>::from_long(chunk);
  }
  return neg ? -acc : acc;
}
}  // namespace detail

template <class B>
Ball<B> ball_of(const Rat& q) {
  // exact path for dyadic rationals with a small numerator
  if ((q.d & (q.d - 1)) == 0 && (q.n < ((__int128)1 << 62)) && (-q.n < ((__int128)1 << 62))) {
    int e = 0;
    __int128 d = q.d;
    while (d > 1) { d >>= 1; ++e; }
    return scale2(Ball<B>::from_long((long)q.n), -e);
  }
  Ball<B> num = detail::ball_from_i128<B>(q.n);
  Ball<B> den = detail::ball_from_i128<B>(q.d);
  return num / den;
}

}  // namespace breathers
