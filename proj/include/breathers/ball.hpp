#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "breathers/backend.hpp"

// Midpoint-radius enclosures. A valid Ball represents the closed interval
// [mid - rad, mid + rad]; every operation returns a Ball whose represented set
// contains the exact image of the argument sets.

namespace breathers {

struct DomainViolation : std::runtime_error {
  explicit DomainViolation(const std::string& m) : std::runtime_error(m) {}
};
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& m) : std::runtime_error(m) {}
};

template <class B>
struct Ball {
  using Rep = typename B::Rep;
  Rep mid{B::zero()};
  Rep rad{B::zero()};

  Ball() = default;
  Ball(Rep m, Rep r) : mid(std::move(m)), rad(std::move(r)) {}
  static Ball exact(Rep m) { return Ball{std::move(m), B::zero()}; }
  static Ball from_long(long v) { return exact(B::from_long(v)); }
  static Ball hull(const Rep& lo, const Rep& hi) {
    Rep m = (lo + hi) / B::from_long(2);
    Rep r = std::max<Rep>(B::sub_up(hi, m), B::sub_up(m, lo));
    return Ball{m, r};
  }

  bool valid() const { return B::finite(mid) && B::finite(rad) && !(rad < B::zero()); }
  void check() const {
    if (!valid()) throw OverflowError("ball left the representable range");
  }

  Rep lo() const { return B::sub_dn(mid, rad); }
  Rep hi() const { return B::add_up(mid, rad); }
  Rep mag() const { return B::add_up(B::abs(mid), rad); }  // sup |x|
  Rep mig() const {                                        // inf |x|
    Rep m = B::sub_dn(B::abs(mid), rad);
    return m < B::zero() ? B::zero() : m;
  }
  bool contains_zero() const { return !(lo() > B::zero()) && !(hi() < B::zero()); }
  bool contains(const Rep& x) const { return !(x < lo()) && !(x > hi()); }
  bool is_exact() const { return rad == B::zero(); }
  bool subset_of(const Ball& o) const { return !(lo() < o.lo()) && !(hi() > o.hi()); }

  Ball operator-() const { return Ball{-mid, rad}; }
  Ball widened(const Rep& extra) const { return Ball{mid, B::add_up(rad, extra)}; }
};

template <class B>
Ball<B> operator+(const Ball<B>& a, const Ball<B>& b) {
  using Rep = typename B::Rep;
  Rep m = a.mid + b.mid;
  Rep r = B::add_up(B::add_up(a.rad, b.rad), B::add_err(a.mid, b.mid));
  Ball<B> out{std::move(m), std::move(r)};
  out.check();
  return out;
}

template <class B>
Ball<B> operator-(const Ball<B>& a, const Ball<B>& b) {
  using Rep = typename B::Rep;
  Rep m = a.mid - b.mid;
  Rep r = B::add_up(B::add_up(a.rad, b.rad), B::add_err(a.mid, -b.mid));
  Ball<B> out{std::move(m), std::move(r)};
  out.check();
  return out;
}

template <class B>
Ball<B> operator*(const Ball<B>& a, const Ball<B>& b) {
  using Rep = typename B::Rep;
  Rep m = a.mid * b.mid;
  Rep r;
  if (a.rad == B::zero() && b.rad == B::zero()) {
    r = B::mul_err(a.mid, b.mid);
  } else {
    r = B::add_up(B::nn_mul_up(B::abs(a.mid), b.rad), B::nn_mul_up(a.rad, B::abs(b.mid)));
    r = B::add_up(r, B::nn_mul_up(a.rad, b.rad));
    r = B::add_up(r, B::mul_err(a.mid, b.mid));
  }
  Ball<B> out{std::move(m), std::move(r)};
  out.check();
  return out;
}

// Exact scaling by a power of two.
template <class B>
Ball<B> scale2(const Ball<B>& a, int e) {
  return Ball<B>{B::ldexp2(a.mid, e), B::ldexp2(a.rad, e)};
}

template <class B>
Ball<B> operator+(const Ball<B>& a, long b) { return a + Ball<B>::from_long(b); }
template <class B>
Ball<B> operator-(const Ball<B>& a, long b) { return a - Ball<B>::from_long(b); }
template <class B>
Ball<B> operator*(const Ball<B>& a, long b) { return a * Ball<B>::from_long(b); }

template <class B>
Ball<B> operator/(const Ball<B>& a, const Ball<B>& b) {
  using Rep = typename B::Rep;
  if (b.contains_zero()) throw DomainViolation("division by an interval containing 0");
  Rep alo = a.lo(), ahi = a.hi(), blo = b.lo(), bhi = b.hi();
  Rep lo = std::min(std::min(B::div_dn(alo, blo), B::div_dn(alo, bhi)),
                    std::min(B::div_dn(ahi, blo), B::div_dn(ahi, bhi)));
  Rep hi = std::max(std::max(B::div_up(alo, blo), B::div_up(alo, bhi)),
                    std::max(B::div_up(ahi, blo), B::div_up(ahi, bhi)));
  Ball<B> out = Ball<B>::hull(lo, hi);
  out.check();
  return out;
}

template <class B>
Ball<B> operator/(const Ball<B>& a, long b) { return a / Ball<B>::from_long(b); }

template <class B>
Ball<B> sqrt(const Ball<B>& a) {
  using Rep = typename B::Rep;
  if (a.lo() < B::zero()) throw DomainViolation("sqrt of a set meeting (-inf,0)");
  Rep lo = B::sqrt_dn(a.lo());
  Rep hi = B::sqrt_up(a.hi());
  Ball<B> out = Ball<B>::hull(lo, hi);
  out.check();
  return out;
}

template <class B>
Ball<B> abs(const Ball<B>& a) {
  if (!a.contains_zero()) return Ball<B>{B::abs(a.mid), a.rad};
  return Ball<B>::hull(B::zero(), a.mag());
}

// Upper bound on the exact sum of nonnegative values, any summation order.
template <class B>
typename B::Rep upward_sum(std::span<const typename B::Rep> xs) {
  using Rep = typename B::Rep;
  Rep s = B::zero();
  for (const Rep& x : xs) {
    if (x < B::zero()) throw DomainViolation("upward_sum requires nonnegative terms");
    s = B::add_up(s, x);
  }
  if (!B::finite(s)) throw OverflowError("upward_sum overflow");
  return s;
}

template <class B>
Ball<B> ball_pi() {
  typename B::Rep lo, hi;
  B::pi(lo, hi);
  return Ball<B>::hull(lo, hi);
}

template <class B>
Ball<B> pow_int(Ball<B> base, int n) {
  Ball<B> acc = Ball<B>::from_long(1);
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

// exp via binary argument scaling and a Taylor tail below the working precision.
template <class B>
Ball<B> exp(const Ball<B>& x) {
  using Rep = typename B::Rep;
  int scale = 0;
  {
    Rep m = x.mag();
    while (m > B::one() && scale < 64) {
      m = m / B::from_long(2);
      ++scale;
    }
  }
  Ball<B> y = scale ? x * Ball<B>::exact(B::ldexp2(B::one(), -scale)) : x;
  Rep target = B::ldexp2(B::one(), -(B::precision_bits() + 16));
  Ball<B> term = Ball<B>::from_long(1), sum = Ball<B>::from_long(1);
  Rep p = B::one();  // upper bound on |y|^n / n!
  Rep ym = y.mag();
  int n = 0;
  do {
    ++n;
    term = term * y / Ball<B>::from_long(n);
    sum = sum + term;
    p = B::div_up(B::mul_up(p, ym), B::from_long(n));
  } while ((p > target || n < 4) && n < 500);
  p = B::div_up(B::mul_up(p, ym), B::from_long(n + 1));
  sum.rad = B::add_up(sum.rad, B::mul_up(p, B::from_long(2)));
  for (int i = 0; i < scale; ++i) sum = sum * sum;
  sum.check();
  return sum;
}

// sin and cos: reduce modulo 2*pi, quarter the argument, Taylor, double back.
template <class B>
void sin_cos(const Ball<B>& x, Ball<B>& s, Ball<B>& c) {
  using Rep = typename B::Rep;
  Ball<B> twopi = ball_pi<B>() * 2;
  long k = std::lround(B::to_d(x.mid) / 6.283185307179586);
  Ball<B> y = x - twopi * k;
  if (y.mag() > B::from_long(4)) {
    s = Ball<B>::hull(B::from_long(-1), B::from_long(1));
    c = s;
    return;
  }
  y = y * Ball<B>::exact(B::ldexp2(B::one(), -2));  // |y| <= ~0.8+rad
  Rep target = B::ldexp2(B::one(), -(B::precision_bits() + 16));
  Ball<B> term = y;  // y^n / n!
  s = y;
  c = Ball<B>::from_long(1);
  Rep p = y.mag();
  Rep ym = y.mag();
  int n = 1;
  while ((p > target || n < 4) && n < 500) {
    ++n;
    term = term * y / Ball<B>::from_long(n);
    int m = n / 2;  // sign (-1)^m for index n in {2m, 2m+1}
    if (n % 2 == 0) {
      c = (m % 2) ? c - term : c + term;
    } else {
      s = (m % 2) ? s - term : s + term;
    }
    p = B::div_up(B::mul_up(p, ym), B::from_long(n));
  }
  s.rad = B::add_up(s.rad, p);
  c.rad = B::add_up(c.rad, p);
  for (int i = 0; i < 2; ++i) {  // double the angle twice
    Ball<B> s2 = s * c * 2;
    Ball<B> c2 = c * c - s * s;
    s = s2;
    c = c2;
  }
  Rep one = B::one();
  if (s.rad > one) s = Ball<B>::hull(B::from_long(-1), B::from_long(1));
  if (c.rad > one) c = Ball<B>::hull(B::from_long(-1), B::from_long(1));
}

template <class B>
Ball<B> sin(const Ball<B>& x) { Ball<B> s, c; sin_cos(x, s, c); return s; }
template <class B>
Ball<B> cos(const Ball<B>& x) { Ball<B> s, c; sin_cos(x, s, c); return c; }

// acos on the open interval (-1,1), by interval Newton around the numeric value.
template <class B>
Ball<B> acos(const Ball<B>& x) {
  using Rep = typename B::Rep;
  if (!(x.lo() > B::from_long(-1)) || !(x.hi() < B::one()))
    throw DomainViolation("acos argument must be interior to (-1,1)");
  Rep t0 = B::from_ld(acosl(B::to_ld(x.mid)));
  Ball<B> th = Ball<B>::exact(t0);
  Rep w = B::ldexp2(B::one(), -20);
  for (int attempt = 0; attempt < 60; ++attempt) {
    Ball<B> W{t0, w};
    Ball<B> sW = sin(W);
    if (sW.mig() > B::zero()) {
      Ball<B> f = cos(th) - x;           // f(th) for every point of x
      Ball<B> N = th + f / sW;           // theta* = th + f/sin(xi)
      if (N.subset_of(W)) return N;
    }
    w = B::mul_up(w, B::from_long(4));
    if (!(w < B::from_long(2))) break;
  }
  throw DomainViolation("acos enclosure did not converge");
}

}  // namespace breathers
