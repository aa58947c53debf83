#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <stdexcept>
#include <mpfr.h>

// Precision backends. Every rigorous bound in the library is computed through
// the directed operations defined here; nothing else may round.
//
// HwFloat: x86 extended long double. Directed results are obtained by rounding
// to nearest and stepping one ulp outward, which is sound for the correctly
// rounded IEEE operations (+,-,*,/,sqrt). No global rounding mode is touched.
//
// MpFloat: MPFR with an explicit rounding argument per call. The working
// precision is a thread-local value captured by each MpReal at construction.

namespace breathers {

struct HwFloat {
  using Rep = long double;

  static constexpr const char* name() { return "hw-extended"; }
  static int precision_bits() { return 64; }

  static Rep zero() { return 0.0L; }
  static Rep one() { return 1.0L; }
  static Rep from_long(long v) { return static_cast<Rep>(v); }
  static Rep from_ld(long double v) { return v; }
  static long double to_ld(Rep v) { return v; }
  static double to_d(Rep v) { return static_cast<double>(v); }

  static bool finite(Rep x) { return std::isfinite(x); }

  static Rep up(Rep x) { return std::nextafter(x, std::numeric_limits<Rep>::infinity()); }
  static Rep dn(Rep x) { return std::nextafter(x, -std::numeric_limits<Rep>::infinity()); }

  // TwoSum gives the exact rounding error of a+b, so the directed results are
  // sharp: no outward step when the sum is exact.
  static Rep add_up(Rep a, Rep b) {
    Rep s = a + b;
    Rep bp = s - a;
    Rep err = (a - (s - bp)) + (b - bp);
    return err > 0.0L ? up(s) : s;
  }
  static Rep add_dn(Rep a, Rep b) {
    Rep s = a + b;
    Rep bp = s - a;
    Rep err = (a - (s - bp)) + (b - bp);
    return err < 0.0L ? dn(s) : s;
  }
  static Rep sub_up(Rep a, Rep b) { return add_up(a, -b); }
  static Rep sub_dn(Rep a, Rep b) { return add_dn(a, -b); }
  static Rep mul_up(Rep a, Rep b) { return up(a * b); }
  static Rep mul_dn(Rep a, Rep b) { return dn(a * b); }
  // Exact magnitude of the rounding error of a+b.
  static Rep add_err(Rep a, Rep b) {
    Rep s = a + b;
    Rep bp = s - a;
    Rep err = (a - (s - bp)) + (b - bp);
    return std::fabs(err);
  }

  // eps/tiny inflation constants: |fl(x op y) - x op y| <= |fl|*2^-64 + denormal
  // slack for the correctly rounded operations, with margin for the inflation
  // arithmetic itself.
  static constexpr Rep kEps = 0x1.8p-64L;
  static constexpr Rep kTiny = 0x1p-16380L;

  // Upper bound on |fl(a*b) - a*b|, branch-free.
  static Rep mul_err(Rep a, Rep b) { return std::fabs(a * b) * kEps + kTiny; }

  // Directed ops for nonnegative radius arithmetic (no libm calls).
  static Rep nn_mul_up(Rep a, Rep b) { Rep r = a * b; return r + (r * kEps + kTiny); }
  static Rep nn_div_up(Rep a, Rep b) { Rep r = a / b; return r + (r * kEps + kTiny); }
  static Rep div_up(Rep a, Rep b) { return up(a / b); }
  static Rep div_dn(Rep a, Rep b) { return dn(a / b); }
  static Rep sqrt_up(Rep a) { return up(std::sqrt(a)); }
  static Rep sqrt_dn(Rep a) { Rep r = dn(std::sqrt(a)); return r < 0 ? 0.0L : r; }

  static Rep abs(Rep a) { return std::fabs(a); }
  static Rep ldexp2(Rep a, int e) { return std::ldexp(a, e); }  // exact

  // Enclosure of pi, computed once from MPFR.
  static void pi(Rep& lo, Rep& hi) {
    static const Rep plo = [] {
      mpfr_t t; mpfr_init2(t, 130); mpfr_const_pi(t, MPFR_RNDD);
      Rep r = mpfr_get_ld(t, MPFR_RNDD); mpfr_clear(t); return r;
    }();
    static const Rep phi = [] {
      mpfr_t t; mpfr_init2(t, 130); mpfr_const_pi(t, MPFR_RNDU);
      Rep r = mpfr_get_ld(t, MPFR_RNDU); mpfr_clear(t); return r;
    }();
    lo = plo; hi = phi;
  }

  static std::string to_hex(Rep v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%La", v);
    return buf;
  }
  static bool from_hex(const std::string& s, Rep& out) {
    char* end = nullptr;
    out = strtold(s.c_str(), &end);
    return end && *end == '\0';
  }
};

// Thread-local working precision for MpReal. Values keep the precision they
// were created with; mixing precisions is allowed by MPFR semantics.
inline thread_local mpfr_prec_t mp_current_prec = 192;

struct MpPrecScope {
  mpfr_prec_t saved;
  explicit MpPrecScope(mpfr_prec_t p) : saved(mp_current_prec) { mp_current_prec = p; }
  ~MpPrecScope() { mp_current_prec = saved; }
};

class MpReal {
 public:
  mpfr_t v;

  MpReal() { mpfr_init2(v, mp_current_prec); mpfr_set_zero(v, 1); }
  MpReal(const MpReal& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept { v[0] = o.v[0]; mpfr_init2(o.v, MPFR_PREC_MIN); }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) { mpfr_set_prec(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    if (this != &o) { mpfr_swap(v, o.v); }
    return *this;
  }
  ~MpReal() { mpfr_clear(v); }

  explicit MpReal(long x) { mpfr_init2(v, mp_current_prec); mpfr_set_si(v, x, MPFR_RNDN); }
  explicit MpReal(long double x) { mpfr_init2(v, mp_current_prec); mpfr_set_ld(v, x, MPFR_RNDN); }

  friend MpReal operator+(const MpReal& a, const MpReal& b) { MpReal r; mpfr_add(r.v, a.v, b.v, MPFR_RNDN); return r; }
  friend MpReal operator-(const MpReal& a, const MpReal& b) { MpReal r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); return r; }
  friend MpReal operator*(const MpReal& a, const MpReal& b) { MpReal r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); return r; }
  friend MpReal operator/(const MpReal& a, const MpReal& b) { MpReal r; mpfr_div(r.v, a.v, b.v, MPFR_RNDN); return r; }
  MpReal operator-() const { MpReal r; mpfr_neg(r.v, v, MPFR_RNDN); return r; }
  MpReal& operator+=(const MpReal& b) { mpfr_add(v, v, b.v, MPFR_RNDN); return *this; }
  MpReal& operator-=(const MpReal& b) { mpfr_sub(v, v, b.v, MPFR_RNDN); return *this; }
  MpReal& operator*=(const MpReal& b) { mpfr_mul(v, v, b.v, MPFR_RNDN); return *this; }
  MpReal& operator/=(const MpReal& b) { mpfr_div(v, v, b.v, MPFR_RNDN); return *this; }

  friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_less_p(a.v, b.v); }
  friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_greater_p(a.v, b.v); }
  friend bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_lessequal_p(a.v, b.v); }
  friend bool operator>=(const MpReal& a, const MpReal& b) { return mpfr_greaterequal_p(a.v, b.v); }
  friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.v, b.v); }
  friend bool operator!=(const MpReal& a, const MpReal& b) { return !mpfr_equal_p(a.v, b.v); }
};

struct MpFloat {
  using Rep = MpReal;

  static constexpr const char* name() { return "high-precision"; }
  static int precision_bits() { return static_cast<int>(mp_current_prec); }

  static Rep zero() { return MpReal(); }
  static Rep one() { return MpReal(1L); }
  static Rep from_long(long x) { return MpReal(x); }
  static Rep from_ld(long double x) { return MpReal(x); }
  static long double to_ld(const Rep& x) { return mpfr_get_ld(x.v, MPFR_RNDN); }
  static double to_d(const Rep& x) { return mpfr_get_d(x.v, MPFR_RNDN); }

  static bool finite(const Rep& x) { return mpfr_number_p(x.v); }

  static Rep add_up(const Rep& a, const Rep& b) { Rep r; mpfr_add(r.v, a.v, b.v, MPFR_RNDU); return r; }
  static Rep add_dn(const Rep& a, const Rep& b) { Rep r; mpfr_add(r.v, a.v, b.v, MPFR_RNDD); return r; }
  static Rep sub_up(const Rep& a, const Rep& b) { Rep r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDU); return r; }
  static Rep sub_dn(const Rep& a, const Rep& b) { Rep r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDD); return r; }
  static Rep mul_up(const Rep& a, const Rep& b) { Rep r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDU); return r; }
  static Rep mul_dn(const Rep& a, const Rep& b) { Rep r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDD); return r; }
  static Rep div_up(const Rep& a, const Rep& b) { Rep r; mpfr_div(r.v, a.v, b.v, MPFR_RNDU); return r; }
  static Rep div_dn(const Rep& a, const Rep& b) { Rep r; mpfr_div(r.v, a.v, b.v, MPFR_RNDD); return r; }
  static Rep sqrt_up(const Rep& a) { Rep r; mpfr_sqrt(r.v, a.v, MPFR_RNDU); return r; }
  static Rep sqrt_dn(const Rep& a) { Rep r; mpfr_sqrt(r.v, a.v, MPFR_RNDD); if (mpfr_sgn(r.v) < 0) mpfr_set_zero(r.v, 1); return r; }
  static Rep half_ulp(const Rep& x) {
    Rep a;
    mpfr_abs(a.v, x.v, MPFR_RNDN);
    Rep b(a);
    mpfr_nextabove(b.v);
    Rep r;
    mpfr_sub(r.v, b.v, a.v, MPFR_RNDU);
    mpfr_mul_2si(r.v, r.v, -1, MPFR_RNDU);
    return r;
  }
  static Rep add_err(const Rep& a, const Rep& b) { return half_ulp(a + b); }
  static Rep mul_err(const Rep& a, const Rep& b) { return half_ulp(a * b); }
  static Rep nn_mul_up(const Rep& a, const Rep& b) { return mul_up(a, b); }
  static Rep nn_div_up(const Rep& a, const Rep& b) { return div_up(a, b); }

  static Rep abs(const Rep& a) { Rep r; mpfr_abs(r.v, a.v, MPFR_RNDN); return r; }
  static Rep ldexp2(const Rep& a, int e) { Rep r; mpfr_mul_2si(r.v, a.v, e, MPFR_RNDN); return r; }

  static void pi(Rep& lo, Rep& hi) {
    mpfr_const_pi(lo.v, MPFR_RNDD);
    mpfr_const_pi(hi.v, MPFR_RNDU);
  }

  static std::string to_hex(const Rep& v) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", v.v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }
  static bool from_hex(const std::string& s, Rep& out) {
    char* end = nullptr;
    int bad = mpfr_strtofr(out.v, s.c_str(), &end, 0, MPFR_RNDN);
    (void)bad;
    return end && *end == '\0';
  }
};

}  // namespace breathers
