#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "breathers/ball.hpp"

// Certified root enclosures for polynomials with Ball coefficients.
// Numeric candidates come from an Aberth iteration on the midpoint
// polynomial; rigor comes from Smith-style inclusion disks (a Gershgorin
// argument): the union of the disks
//     D_i = D(z_i, n |p(z_i)| / prod_{j!=i} |z_i - z_j|)
// contains all roots of every point polynomial, and a connected component
// made of k disks contains exactly k roots. Simple real roots are then
// tightened by interval Newton.

namespace breathers {

struct ClusterUnresolved : std::runtime_error {
  explicit ClusterUnresolved(const std::string& m) : std::runtime_error(m) {}
};

// A connected cluster of inclusion disks.
template <class B>
struct RootCluster {
  Ball<B> re;            // encloses the real parts of all roots in the cluster
  Ball<B> im;            // encloses the imaginary parts (0-symmetric for pairs)
  int count = 0;         // number of roots (with multiplicity)
  bool certified_real = false;  // count==1 and enclosure crosses no conjugate pair
};

namespace polydetail {

template <class B>
struct CBall {
  Ball<B> re, im;
};

template <class B>
CBall<B> cmul(const CBall<B>& a, const CBall<B>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class B>
CBall<B> cadd(const CBall<B>& a, const CBall<B>& b) {
  return {a.re + b.re, a.im + b.im};
}

// sup |p(z)| over the coefficient set, z an exact complex point
template <class B>
typename B::Rep eval_mag_upper(const std::vector<Ball<B>>& c, std::complex<long double> z) {
  CBall<B> acc{Ball<B>::from_long(0), Ball<B>::from_long(0)};
  CBall<B> zz{Ball<B>::exact(B::from_ld(z.real())), Ball<B>::exact(B::from_ld(z.imag()))};
  for (int i = (int)c.size() - 1; i >= 0; --i) {
    acc = cmul(acc, zz);
    acc.re = acc.re + c[i];
  }
  using Rep = typename B::Rep;
  Rep r2 = B::add_up(B::nn_mul_up(acc.re.mag(), acc.re.mag()), B::nn_mul_up(acc.im.mag(), acc.im.mag()));
  return B::sqrt_up(r2);
}

inline std::vector<std::complex<long double>> aberth(std::vector<long double> c) {
  // c: coefficients 0..n, leading nonzero; returns n root candidates
  int n = (int)c.size() - 1;
  for (int i = 0; i <= n; ++i) c[i] /= c[n];
  // Cauchy bound
  long double R = 0;
  for (int i = 0; i < n; ++i) R = std::max(R, fabsl(c[i]));
  R = 1 + R;
  if (!std::isfinite(R)) R = 1e30L;
  std::vector<std::complex<long double>> z(n);
  for (int k = 0; k < n; ++k) {
    long double th = 6.283185307179586L * (k + 0.25L) / n + 0.4L;
    long double rr = R * (0.3L + 0.6L * (k + 1) / n);
    z[k] = {rr * cosl(th), rr * sinl(th)};
  }
  auto horner = [&](std::complex<long double> x, std::complex<long double>& p,
                    std::complex<long double>& dp) {
    p = c[n];
    dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
  };
  for (int it = 0; it < 400; ++it) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      std::complex<long double> p, dp;
      horner(z[k], p, dp);
      std::complex<long double> w = (dp != (std::complex<long double>)0) ? p / dp : p;
      std::complex<long double> s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += (std::complex<long double>)1 / (z[k] - z[j]);
      std::complex<long double> d = w / ((std::complex<long double>)1 - w * s);
      z[k] -= d;
      worst = std::max(worst, std::abs(d) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-21L) break;
  }
  return z;
}

}  // namespace polydetail

// Tighten a simple real root by interval Newton; returns false if the step
// fails to contract (the caller keeps the disk enclosure).
template <class B>
bool interval_newton_real_root(const std::vector<Ball<B>>& c, Ball<B>& x) {
  using Rep = typename B::Rep;
  int n = (int)c.size() - 1;
  std::vector<Ball<B>> dc(n);
  for (int i = 1; i <= n; ++i) dc[i - 1] = c[i] * i;
  auto horner = [](const std::vector<Ball<B>>& f, const Ball<B>& z) {
    Ball<B> acc = Ball<B>::from_long(0);
    for (int i = (int)f.size() - 1; i >= 0; --i) acc = acc * z + f[i];
    return acc;
  };
  bool ok = false;
  for (int it = 0; it < 30; ++it) {
    Ball<B> xm = Ball<B>::exact(x.mid);
    Ball<B> fx = horner(c, xm);
    Ball<B> dfX = horner(dc, x);
    if (dfX.contains_zero()) return ok;
    Ball<B> N = xm - fx / dfX;
    // intersect N with x
    Rep lo = std::max<Rep>(N.lo(), x.lo());
    Rep hi = std::min<Rep>(N.hi(), x.hi());
    if (hi < lo) return ok;  // numerical disagreement; keep previous
    Ball<B> nx = Ball<B>::hull(lo, hi);
    if (!(nx.rad < x.rad)) return ok;
    x = nx;
    ok = true;
    if (!(x.rad > B::zero())) return true;
  }
  return ok;
}

template <class B>
std::vector<RootCluster<B>> poly_roots_enclose(const std::vector<Ball<B>>& coeffs) {
  using Rep = typename B::Rep;
  int n = (int)coeffs.size() - 1;
  while (n >= 0 && coeffs[n].contains_zero() && coeffs[n].is_exact() && coeffs[n].mid == B::zero()) --n;
  if (n < 0) throw DomainViolation("zero polynomial");
  std::vector<Ball<B>> c(coeffs.begin(), coeffs.begin() + n + 1);
  if (c[n].contains_zero()) throw DomainViolation("leading coefficient set contains 0");
  if (n == 0) return {};

  // numeric candidates from the midpoint polynomial (long double precision)
  std::vector<long double> cm(n + 1);
  for (int i = 0; i <= n; ++i) cm[i] = B::to_ld(c[i].mid);
  auto z = polydetail::aberth(cm);

  // Smith disk radii
  std::vector<Rep> rad(n);
  Rep lead_lo = c[n].mig();
  for (int k = 0; k < n; ++k) {
    Rep num = polydetail::eval_mag_upper(c, z[k]);
    num = B::nn_mul_up(num, B::from_long(n));
    // lower bound of |lead| * prod |z_k - z_j|
    Rep den = lead_lo;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      long double d = std::abs(z[k] - z[j]);
      // d is computed in nearest; shrink it
      Rep dl = B::from_ld(d);
      dl = B::sub_dn(dl, B::nn_mul_up(B::abs(dl), B::ldexp2(B::one(), -60)));
      if (!(dl > B::zero())) { den = B::zero(); break; }
      Rep t = dl * (B::one());
      (void)t;
      den = B::mul_dn(den, dl);
    }
    if (!(den > B::zero())) {
      rad[k] = B::ldexp2(B::one(), 4000);  // effectively infinite: forces merge
    } else {
      rad[k] = B::nn_div_up(num, den);
    }
    if (!B::finite(rad[k])) throw ClusterUnresolved("inclusion disk radius overflow");
  }

  // merge overlapping disks (union-find), 2x-radius proximity rule included
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long double dist = std::abs(z[i] - z[j]);
      Rep gap = B::add_up(B::add_up(rad[i], rad[j]), B::zero());
      Rep two_gap = B::nn_mul_up(gap, B::from_long(2));
      if (!(B::from_ld(dist) > two_gap)) parent[find(i)] = find(j);
    }

  std::vector<RootCluster<B>> out;
  std::vector<char> done(n, 0);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    int root = find(i);
    long double re_lo = 1e4900L, re_hi = -1e4900L, im_lo = 1e4900L, im_hi = -1e4900L;
    Rep rmax = B::zero();
    int cnt = 0;
    for (int j = 0; j < n; ++j) {
      if (find(j) != root) continue;
      done[j] = 1;
      ++cnt;
      re_lo = std::min(re_lo, z[j].real());
      re_hi = std::max(re_hi, z[j].real());
      im_lo = std::min(im_lo, z[j].imag());
      im_hi = std::max(im_hi, z[j].imag());
      if (rad[j] > rmax) rmax = rad[j];
    }
    RootCluster<B> cl;
    cl.count = cnt;
    cl.re = Ball<B>::hull(B::sub_dn(B::from_ld(re_lo), rmax), B::add_up(B::from_ld(re_hi), rmax));
    cl.im = Ball<B>::hull(B::sub_dn(B::from_ld(im_lo), rmax), B::add_up(B::from_ld(im_hi), rmax));
    out.push_back(cl);
  }

  // classify and refine real candidates
  for (auto& cl : out) {
    if (cl.count == 1 && cl.im.contains_zero()) {
      // a simple root whose disk meets the real axis: the conjugate would be a
      // second root in the disk, so the root is real
      cl.certified_real = true;
      Ball<B> x = cl.re.widened(cl.im.mag());
      if (interval_newton_real_root(c, x)) {
        cl.re = x;
        cl.im = Ball<B>::from_long(0);
      }
    }
  }
  return out;
}

}  // namespace breathers
