#pragma once

#include <stdexcept>
#include <vector>

#include "breathers/ball.hpp"

// Dense interval linear algebra: enough for residual-verified inverses,
// operator-norm bounds, and matrix powers.

namespace breathers {

struct NotInvertible : std::runtime_error {
  explicit NotInvertible(const std::string& m) : std::runtime_error(m) {}
};

template <class B>
struct IntervalMatrix {
  using Rep = typename B::Rep;
  int rows = 0, cols = 0;
  std::vector<Ball<B>> a;

  IntervalMatrix() = default;
  IntervalMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

  Ball<B>& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
  const Ball<B>& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

  static IntervalMatrix identity(int n) {
    IntervalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Ball<B>::from_long(1);
    return m;
  }

  IntervalMatrix operator*(const IntervalMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("matmul shape");
    IntervalMatrix out(rows, o.cols);
    for (int i = 0; i < rows; ++i) {
      for (int k = 0; k < cols; ++k) {
        const Ball<B>& aik = (*this)(i, k);
        if (aik.mid == B::zero() && aik.rad == B::zero()) continue;
        for (int j = 0; j < o.cols; ++j) {
          out(i, j) = out(i, j) + aik * o(k, j);
        }
      }
    }
    return out;
  }

  IntervalMatrix operator-(const IntervalMatrix& o) const {
    IntervalMatrix out(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] - o.a[i];
    return out;
  }
  IntervalMatrix operator+(const IntervalMatrix& o) const {
    IntervalMatrix out(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + o.a[i];
    return out;
  }

  std::vector<Ball<B>> apply(const std::vector<Ball<B>>& v) const {
    std::vector<Ball<B>> out(rows, Ball<B>::from_long(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  // max row sum of sup|entry|
  Rep norm_inf() const {
    Rep best = B::zero();
    for (int i = 0; i < rows; ++i) {
      Rep s = B::zero();
      for (int j = 0; j < cols; ++j) s = B::add_up(s, (*this)(i, j).mag());
      if (s > best) best = s;
    }
    return best;
  }
  Rep norm_one() const {
    Rep best = B::zero();
    for (int j = 0; j < cols; ++j) {
      Rep s = B::zero();
      for (int i = 0; i < rows; ++i) s = B::add_up(s, (*this)(i, j).mag());
      if (s > best) best = s;
    }
    return best;
  }
  // ||X||_2 <= sqrt(||X||_1 ||X||_inf)
  Rep norm_two_upper() const { return B::sqrt_up(B::nn_mul_up(norm_one(), norm_inf())); }
  Rep norm_frobenius_upper() const {
    Rep s = B::zero();
    for (const auto& x : a) {
      Rep m = x.mag();
      s = B::add_up(s, B::nn_mul_up(m, m));
    }
    return B::sqrt_up(s);
  }

  std::vector<Rep> midpoints() const {
    std::vector<Rep> m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = a[i].mid;
    return m;
  }
};

// Plain LU with partial pivoting on backend scalars (round to nearest);
// used only to produce candidate inverses that are then verified.
template <class Rep>
bool lu_factor(std::vector<Rep>& m, int n, std::vector<int>& piv) {
  piv.resize(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    auto absval = [](const Rep& x) { return x < Rep(0) ? -x : x; };
    Rep bestA = absval(m[(size_t)k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      Rep cand = absval(m[(size_t)i * n + k]);
      if (bestA < cand) { bestA = cand; p = i; }
    }
    if (!(Rep(0) < bestA)) return false;
    if (p != k) {
      std::swap(piv[p], piv[k]);
      for (int j = 0; j < n; ++j) std::swap(m[(size_t)p * n + j], m[(size_t)k * n + j]);
    }
    Rep pivot = m[(size_t)k * n + k];
    for (int i = k + 1; i < n; ++i) {
      Rep f = m[(size_t)i * n + k] / pivot;
      m[(size_t)i * n + k] = f;
      for (int j = k + 1; j < n; ++j) m[(size_t)i * n + j] -= f * m[(size_t)k * n + j];
    }
  }
  return true;
}

template <class Rep>
void lu_solve(const std::vector<Rep>& lu, int n, const std::vector<int>& piv,
              const std::vector<Rep>& b, std::vector<Rep>& x) {
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu[(size_t)i * n + j] * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu[(size_t)i * n + j] * x[j];
    x[i] /= lu[(size_t)i * n + i];
  }
}

template <class Rep>
bool numeric_inverse(const std::vector<Rep>& m, int n, std::vector<Rep>& inv) {
  std::vector<Rep> lu = m;
  std::vector<int> piv;
  if (!lu_factor(lu, n, piv)) return false;
  inv.assign((size_t)n * n, Rep(0));
  std::vector<Rep> e(n, Rep(0)), col;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) e[i] = Rep(0);
    e[j] = Rep(1);
    lu_solve(lu, n, piv, e, col);
    for (int i = 0; i < n; ++i) inv[(size_t)i * n + j] = col[i];
  }
  return true;
}

// Residual-verified inverse: returns N with m^{-1} in N for every point
// matrix m in M. Also reports the residual norm used in the certificate.
template <class B>
IntervalMatrix<B> matrix_inverse_enclose(const IntervalMatrix<B>& M,
                                         typename B::Rep* residual_out = nullptr) {
  using Rep = typename B::Rep;
  if (M.rows != M.cols) throw std::invalid_argument("inverse of non-square matrix");
  const int n = M.rows;
  std::vector<Rep> mid = M.midpoints();
  std::vector<Rep> inv;
  if (!numeric_inverse(mid, n, inv)) throw NotInvertible("midpoint inverse failed");

  IntervalMatrix<B> Nh(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Nh(i, j) = Ball<B>::exact(inv[(size_t)i * n + j]);

  // R = I - Nh*M
  IntervalMatrix<B> R = IntervalMatrix<B>::identity(n) - (Nh * M);
  Rep rho = R.norm_inf();
  if (!(rho < B::one())) throw NotInvertible("residual bound >= 1");

  // |m^{-1} - Nh|_ij <= ||(I-R_m)^{-1} R_m Nh||_inf <= rho/(1-rho) * ||Nh||_inf
  Rep err = B::nn_div_up(B::nn_mul_up(rho, Nh.norm_inf()), B::sub_dn(B::one(), rho));
  IntervalMatrix<B> out = Nh;
  for (auto& x : out.a) x.rad = B::add_up(x.rad, err);
  if (residual_out) *residual_out = rho;
  return out;
}

}  // namespace breathers
