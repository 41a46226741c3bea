// Copyright 2026 The st0sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only helpers: random draws and reference implementations that share
// no code with the library's numerics.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "st0/matrix.hpp"
#include "st0/physics.hpp"

namespace testing {

using st0::ComplexMatrix;
using st0::cplx;
using lcplx = std::complex<long double>;
using LMatrix = std::vector<std::vector<lcplx>>;

inline LMatrix to_long(const ComplexMatrix& a) {
  LMatrix m(a.rows(), std::vector<lcplx>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = lcplx(a(i, j).real(), a(i, j).imag());
  return m;
}

inline LMatrix lmul(const LMatrix& a, const LMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  LMatrix c(n, std::vector<lcplx>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

/// Eigenvalues of a Hermitian matrix by Householder reduction to tridiagonal
/// form in long double followed by Sturm-sequence bisection.
inline std::vector<double> sturm_eigenvalues(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  LMatrix a = to_long(h);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    long double xnorm = 0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a[i][k]);
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0) continue;
    const lcplx x0 = a[k + 1][k];
    const lcplx ph = std::abs(x0) == 0 ? lcplx(1) : x0 / std::abs(x0);
    std::vector<lcplx> v(n);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a[i][k];
    v[k + 1] += ph * xnorm;
    long double vn = 0;
    for (auto& z : v) vn += std::norm(z);
    vn = std::sqrt(vn);
    if (vn == 0) continue;
    for (auto& z : v) z /= vn;
    LMatrix p(n, std::vector<lcplx>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i][j] = (i == j ? 1.0L : 0.0L) - 2.0L * v[i] * std::conj(v[j]);
    a = lmul(lmul(p, a), p);
  }
  std::vector<long double> d(n), e2(n);
  long double bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a[i][i].real();
    if (i + 1 < n) e2[i] = std::norm(a[i + 1][i]);
    long double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a[i][j]);
    bound = std::max(bound, row);
  }
  auto count_below = [&](long double x) {
    std::size_t c = 0;
    long double q = 1;
    for (std::size_t i = 0; i < n; ++i) {
      q = d[i] - x - (i == 0 ? 0.0L : e2[i - 1] / q);
      if (q == 0) q = -1e-300L;
      if (q < 0) ++c;
    }
    return c;
  };
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double lo = -bound - 1e-30L, hi = bound + 1e-30L;
    for (int it = 0; it < 400 && hi - lo > 0; ++it) {
      const long double mid = 0.5L * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (count_below(mid) > k) hi = mid; else lo = mid;
    }
    out[k] = static_cast<double>(0.5L * (lo + hi));
  }
  return out;
}

/// exp(-i h t / hbar) by a 30-term Taylor series with 2^8 squaring.
inline ComplexMatrix taylor_expm(const ComplexMatrix& h, double t, double hbar) {
  const std::size_t n = h.rows();
  LMatrix a = to_long(h);
  const long double s = -static_cast<long double>(t) / hbar / 256.0L;
  for (auto& row : a)
    for (auto& z : row) z = lcplx(0, 1) * z * s;
  LMatrix result(n, std::vector<lcplx>(n)), term(n, std::vector<lcplx>(n));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1;
  for (int k = 1; k <= 30; ++k) {
    term = lmul(term, a);
    for (auto& row : term)
      for (auto& z : row) z /= static_cast<long double>(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
  }
  for (int k = 0; k < 8; ++k) result = lmul(result, result);
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = cplx(static_cast<double>(result[i][j].real()), static_cast<double>(result[i][j].imag()));
  return out;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx(g(rng), g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  return st0::expm_unitary(random_hermitian(rng, n, 3.0), 1.0, 1.0);
}

/// Field draw with every component uniform in [-amp, amp] tesla.
inline st0::FieldConfig random_fields(std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  st0::FieldConfig f;
  f.B_x = u(rng);
  f.B_y = u(rng);
  f.B_z = u(rng);
  f.dB_x = u(rng);
  f.dB_y = u(rng);
  f.dB_z = u(rng);
  return f;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return st0::matnorm_max(a - b);
}

inline double unitarity_defect(const ComplexMatrix& u) {
  return st0::matnorm_max(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

}  // namespace testing
