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

#include "st0/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "st0/errors.hpp"

namespace st0 {

namespace {

constexpr double kHermitianTolerance = 1e-13;
constexpr double kDegenerateGap = 1e-15;
constexpr int kMaxSweeps = 100;

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDim || cols > kMaxDim) {
    throw DimensionMismatch("matrix dimensions exceed " + std::to_string(kMaxDim));
  }
}

// Index of the largest-magnitude entry of column k; earliest index wins ties.
std::size_t dominant_index(const ComplexMatrix& v, std::size_t k) {
  double best = -1.0;
  for (std::size_t i = 0; i < v.rows(); ++i) best = std::max(best, std::abs(v(i, k)));
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (std::abs(v(i, k)) >= best * (1.0 - 1e-10)) return i;
  }
  return 0;
}

void fix_phase(ComplexMatrix& v, std::size_t k) {
  const cplx lead = v(dominant_index(v, k), k);
  const double mag = std::abs(lead);
  if (mag == 0.0) return;
  const cplx rot = std::conj(lead) / mag;
  for (std::size_t i = 0; i < v.rows(); ++i) v(i, k) *= rot;
}

// Modified Gram-Schmidt over columns [first, last) of v.
void orthonormalize(ComplexMatrix& v, std::size_t first, std::size_t last) {
  const std::size_t n = v.rows();
  for (std::size_t k = first; k < last; ++k) {
    for (std::size_t j = first; j < k; ++j) {
      cplx proj{};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(v(i, j)) * v(i, k);
      for (std::size_t i = 0; i < n; ++i) v(i, k) -= proj * v(i, j);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(v(i, k));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) v(i, k) /= nrm;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  check_dims(rows_, cols_);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged initializer for ComplexMatrix");
    std::size_t j = 0;
    for (const auto& x : r) (*this)(i, j++) = x;
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const cplx x = (*this)(i, j);
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    }
  return true;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                                   std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw DimensionMismatch("block out of range");
  ComplexMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix sum shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += o(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix difference shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) -= o(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= s;
  return *this;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

double matnorm_max(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.square()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (!a.square()) throw NonHermitianInput(std::string(what) + ": matrix is not square");
  if (!a.all_finite()) throw NonHermitianInput(std::string(what) + ": non-finite entries");
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTolerance * std::max(1.0, matnorm_max(a))) {
    throw NonHermitianInput(std::string(what) + ": asymmetry " + std::to_string(defect));
  }
}

SpectralDecomposition eigh(const ComplexMatrix& h) {
  require_hermitian(h, "eigh");
  const std::size_t n = h.rows();

  // Work on the exactly Hermitian part so the rotations below preserve symmetry.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += std::norm(a(i, j));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= 1e-36 * frob || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real Jacobi rotation on [[app, r], [r, aqq]] after removing the phase.
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx gpp = c;
        const cplx gpq = s;
        const cplx gqp = -s * std::conj(phase);
        const cplx gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }

  const double gap_tol = kDegenerateGap * std::max(1.0, matnorm_max(h));
  std::size_t first = 0;
  while (first < n) {
    std::size_t last = first + 1;
    while (last < n && out.eigenvalues[last] - out.eigenvalues[last - 1] < gap_tol) ++last;
    if (last - first > 1) {
      orthonormalize(out.eigenvectors, first, last);
      for (std::size_t k = first; k < last; ++k) fix_phase(out.eigenvectors, k);
      // Reorder the cluster by dominant index (selection sort, clusters are tiny).
      for (std::size_t k = first; k < last; ++k) {
        std::size_t best = k;
        for (std::size_t m = k + 1; m < last; ++m)
          if (dominant_index(out.eigenvectors, m) < dominant_index(out.eigenvectors, best)) best = m;
        if (best != k) {
          for (std::size_t i = 0; i < n; ++i) std::swap(out.eigenvectors(i, k), out.eigenvectors(i, best));
          std::swap(out.eigenvalues[k], out.eigenvalues[best]);
        }
      }
    } else {
      fix_phase(out.eigenvectors, first);
    }
    first = last;
  }
  return out;
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double t, double hbar) {
  const SpectralDecomposition sd = eigh(h);
  if (t == 0.0) return ComplexMatrix::identity(h.rows());
  return sd.reconstruct([&](double lambda) { return std::polar(1.0, -lambda * t / hbar); });
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner product size mismatch");
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace st0
