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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace st0 {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr std::size_t kMaxDim = 8;

/// Dense complex matrix with at most 8 rows and 8 columns, stored row-major
/// in a fixed-size buffer so it can be passed around by value.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major nested initializer; every row must have the same length.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * kMaxDim + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * kMaxDim + j]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  bool all_finite() const;

  /// Copy of the sub-block starting at (r0, c0).
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

  CVector column(std::size_t j) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
CVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

/// max_ij |a_ij|
double matnorm_max(const ComplexMatrix& a);

/// max_ij |a_ij - conj(a_ji)|; zero for an exactly Hermitian matrix.
double hermiticity_defect(const ComplexMatrix& a);

/// Throws NonHermitianInput unless `a` is square and Hermitian within
/// 1e-13 * max(1, ||a||_max).
void require_hermitian(const ComplexMatrix& a, const char* what);

/// Hermitian eigendecomposition.
///
/// Eigenvalues are ascending. Each eigenvector column is scaled so its
/// largest-magnitude entry is real and positive (the first such entry when
/// several tie). Within a degenerate cluster the vectors are re-orthonormalized
/// and ordered by the index of that dominant entry.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // columns

  std::size_t dim() const { return eigenvalues.size(); }
  /// V diag(f(lambda_k)) V^dagger
  template <class F>
  ComplexMatrix reconstruct(F&& f) const;
};

SpectralDecomposition eigh(const ComplexMatrix& h);

/// exp(-i h t / hbar) for Hermitian h, evaluated spectrally.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double t, double hbar);

template <class F>
ComplexMatrix SpectralDecomposition::reconstruct(F&& f) const {
  const std::size_t n = dim();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w = f(eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eigenvectors(i, k) * w;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
    }
  }
  return out;
}

// Small vector helpers used across modules.
double norm2(std::span<const cplx> v);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);  // <a|b>

}  // namespace st0
