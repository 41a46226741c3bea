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

#include "st0/symmetry.hpp"

#include <cmath>

#include "st0/errors.hpp"

namespace st0 {

namespace {

constexpr cplx kI{0.0, 1.0};

ComplexMatrix pair(std::size_t n, std::size_t p, std::size_t q, bool imaginary) {
  ComplexMatrix m(n, n);
  if (imaginary) {
    m(p, q) = -kI;
    m(q, p) = kI;
  } else {
    m(p, q) = 1.0;
    m(q, p) = 1.0;
  }
  return m;
}

std::array<ComplexMatrix, 8> make_gell_mann() {
  std::array<ComplexMatrix, 8> l;
  l[0] = pair(3, 0, 1, false);
  l[1] = pair(3, 0, 1, true);
  l[2] = ComplexMatrix(3, 3);
  l[2](0, 0) = 1.0;
  l[2](1, 1) = -1.0;
  l[3] = pair(3, 0, 2, false);
  l[4] = pair(3, 0, 2, true);
  l[5] = pair(3, 1, 2, false);
  l[6] = pair(3, 1, 2, true);
  l[7] = ComplexMatrix(3, 3);
  const double r3 = 1.0 / std::sqrt(3.0);
  l[7](0, 0) = r3;
  l[7](1, 1) = r3;
  l[7](2, 2) = -2.0 * r3;
  return l;
}

std::array<ComplexMatrix, 6> make_breaking() {
  std::array<ComplexMatrix, 6> l;
  for (std::size_t k = 0; k < 3; ++k) {
    l[2 * k] = pair(4, 0, k + 1, false);
    l[2 * k + 1] = pair(4, 0, k + 1, true);
  }
  return l;
}

std::size_t position(const Ordering& o, BasisLabel b) {
  for (std::size_t i = 0; i < o.size(); ++i)
    if (o[i] == b) return i;
  throw InvalidOrdering("label missing from ordering");
}

void require_permutation(const Ordering& o) {
  std::array<bool, 4> seen{};
  for (BasisLabel b : o) {
    const std::size_t k = index_of(b);
    if (k >= 4 || seen[k]) throw InvalidOrdering("ordering is not a permutation of S,T0,T+,T-");
    seen[k] = true;
  }
}

}  // namespace

const std::array<ComplexMatrix, 8>& gell_mann() {
  static const std::array<ComplexMatrix, 8> g = make_gell_mann();
  return g;
}

const std::array<ComplexMatrix, 6>& symmetry_breaking() {
  static const std::array<ComplexMatrix, 6> g = make_breaking();
  return g;
}

const ComplexMatrix& eta() {
  static const ComplexMatrix e = [] {
    const std::array<double, 4> d{-1.0, 1.0, 1.0, 1.0};
    return ComplexMatrix::diagonal(d);
  }();
  return e;
}

const GeneratorSet& generators() {
  static const GeneratorSet s{gell_mann(), symmetry_breaking(), eta()};
  return s;
}

ComplexMatrix permute_basis(const ComplexMatrix& h, const Ordering& from, const Ordering& to) {
  require_permutation(from);
  require_permutation(to);
  if (h.rows() != 4 || h.cols() != 4) throw DimensionMismatch("permute_basis expects 4x4");
  std::array<std::size_t, 4> src{};
  for (std::size_t i = 0; i < 4; ++i) src[i] = position(from, to[i]);
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = h(src[i], src[j]);
  return out;
}

std::array<double, 15> generator_coefficients(const DeviceParams& params,
                                              const FieldConfig& f) {
  const double ez = params.half_zeeman();
  const double r2 = 1.0 / std::sqrt(2.0);
  return {params.J_exc / 8.0,
          ez * r2 * f.B_x,  ez * r2 * f.B_y,  ez * 0.5 * f.B_z,
          0.0,              0.0,              ez * r2 * f.B_x,
          ez * r2 * f.B_y,  ez * std::sqrt(3.0) / 2.0 * f.B_z,
          -ez * r2 * f.dB_x, ez * r2 * f.dB_y, ez * f.dB_z,
          0.0,              ez * r2 * f.dB_x, ez * r2 * f.dB_y};
}

ComplexMatrix from_generator_coefficients(const std::array<double, 15>& c) {
  ComplexMatrix h = eta() * cplx(c[0]);
  ComplexMatrix triplet(3, 3);
  for (std::size_t k = 0; k < 8; ++k) triplet += gell_mann()[k] * cplx(c[1 + k]);
  ComplexMatrix embedded(4, 4);
  embedded.set_block(1, 1, triplet);
  h += embedded;
  for (std::size_t k = 0; k < 6; ++k) h += symmetry_breaking()[k] * cplx(c[9 + k]);
  return h;
}

ComplexMatrix assemble_triplet_block(const DeviceParams& params, const FieldConfig& fields) {
  auto c = generator_coefficients(params, fields);
  ComplexMatrix t(3, 3);
  for (std::size_t k = 0; k < 8; ++k) t += gell_mann()[k] * cplx(c[1 + k]);
  return t;
}

ComplexMatrix assemble_full(const DeviceParams& params, const FieldConfig& fields,
                            EnergyReference ref) {
  ComplexMatrix h = from_generator_coefficients(generator_coefficients(params, fields));
  if (ref == EnergyReference::SingletZero) {
    h += ComplexMatrix::identity(4) * cplx(params.J_exc / 8.0);
  }
  return h;
}

RotationAxis rotation_axis_4d(const DeviceParams& params, const FieldConfig& f) {
  const double ez = params.half_zeeman();
  const double j8 = params.J_exc / 8.0;
  const double radicand =
      j8 * j8 + ez * ez * (f.B_z * f.B_z / 4.0 + 3.0 * f.B_z * f.B_z / 4.0 + f.B_x * f.B_x +
                           f.B_y * f.B_y + f.dB_z * f.dB_z + f.dB_x * f.dB_x + f.dB_y * f.dB_y);
  const double norm = std::sqrt(radicand);
  if (!(norm > 0.0)) throw ZeroHamiltonian("rotation axis undefined for a zero Hamiltonian");
  RotationAxis r{generator_coefficients(params, f), norm};
  for (double& x : r.axis) x /= norm;
  return r;
}

}  // namespace st0
