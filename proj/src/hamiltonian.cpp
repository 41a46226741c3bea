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

#include "st0/hamiltonian.hpp"

#include <cmath>

#include "st0/errors.hpp"

namespace st0 {

namespace {
constexpr cplx kI{0.0, 1.0};
}

DqdHamiltonian build_dqd(const DeviceParams& params, const FieldConfig& fields,
                         double energy_offset) {
  const double ez = params.half_zeeman();
  const double c = ez / std::sqrt(2.0);
  const double j8 = params.J_exc / 8.0;
  ComplexMatrix h(4, 4);
  h(0, 0) = -j8 + energy_offset;
  h(1, 1) = j8 + energy_offset;
  h(2, 2) = j8 + ez * fields.B_z + energy_offset;
  h(3, 3) = j8 - ez * fields.B_z + energy_offset;
  h(0, 1) = ez * fields.dB_z;
  h(0, 2) = -c * cplx(fields.dB_x, fields.dB_y);
  h(0, 3) = c * cplx(fields.dB_x, -fields.dB_y);
  h(1, 2) = c * cplx(fields.B_x, fields.B_y);
  h(1, 3) = c * cplx(fields.B_x, -fields.B_y);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) h(j, i) = std::conj(h(i, j));
  return {h, params, fields};
}

BlockDecomposition split_blocks(const ComplexMatrix& h) {
  if (h.rows() != 4 || h.cols() != 4) throw DimensionMismatch("split_blocks expects 4x4");
  return {h.block(0, 0, 2, 2), h.block(0, 2, 2, 2), h.block(2, 2, 2, 2)};
}

BlockDecomposition split_blocks(const DqdHamiltonian& h) { return split_blocks(h.matrix); }

ComplexMatrix reassemble(const BlockDecomposition& b) {
  return build_generic_leak(b.h0, b.h_out, b.h_leak);
}

ComplexMatrix build_generic_leak(const ComplexMatrix& h0, const ComplexMatrix& h_out,
                                 const ComplexMatrix& h_leak) {
  if (h0.rows() != 2 || h0.cols() != 2) throw DimensionMismatch("h0 must be 2x2");
  if (!h_out.square()) throw DimensionMismatch("h_out must be square");
  const std::size_t m = h_out.rows();
  if (h_leak.rows() != 2 || h_leak.cols() != m) {
    throw DimensionMismatch("h_leak must be 2 x dim(h_out)");
  }
  if (2 + m > kMaxDim) throw DimensionMismatch("total dimension exceeds 8");
  require_hermitian(h0, "build_generic_leak(h0)");
  require_hermitian(h_out, "build_generic_leak(h_out)");
  ComplexMatrix h(2 + m, 2 + m);
  h.set_block(0, 0, h0);
  h.set_block(0, 2, h_leak);
  h.set_block(2, 0, h_leak.adjoint());
  h.set_block(2, 2, h_out);
  return h;
}

ComplexMatrix build_single_spin(const Vec3& b, const DeviceParams& params) {
  const double ez = params.half_zeeman();
  return ComplexMatrix{{ez * b[2], ez * cplx(b[0], -b[1])},
                       {ez * cplx(b[0], b[1]), -ez * b[2]}};
}

ComplexMatrix product_basis_zeeman_oracle(const DeviceParams& params, const Vec3& b_dot1,
                                          const Vec3& b_dot2) {
  ComplexMatrix hz(4, 4);
  for (int a = 0; a < 3; ++a) {
    hz += spin::s1(a) * cplx(b_dot1[a]);
    hz += spin::s2(a) * cplx(b_dot2[a]);
  }
  hz *= params.g * params.mu_B_eff;
  return spin::to_singlet_triplet(hz);
}

namespace spin {

ComplexMatrix pauli(int axis) {
  switch (axis) {
    case 0: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case 1: return ComplexMatrix{{0.0, -kI}, {kI, 0.0}};
    case 2: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    default: throw InvalidParameter("spin axis must be 0, 1 or 2");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix s1(int axis) { return kron(pauli(axis), ComplexMatrix::identity(2)) * cplx(0.5); }
ComplexMatrix s2(int axis) { return kron(ComplexMatrix::identity(2), pauli(axis)) * cplx(0.5); }

ComplexMatrix product_to_singlet_triplet() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix w(4, 4);
  w(1, 0) = r;  // S = (ud - du)/sqrt2
  w(2, 0) = -r;
  w(1, 1) = r;  // T0 = (ud + du)/sqrt2
  w(2, 1) = r;
  w(0, 2) = 1.0;  // T+ = uu
  w(3, 3) = 1.0;  // T- = dd
  return w;
}

ComplexMatrix to_singlet_triplet(const ComplexMatrix& product_op) {
  const ComplexMatrix w = product_to_singlet_triplet();
  return w.adjoint() * product_op * w;
}

ComplexMatrix total_sz() { return to_singlet_triplet(s1(2) + s2(2)); }

}  // namespace spin

}  // namespace st0
