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

#include "st0/matrix.hpp"
#include "st0/physics.hpp"

namespace st0 {

/// 4x4 double-dot Hamiltonian in the canonical (S, T0, T+, T-) basis.
struct DqdHamiltonian {
  ComplexMatrix matrix;
  DeviceParams params;
  FieldConfig fields;
};

/// Diagonal (-J/8, J/8, J/8 + Ez, J/8 - Ez) with Ez = g mu_B B_z / 2, the
/// gradient dB_z on the S-T0 element and the transversal couplings on the
/// T+/T- rows. `energy_offset` is added to every diagonal entry.
DqdHamiltonian build_dqd(const DeviceParams& params, const FieldConfig& fields,
                         double energy_offset = 0.0);

/// Partition into the qubit block, the qubit-to-leakage block and the
/// leakage block.
struct BlockDecomposition {
  ComplexMatrix h0;      // {S, T0}
  ComplexMatrix h_leak;  // rows {S, T0}, cols {T+, T-}
  ComplexMatrix h_out;   // {T+, T-}
};

BlockDecomposition split_blocks(const ComplexMatrix& h);
BlockDecomposition split_blocks(const DqdHamiltonian& h);
ComplexMatrix reassemble(const BlockDecomposition& b);

/// [[h0, h_leak], [h_leak^dagger, h_out]] for a 2-level qubit coupled to
/// n - 2 outside levels.
ComplexMatrix build_generic_leak(const ComplexMatrix& h0, const ComplexMatrix& h_out,
                                 const ComplexMatrix& h_leak);

using Vec3 = std::array<double, 3>;

/// g mu_B / 2 (B . sigma) for one spin.
ComplexMatrix build_single_spin(const Vec3& b, const DeviceParams& params);

/// Zeeman energy g mu_B (B1 . s1 + B2 . s2) built in the product basis and
/// rotated into the canonical singlet-triplet basis.
ComplexMatrix product_basis_zeeman_oracle(const DeviceParams& params, const Vec3& b_dot1,
                                          const Vec3& b_dot2);

namespace spin {

ComplexMatrix pauli(int axis);  // 0 = x, 1 = y, 2 = z
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spin-1/2 operator of dot 1 or dot 2 on the product basis
/// {uu, ud, du, dd}; the first tensor factor is dot 1.
ComplexMatrix s1(int axis);
ComplexMatrix s2(int axis);

/// Columns are S, T0, T+, T- expressed in the product basis.
ComplexMatrix product_to_singlet_triplet();

/// W^dagger op W.
ComplexMatrix to_singlet_triplet(const ComplexMatrix& product_op);

/// S1z + S2z in the canonical basis.
ComplexMatrix total_sz();

}  // namespace spin

}  // namespace st0
