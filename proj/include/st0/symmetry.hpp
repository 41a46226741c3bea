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

/// A basis ordering lists which label sits at each index.
using Ordering = std::array<BasisLabel, 4>;

inline constexpr Ordering kCanonical = kCanonicalOrder;
/// Singlet first, then the triplets by descending S_z.
inline constexpr Ordering kAppendix = {BasisLabel::S, BasisLabel::Tplus, BasisLabel::T0,
                                       BasisLabel::Tminus};

struct GeneratorSet {
  std::array<ComplexMatrix, 8> gell_mann;  // 3x3, triplet basis (T+, T0, T-)
  std::array<ComplexMatrix, 6> breaking;   // 4x4, appendix ordering
  ComplexMatrix eta;                       // diag(-1, 1, 1, 1)
};

/// Gell-Mann matrices lambda_1..lambda_8 (index 0..7).
const std::array<ComplexMatrix, 8>& gell_mann();
/// Singlet-to-triplet generators: pairs (S,T+), (S,T0), (S,T-), each as a
/// real then an imaginary coupling.
const std::array<ComplexMatrix, 6>& symmetry_breaking();
const ComplexMatrix& eta();
const GeneratorSet& generators();

/// P h P^T, re-indexing rows and columns from `from` to `to`.
ComplexMatrix permute_basis(const ComplexMatrix& h, const Ordering& from, const Ordering& to);

/// 3x3 Zeeman block in the triplet basis (T+, T0, T-).
ComplexMatrix assemble_triplet_block(const DeviceParams& params, const FieldConfig& fields);

/// Where the exchange energy zero sits. `Symmetric` uses (J/8) eta and
/// matches build_dqd exactly; `SingletZero` uses (J/8)(eta + I), putting the
/// singlet at zero energy.
enum class EnergyReference { Symmetric, SingletZero };

/// Full 4x4 Hamiltonian assembled from the generators, returned in the
/// appendix ordering (S, T+, T0, T-).
ComplexMatrix assemble_full(const DeviceParams& params, const FieldConfig& fields,
                            EnergyReference ref = EnergyReference::Symmetric);

/// Coefficients of H on [eta, lambda_1..lambda_8, lambda'_1..lambda'_6].
std::array<double, 15> generator_coefficients(const DeviceParams& params,
                                              const FieldConfig& fields);

/// sum_k c_k G_k in the appendix ordering.
ComplexMatrix from_generator_coefficients(const std::array<double, 15>& c);

struct RotationAxis {
  std::array<double, 15> axis;  // unit vector
  double norm;                  // eV
};

/// Throws ZeroHamiltonian if every coefficient vanishes.
RotationAxis rotation_axis_4d(const DeviceParams& params, const FieldConfig& fields);

}  // namespace st0
