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
#include <vector>

#include "st0/matrix.hpp"
#include "st0/physics.hpp"

namespace st0 {

/// Normalized amplitudes in the canonical basis (dimension 2 or 4).
class StateVector {
 public:
  /// Throws NotNormalized unless sum |a_i|^2 = 1 within `tol`.
  explicit StateVector(CVector amplitudes, double tol = 1e-12);
  static StateVector basis(BasisLabel b, std::size_t dim = 4);
  /// Rescales to unit norm; throws NotNormalized for a zero vector.
  static StateVector normalized(CVector amplitudes);

  std::size_t dim() const { return amps_.size(); }
  const CVector& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

 private:
  CVector amps_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::array<double, 4>> populations;
  std::vector<std::array<cplx, 4>> amplitudes;

  std::size_t size() const { return times.size(); }
  std::vector<double> population_of(BasisLabel b) const;
};

/// n equally spaced points from start to stop inclusive (n >= 2).
std::vector<double> uniform_grid(double start, double stop, std::size_t n);

/// sum_j exp(-i lambda_j t / hbar) |phi_j><phi_j|
ComplexMatrix propagator(const ComplexMatrix& h, double t, const DeviceParams& params);

/// Exact evolution of a 4-dimensional state on `grid`. Time points must be
/// strictly increasing.
Trajectory evolve(const ComplexMatrix& h, const StateVector& psi0, std::span<const double> grid,
                  const DeviceParams& params);

/// alpha|S> + beta exp(-i (J/4) t / hbar)|T0>.
StateVector relative_phase(cplx alpha, cplx beta, const DeviceParams& params, double t);

/// Coefficients <phi_j|state> of a basis state in the eigenbasis of h,
/// ordered like eigh's eigenvalues.
CVector eigenbasis_expansion(const ComplexMatrix& h, BasisLabel state);
CVector eigenbasis_expansion(const SpectralDecomposition& sd, const StateVector& state);

/// |sum_j <target|phi_j><phi_j|psi0> exp(-i lambda_j t / hbar)|^2 evaluated
/// directly from the spectrum.
double population_from_spectrum(const SpectralDecomposition& sd, const StateVector& psi0,
                                BasisLabel target, double t, const DeviceParams& params);

}  // namespace st0
