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

#include "st0/dynamics.hpp"
#include "st0/matrix.hpp"
#include "st0/physics.hpp"

namespace st0 {

struct RotationSpec {
  double theta_x = 0.0;  // rad
  double theta_z = 0.0;  // rad
  std::array<double, 2> axis{};  // unit (x, z)
  double gate_time = 0.0;  // s
  double lambda_x = 0.0;   // eV
  double lambda_z = 0.0;   // eV
};

/// theta_i = lambda_i * gate_time / hbar, axis along (lambda_x, lambda_z).
/// Throws ZeroCoupling if both energies vanish.
RotationSpec make_rotation(double lambda_x, double lambda_z, double gate_time,
                           const DeviceParams& params);

/// lambda_x = g mu_B dB_z and lambda_z = J/4.
RotationSpec rotation_for(const DeviceParams& params, const FieldConfig& fields);

/// exp(-i (theta_x sigma_x + theta_z sigma_z) / 2)
ComplexMatrix ideal_rotation(double theta_x, double theta_z);

/// tau = theta hbar / lambda. Throws ZeroCoupling for lambda == 0.
double gate_time_for(double theta, double lambda, const DeviceParams& params);

/// 4x4 propagator assembled from the generator expansion and returned in the
/// canonical basis.
ComplexMatrix rotate_with_leakage(const DeviceParams& params, const FieldConfig& fields, double t);

/// Multiplies `b` by the unit phase that makes its largest-magnitude entry
/// (located on `a`) agree in phase with `a`.
ComplexMatrix align_global_phase(const ComplexMatrix& a, const ComplexMatrix& b);

/// Lag between the return-probability minima of a leaky evolution and the
/// same evolution with B_x, B_y, dB_x, dB_y switched off.
struct LagReport {
  double t_reference = 0.0;  // s, refined minimum of the leak-free curve
  double t_leaky = 0.0;      // s, matching minimum of the leaky curve
  double lag = 0.0;          // t_leaky - t_reference; positive means slower
  double phase = 0.0;        // 2 pi lag / period, rad
  double period = 0.0;       // s, leak-free qubit period
  double predicted_lag = 0.0;  // from the perturbative doublet splitting
};

/// Tracks |<psi0|psi(t)>|^2. The reference minimum is the last deep local
/// minimum (below the midpoint of the sampled range) on an n-point grid over
/// [0, horizon]; the leaky minimum is searched within half a period of it.
/// Both are refined by repeated quadratic interpolation. Throws
/// NoExtremumFound when the grid shows no such minimum.
LagReport phase_lag(const DeviceParams& params, const FieldConfig& fields, const StateVector& psi0,
                    double horizon, std::size_t n_points);

enum class Encoding { ST0, FlipFlop, STplus };

struct EncodingOperators {
  std::array<ComplexMatrix, 3> sigma;     // x, y, z as 4x4 canonical-basis operators
  std::array<CVector, 2> computational;  // |0>, |1> in the canonical basis
};

/// Two-spin operator representations of the encoded Pauli operators.
EncodingOperators encoding_operators(Encoding encoding);

/// Traceless part of B^dagger op B, with B the computational basis.
ComplexMatrix project(const ComplexMatrix& op, const std::array<CVector, 2>& basis);

}  // namespace st0
