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
#include <string_view>

#include "st0/matrix.hpp"
#include "st0/physics.hpp"

namespace st0 {

/// Gaps between coupled levels below this (eV) are rejected.
inline constexpr double kMinCoupledGap = 1e-12;

/// Second-order shifted levels, indexed S, T0, T+, T-.
struct PtSpectrum {
  std::array<double, 4> unperturbed{};  // diagonal of H
  std::array<double, 4> lambda_p{};     // unperturbed + corrections
  std::array<double, 4> corrections{};  // sum over every coupled level
  /// S and T0 shifts from the T+/T- levels only.
  std::array<double, 2> leakage_corrections{};
  WeakFieldReport report;
};

/// lambda'_i = lambda_i + sum_m |V_im|^2 / (lambda_i - lambda_m) with H split
/// into its diagonal and off-diagonal parts. Throws DegenerateDenominator when
/// a coupled pair is closer than kMinCoupledGap. Outside the weak regime the
/// result is still returned with report.weak_regime == false.
PtSpectrum pt_eigenvalues(const DeviceParams& params, const FieldConfig& fields);

/// Effective S <-> T0 amplitudes through the T+/T- levels:
///   a_S_to_T0 = <T0|H|S> + sum_m <T0|H|m><m|H|S> / (lambda_S - lambda_m)
///   a_T0_to_S = <S|H|T0> + sum_m <S|H|m><m|H|T0> / (lambda_T0 - lambda_m)
struct TransitionAmplitudes {
  cplx a_S_to_T0;
  cplx a_T0_to_S;
  cplx first_order;                       // 1/2 g mu_B dB_z
  std::array<cplx, 2> second_order_S_to_T0;  // via T+, via T-
  std::array<cplx, 2> second_order_T0_to_S;
};

TransitionAmplitudes transition_amplitudes(const DeviceParams& params, const FieldConfig& fields);

struct EffectiveHamiltonian {
  ComplexMatrix matrix;  // Hermitian 2x2 on {S, T0}
  ComplexMatrix raw;     // before Hermitization
  double asymmetry = 0;  // |raw(0,1) - conj(raw(1,0))|
};

/// 2x2 generator with diagonal lambda + leakage shifts and off-diagonals from
/// transition_amplitudes, Hermitized as (H + H^dagger)/2.
EffectiveHamiltonian effective_hamiltonian(const DeviceParams& params, const FieldConfig& fields);

enum class DysonForm {
  /// Time-ordered integrals of V_I(s) = exp(i H0 s/hbar) V exp(-i H0 s/hbar).
  InteractionPicture,
  /// 1 - i V t/hbar + (1/2)(-i V t/hbar)^2 with V held fixed.
  ConstantGenerator,
};

/// Truncated Dyson series for the interaction-picture propagator, with H0 the
/// diagonal of the 4x4 Hamiltonian and V the rest. `order` is 0, 1 or 2.
ComplexMatrix dyson_propagator(const DeviceParams& params, const FieldConfig& fields, double t,
                               int order, DysonForm form = DysonForm::InteractionPicture);

/// exp(i H0 t/hbar) exp(-i H t/hbar)
ComplexMatrix exact_interaction_propagator(const DeviceParams& params, const FieldConfig& fields,
                                           double t);

struct PathAmplitude {
  std::string_view label;
  cplx value;  // first order in eV s, second order in eV^2 s^2
};

/// Constant-generator path integrals starting in |S>: S->S, S->T0, S->T+,
/// S->T- at first order (<m|V|S> t) and S->T+->T0, S->T-->T0 at second order
/// (<T0|V|m><m|V|S> t^2/2).
std::array<PathAmplitude, 6> leakage_path_amplitudes(const DeviceParams& params,
                                                     const FieldConfig& fields, double t);

/// Splitting of the S/T0 doublet after diagonalizing its 2x2 block exactly
/// and adding second-order shifts from the T+/T- levels.
double pt_doublet_gap(const DeviceParams& params, const FieldConfig& fields);

/// Divided differences of exp, exposed for testing.
cplx exp_divided_difference(cplx z0, cplx z1);
cplx exp_divided_difference(cplx z0, cplx z1, cplx z2);

}  // namespace st0
