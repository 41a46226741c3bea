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

#include "st0/weakfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "st0/errors.hpp"
#include "st0/hamiltonian.hpp"

namespace st0 {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr std::size_t kS = 0, kT0 = 1;
constexpr std::array<std::size_t, 2> kLeak = {2, 3};

double checked_gap(double a, double b) {
  const double d = a - b;
  if (std::abs(d) < kMinCoupledGap) {
    throw DegenerateDenominator("coupled levels closer than " + std::to_string(kMinCoupledGap) +
                                " eV");
  }
  return d;
}

// (e^h - 1)/h, series near zero.
cplx e1(cplx h) {
  if (std::abs(h) < 0.5) {
    cplx term = 1.0, sum = 1.0;
    for (int k = 2; k < 25; ++k) {
      term *= h / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return (std::exp(h) - 1.0) / h;
}

// Diagonal and off-diagonal split of the 4x4 Hamiltonian.
struct Split {
  std::array<double, 4> lambda;
  ComplexMatrix v;
};

Split split(const DeviceParams& params, const FieldConfig& fields) {
  const ComplexMatrix h = build_dqd(params, fields).matrix;
  Split s{{}, h};
  for (std::size_t i = 0; i < 4; ++i) {
    s.lambda[i] = h(i, i).real();
    s.v(i, i) = 0.0;
  }
  return s;
}

}  // namespace

cplx exp_divided_difference(cplx z0, cplx z1) { return std::exp(z0) * e1(z1 - z0); }

cplx exp_divided_difference(cplx z0, cplx z1, cplx z2) {
  const std::array<cplx, 3> z{z0, z1, z2};
  // Divide by the farthest-apart pair; fall back to a series when all three
  // points are close.
  std::size_t bi = 0, bj = 1;
  double spread = -1.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(z[i] - z[j]) > spread) {
        spread = std::abs(z[i] - z[j]);
        bi = i;
        bj = j;
      }
  if (spread < 0.5) {
    const cplx d1 = z1 - z0, d2 = z2 - z0;
    cplx sum{}, fact = 0.5;  // 1/(k+2)!
    for (int k = 0; k < 30; ++k) {
      cplx hk{};
      cplx p1 = 1.0;
      for (int j = 0; j <= k; ++j) {
        cplx p2 = 1.0;
        for (int l = 0; l < k - j; ++l) p2 *= d2;
        hk += p1 * p2;
        p1 *= d1;
      }
      sum += hk * fact;
      fact /= static_cast<double>(k + 3);
    }
    return std::exp(z0) * sum;
  }
  const std::size_t bk = 3 - bi - bj;
  return (exp_divided_difference(z[bk], z[bj]) - exp_divided_difference(z[bk], z[bi])) /
         (z[bj] - z[bi]);
}

PtSpectrum pt_eigenvalues(const DeviceParams& params, const FieldConfig& fields) {
  require_valid(params, fields);
  const Split s = split(params, fields);
  PtSpectrum out;
  out.report = validate(params, fields);
  out.unperturbed = s.lambda;
  for (std::size_t i = 0; i < 4; ++i) {
    double shift = 0.0;
    for (std::size_t m = 0; m < 4; ++m) {
      if (m == i) continue;
      const double w = std::norm(s.v(m, i));
      if (w == 0.0) continue;
      const double term = w / checked_gap(s.lambda[i], s.lambda[m]);
      shift += term;
      if (i < 2 && m >= 2) out.leakage_corrections[i] += term;
    }
    out.corrections[i] = shift;
    out.lambda_p[i] = s.lambda[i] + shift;
  }
  return out;
}

TransitionAmplitudes transition_amplitudes(const DeviceParams& params, const FieldConfig& fields) {
  require_valid(params, fields);
  const ComplexMatrix h = build_dqd(params, fields).matrix;
  TransitionAmplitudes a{};
  a.first_order = params.half_zeeman() * fields.dB_z;
  a.a_S_to_T0 = a.first_order;
  a.a_T0_to_S = a.first_order;
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t m = kLeak[k];
    const cplx fwd = h(kT0, m) * h(m, kS);
    const cplx bwd = h(kS, m) * h(m, kT0);
    a.second_order_S_to_T0[k] =
        fwd == cplx{} ? cplx{} : fwd / checked_gap(h(kS, kS).real(), h(m, m).real());
    a.second_order_T0_to_S[k] =
        bwd == cplx{} ? cplx{} : bwd / checked_gap(h(kT0, kT0).real(), h(m, m).real());
    a.a_S_to_T0 += a.second_order_S_to_T0[k];
    a.a_T0_to_S += a.second_order_T0_to_S[k];
  }
  return a;
}

EffectiveHamiltonian effective_hamiltonian(const DeviceParams& params, const FieldConfig& fields) {
  const PtSpectrum pt = pt_eigenvalues(params, fields);
  const TransitionAmplitudes amp = transition_amplitudes(params, fields);
  EffectiveHamiltonian e;
  e.raw = ComplexMatrix(2, 2);
  e.raw(0, 0) = pt.unperturbed[kS] + pt.leakage_corrections[kS];
  e.raw(1, 1) = pt.unperturbed[kT0] + pt.leakage_corrections[kT0];
  e.raw(0, 1) = amp.a_T0_to_S;
  e.raw(1, 0) = amp.a_S_to_T0;
  e.asymmetry = std::abs(e.raw(0, 1) - std::conj(e.raw(1, 0)));
  e.matrix = (e.raw + e.raw.adjoint()) * cplx(0.5);
  return e;
}

ComplexMatrix exact_interaction_propagator(const DeviceParams& params, const FieldConfig& fields,
                                           double t) {
  const DqdHamiltonian h = build_dqd(params, fields);
  ComplexMatrix free(4, 4);
  for (std::size_t i = 0; i < 4; ++i) free(i, i) = std::polar(1.0, h.matrix(i, i).real() * t / params.hbar);
  return free * expm_unitary(h.matrix, t, params.hbar);
}

ComplexMatrix dyson_propagator(const DeviceParams& params, const FieldConfig& fields, double t,
                               int order, DysonForm form) {
  if (order < 0 || order > 2) throw InvalidParameter("Dyson order must be 0, 1 or 2");
  require_valid(params, fields);
  ComplexMatrix u = ComplexMatrix::identity(4);
  if (order == 0) return u;
  const Split s = split(params, fields);
  const double hbar = params.hbar;

  if (form == DysonForm::ConstantGenerator) {
    const ComplexMatrix a = s.v * cplx(0.0, -t / hbar);
    u += a;
    if (order == 2) u += (a * a) * cplx(0.5);
    return u;
  }

  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = s.lambda[i] / hbar;
  const ComplexMatrix wv = s.v * cplx(1.0 / hbar);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      if (wv(a, b) != cplx{}) {
        u(a, b) += -kI * wv(a, b) * t * exp_divided_difference(0.0, kI * (w[a] - w[b]) * t);
      }
    }
  if (order == 2) {
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t m = 0; m < 4; ++m) {
          const cplx c = wv(a, m) * wv(m, b);
          if (c == cplx{}) continue;
          u(a, b) -= c * t * t *
                     exp_divided_difference(0.0, kI * (w[a] - w[m]) * t, kI * (w[a] - w[b]) * t);
        }
  }
  return u;
}

std::array<PathAmplitude, 6> leakage_path_amplitudes(const DeviceParams& params,
                                                     const FieldConfig& fields, double t) {
  const Split s = split(params, fields);
  const ComplexMatrix& v = s.v;
  const double half_t2 = 0.5 * t * t;
  return {{{"S->S", v(kS, kS) * t},
           {"S->T0", v(kT0, kS) * t},
           {"S->Tp", v(2, kS) * t},
           {"S->Tm", v(3, kS) * t},
           {"S->Tp->T0", v(kT0, 2) * v(2, kS) * half_t2},
           {"S->Tm->T0", v(kT0, 3) * v(3, kS) * half_t2}}};
}

double pt_doublet_gap(const DeviceParams& params, const FieldConfig& fields) {
  require_valid(params, fields);
  const ComplexMatrix h = build_dqd(params, fields).matrix;
  const SpectralDecomposition qubit = eigh(h.block(0, 0, 2, 2));
  std::array<double, 2> level{};
  for (std::size_t k = 0; k < 2; ++k) {
    double shift = 0.0;
    for (std::size_t m : kLeak) {
      const cplx coupling = h(m, 0) * qubit.eigenvectors(0, k) + h(m, 1) * qubit.eigenvectors(1, k);
      const double w = std::norm(coupling);
      if (w == 0.0) continue;
      shift += w / checked_gap(qubit.eigenvalues[k], h(m, m).real());
    }
    level[k] = qubit.eigenvalues[k] + shift;
  }
  return level[1] - level[0];
}

}  // namespace st0
