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

#include "st0/rotations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "st0/errors.hpp"
#include "st0/hamiltonian.hpp"
#include "st0/symmetry.hpp"
#include "st0/weakfield.hpp"

namespace st0 {

namespace {

constexpr std::size_t kRefinePoints = 4001;
constexpr int kRefineRounds = 3;

// Return probability |<psi0|U(t)|psi0>|^2 from a fixed spectrum.
class ReturnProbability {
 public:
  ReturnProbability(const ComplexMatrix& h, const StateVector& psi0, double hbar)
      : sd_(eigh(h)), hbar_(hbar) {
    const CVector c = eigenbasis_expansion(sd_, psi0);
    for (std::size_t j = 0; j < c.size(); ++j) weight_.push_back(std::norm(c[j]));
  }

  double operator()(double t) const {
    cplx a{};
    for (std::size_t j = 0; j < weight_.size(); ++j) {
      a += weight_[j] * std::polar(1.0, -sd_.eigenvalues[j] * t / hbar_);
    }
    return std::norm(a);
  }

 private:
  SpectralDecomposition sd_;
  std::vector<double> weight_;
  double hbar_;
};

// Vertex of the parabola through (t-h, f0), (t, f1), (t+h, f2).
double parabola_vertex(double t, double h, double f0, double f1, double f2) {
  const double curv = f0 - 2.0 * f1 + f2;
  if (!(curv > 0.0)) return t;
  return t + 0.5 * h * (f0 - f2) / curv;
}

// Smallest sample on a uniform grid over [lo, hi], refined by a parabola.
double sampled_minimum(const ReturnProbability& f, double lo, double hi) {
  const double h = (hi - lo) / static_cast<double>(kRefinePoints - 1);
  std::size_t best = 1;
  double fbest = INFINITY;
  for (std::size_t k = 1; k + 1 < kRefinePoints; ++k) {
    const double v = f(lo + h * static_cast<double>(k));
    if (v < fbest) {
      fbest = v;
      best = k;
    }
  }
  const double t = lo + h * static_cast<double>(best);
  return parabola_vertex(t, h, f(t - h), fbest, f(t + h));
}

double refine_minimum(const ReturnProbability& f, double t, double half_width) {
  for (int round = 0; round < kRefineRounds; ++round) {
    t = sampled_minimum(f, t - half_width, t + half_width);
    half_width = 4.0 * (2.0 * half_width / static_cast<double>(kRefinePoints - 1));
  }
  return t;
}

FieldConfig without_transversal(FieldConfig f) {
  f.B_x = f.B_y = f.dB_x = f.dB_y = 0.0;
  return f;
}

}  // namespace

RotationSpec make_rotation(double lambda_x, double lambda_z, double gate_time,
                           const DeviceParams& params) {
  const double n = std::hypot(lambda_x / 2.0, lambda_z / 2.0);
  if (!(n > 0.0)) throw ZeroCoupling("rotation axis needs a nonzero lambda_x or lambda_z");
  RotationSpec r;
  r.lambda_x = lambda_x;
  r.lambda_z = lambda_z;
  r.gate_time = gate_time;
  r.theta_x = lambda_x * gate_time / params.hbar;
  r.theta_z = lambda_z * gate_time / params.hbar;
  r.axis = {lambda_x / 2.0 / n, lambda_z / 2.0 / n};
  return r;
}

RotationSpec rotation_for(const DeviceParams& params, const FieldConfig& fields) {
  return make_rotation(params.g * params.mu_B_eff * fields.dB_z, params.J_exc / 4.0,
                       fields.duration, params);
}

ComplexMatrix ideal_rotation(double theta_x, double theta_z) {
  const ComplexMatrix gen{{theta_z, theta_x}, {theta_x, -theta_z}};
  return expm_unitary(gen, 0.5, 1.0);
}

double gate_time_for(double theta, double lambda, const DeviceParams& params) {
  if (lambda == 0.0) throw ZeroCoupling("gate time undefined for zero coupling energy");
  return theta * params.hbar / lambda;
}

ComplexMatrix rotate_with_leakage(const DeviceParams& params, const FieldConfig& fields, double t) {
  require_valid(params, fields);
  const ComplexMatrix h_appendix =
      from_generator_coefficients(generator_coefficients(params, fields));
  const ComplexMatrix h = permute_basis(h_appendix, kAppendix, kCanonical);
  return expm_unitary(h, t, params.hbar);
}

ComplexMatrix align_global_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("align_global_phase shape mismatch");
  }
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j)) > std::abs(a(bi, bj)) * (1.0 + 1e-9)) {
        bi = i;
        bj = j;
      }
  const cplx x = a(bi, bj), y = b(bi, bj);
  if (std::abs(x) == 0.0 || std::abs(y) == 0.0) return b;
  return b * ((x / std::abs(x)) / (y / std::abs(y)));
}

LagReport phase_lag(const DeviceParams& params, const FieldConfig& fields, const StateVector& psi0,
                    double horizon, std::size_t n_points) {
  require_valid(params, fields);
  if (psi0.dim() != 4) throw DimensionMismatch("phase_lag needs a 4-level initial state");
  const FieldConfig ref_fields = without_transversal(fields);
  const ComplexMatrix h_ref = build_dqd(params, ref_fields).matrix;
  const ComplexMatrix h = build_dqd(params, fields).matrix;
  const ReturnProbability ref(h_ref, psi0, params.hbar);
  const ReturnProbability leaky(h, psi0, params.hbar);

  LagReport r;
  const SpectralDecomposition qubit = eigh(h_ref.block(0, 0, 2, 2));
  const double gap_ref = qubit.eigenvalues[1] - qubit.eigenvalues[0];
  r.period = 2.0 * std::numbers::pi * params.hbar / gap_ref;

  const std::vector<double> grid = uniform_grid(0.0, horizon, n_points);
  std::vector<double> p(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) p[k] = ref(grid[k]);
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  const double deep = 0.5 * (*lo + *hi);
  std::size_t found = 0;
  for (std::size_t k = 1; k + 1 < p.size(); ++k) {
    if (p[k] <= p[k - 1] && p[k] < p[k + 1] && p[k] < deep) found = k;
  }
  if (found == 0) throw NoExtremumFound("no population minimum inside the horizon");
  const double spacing = grid[1] - grid[0];
  r.t_reference = refine_minimum(ref, grid[found], 2.0 * spacing);

  if (h == h_ref) {
    r.t_leaky = r.t_reference;
  } else {
    const double coarse =
        sampled_minimum(leaky, r.t_reference - 0.5 * r.period, r.t_reference + 0.5 * r.period);
    r.t_leaky = refine_minimum(leaky, coarse, 2.0 * r.period / static_cast<double>(kRefinePoints));
  }
  r.lag = r.t_leaky - r.t_reference;
  r.phase = 2.0 * std::numbers::pi * r.lag / r.period;
  r.predicted_lag = r.t_reference * (gap_ref / pt_doublet_gap(params, fields) - 1.0);
  return r;
}

EncodingOperators encoding_operators(Encoding encoding) {
  using namespace spin;
  const ComplexMatrix dot = s1(0) * s2(0) + s1(1) * s2(1) + s1(2) * s2(2);
  const ComplexMatrix zz = s1(2) * s2(2);
  const ComplexMatrix zdiff = s1(2) - s2(2);
  const ComplexMatrix z_21 = (s2(0) * s1(1) - s2(1) * s1(0)) * cplx(2.0);  // 2 z.(S2 x S1)
  const double r2 = std::sqrt(2.0);
  const double h = 1.0 / r2;

  EncodingOperators e;
  std::array<ComplexMatrix, 3> prod;
  switch (encoding) {
    case Encoding::ST0:
      prod = {zdiff, z_21, (dot * cplx(2.0) - zz) * cplx(-1.0)};
      e.computational = {CVector{1.0, 0.0, 0.0, 0.0}, CVector{0.0, 1.0, 0.0, 0.0}};
      break;
    case Encoding::FlipFlop:
      prod = {dot * cplx(2.0) - zz, z_21, zdiff};
      e.computational = {CVector{h, h, 0.0, 0.0}, CVector{h, -h, 0.0, 0.0}};
      break;
    case Encoding::STplus: {
      const ComplexMatrix y_21 = s2(2) * s1(0) - s2(0) * s1(2);  // y.(S2 x S1)
      const ComplexMatrix x_12 = s1(1) * s2(2) - s1(2) * s2(1);  // x.(S1 x S2)
      prod = {(s2(0) - s1(0)) * cplx(h) - y_21 * cplx(r2),
              (s1(1) - s2(1)) * cplx(h) + x_12 * cplx(r2),
              (s1(2) + s2(2)) * cplx(-0.5) - dot - zz};
      e.computational = {CVector{1.0, 0.0, 0.0, 0.0}, CVector{0.0, 0.0, 1.0, 0.0}};
      break;
    }
  }
  for (std::size_t k = 0; k < 3; ++k) e.sigma[k] = to_singlet_triplet(prod[k]);
  return e;
}

ComplexMatrix project(const ComplexMatrix& op, const std::array<CVector, 2>& basis) {
  if (op.rows() != basis[0].size() || op.rows() != basis[1].size()) {
    throw DimensionMismatch("projection basis does not match operator");
  }
  ComplexMatrix p(2, 2);
  for (std::size_t a = 0; a < 2; ++a) {
    const CVector col = op * std::span<const cplx>(basis[a]);
    for (std::size_t b = 0; b < 2; ++b) p(b, a) = inner(basis[b], col);
  }
  const cplx half_trace = 0.5 * p.trace();
  p(0, 0) -= half_trace;
  p(1, 1) -= half_trace;
  return p;
}

}  // namespace st0
