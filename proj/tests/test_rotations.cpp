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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "st0/dynamics.hpp"
#include "st0/errors.hpp"
#include "st0/hamiltonian.hpp"
#include "st0/rotations.hpp"
#include "support.hpp"

using namespace st0;
using testing::max_diff;

namespace {

constexpr double kPi = std::numbers::pi;

// cos(a/2) I - i sin(a/2) (n . sigma) in the x-z plane.
ComplexMatrix axis_angle(double nx, double nz, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  return ComplexMatrix{{cplx(c, -s * nz), cplx(0, -s * nx)}, {cplx(0, -s * nx), cplx(c, s * nz)}};
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

StateVector plus_state() { return StateVector::normalized({1.0, 1.0, 0.0, 0.0}); }

FieldConfig z_rotation_fields(double b) {
  FieldConfig f;
  f.B_z = 0.1;
  f.B_x = f.B_y = f.dB_x = f.dB_y = b;
  return f;
}

}  // namespace

TEST_CASE("ideal rotations") {
  CHECK(max_diff(ideal_rotation(0.0, kPi), ComplexMatrix{{cplx(0, -1), 0.0}, {0.0, cplx(0, 1)}}) < 1e-15);
  CHECK(max_diff(ideal_rotation(kPi, 0.0), ComplexMatrix{{0.0, cplx(0, -1)}, {cplx(0, -1), 0.0}}) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_diff(ideal_rotation(kPi / 2, kPi / 2), axis_angle(r, r, kPi / std::sqrt(2.0))) < 1e-15);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-7.0, 7.0);
  for (int k = 0; k < 200; ++k) {
    const double tx = u(rng), tz = u(rng);
    const double a = std::hypot(tx, tz);
    const ComplexMatrix r2 = ideal_rotation(tx, tz);
    CHECK(max_diff(r2, axis_angle(tx / a, tz / a, a)) < 1e-13);
    CHECK(testing::unitarity_defect(r2) < 1e-14);
  }
}

TEST_CASE("gate times") {
  const DeviceParams p = default_params();
  CHECK(gate_time_for(0.0, 1e-6, p) == 0.0);
  const double tx = gate_time_for(kPi, p.g * p.mu_B_eff * 0.01, p);
  CHECK(tx == doctest::Approx(1.608e-9).epsilon(1e-3));
  CHECK(gate_time_for(2 * kPi, p.J_exc / 4.0, p) == doctest::Approx(8.272e-9).epsilon(1e-3));
  CHECK_THROWS_AS(gate_time_for(kPi, 0.0, p), ZeroCoupling);
}

TEST_CASE("rotation spec") {
  const DeviceParams p = default_params();
  FieldConfig f = reference_fields();
  f.duration = 1e-9;
  const RotationSpec r = rotation_for(p, f);
  CHECK(r.theta_x == doctest::Approx(p.g * p.mu_B_eff * 0.01 * 1e-9 / p.hbar));
  CHECK(r.theta_z == doctest::Approx(p.J_exc / 4.0 * 1e-9 / p.hbar));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e-6, 1e-6);
  for (int k = 0; k < 500; ++k) {
    const RotationSpec s = make_rotation(u(rng), u(rng), 1e-9, p);
    CHECK(std::abs(std::hypot(s.axis[0], s.axis[1]) - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(make_rotation(0.0, 0.0, 1e-9, p), ZeroCoupling);
}

TEST_CASE("rotation with leakage equals the direct propagator") {
  const DeviceParams p = default_params();
  std::mt19937_64 rng(13);
  CHECK(max_diff(rotate_with_leakage(p, reference_fields(), 0.0), ComplexMatrix::identity(4)) == 0.0);
  for (int k = 0; k < 200; ++k) {
    const FieldConfig f = testing::random_fields(rng, 0.02);
    const ComplexMatrix u = rotate_with_leakage(p, f, 3e-9);
    CHECK(testing::unitarity_defect(u) < 1e-12);
    CHECK(max_diff(u, propagator(build_dqd(p, f).matrix, 3e-9, p)) < 1e-11);
  }
}

TEST_CASE("leak-free rotation block is the ideal rotation") {
  // The singlet sits below T0, so the exchange enters as -(J/8) sigma_z.
  const DeviceParams p = default_params();
  FieldConfig f = reference_fields();
  for (double t : {0.3e-9, 1.608e-9, 5e-9}) {
    const RotationSpec r = make_rotation(p.g * p.mu_B_eff * f.dB_z, p.J_exc / 4.0, t, p);
    const ComplexMatrix block = rotate_with_leakage(p, f, t).block(0, 0, 2, 2);
    const ComplexMatrix ideal = ideal_rotation(r.theta_x, -r.theta_z);
    CHECK(max_diff(block, align_global_phase(block, ideal)) < 1e-11);
  }
  // Gate time from the calibration gives a pi rotation about x.
  FieldConfig g;
  g.dB_z = 0.01;
  DeviceParams q = p;
  q.J_exc = 0.0;
  const double tau = gate_time_for(kPi, q.g * q.mu_B_eff * 0.01, q);
  const ComplexMatrix block = rotate_with_leakage(q, g, tau).block(0, 0, 2, 2);
  CHECK(max_diff(block, align_global_phase(block, ideal_rotation(kPi, 0.0))) < 1e-11);
}

TEST_CASE("transversal fields leak the rotated singlet") {
  const DeviceParams p = default_params();
  FieldConfig f = reference_fields();
  f.B_x = f.B_y = f.dB_x = f.dB_y = 5e-4;
  double leak = 0.0;
  for (double t : {1e-9, 3e-9, 7e-9}) {
    const ComplexMatrix u = rotate_with_leakage(p, f, t);
    leak = std::max(leak, std::norm(u(2, 0)) + std::norm(u(3, 0)));
  }
  CHECK(leak > 1e-6);
}

TEST_CASE("phase lag vanishes without transversal fields") {
  const DeviceParams p = default_params();
  const LagReport r = phase_lag(p, z_rotation_fields(0.0), plus_state(), 100e-9, 2001);
  CHECK(r.lag == 0.0);
  CHECK(r.phase == 0.0);
  CHECK(r.predicted_lag == 0.0);
  CHECK(r.period == doctest::Approx(2 * kPi * p.hbar / (p.J_exc / 4.0)));
}

TEST_CASE("leaky z-rotation is slower") {
  const DeviceParams p = default_params();
  const LagReport small = phase_lag(p, z_rotation_fields(1e-4), plus_state(), 1e-6, 20001);
  const LagReport large = phase_lag(p, z_rotation_fields(5e-4), plus_state(), 1e-6, 20001);
  MESSAGE("z lag 0.1 mT: " << small.lag << " predicted " << small.predicted_lag);
  MESSAGE("z lag 0.5 mT: " << large.lag << " predicted " << large.predicted_lag);
  CHECK(small.lag > 0.0);
  CHECK(large.lag > small.lag);
  CHECK(std::abs(small.lag - small.predicted_lag) < 0.05 * std::abs(small.predicted_lag));
  CHECK(std::abs(large.lag - large.predicted_lag) < 0.05 * std::abs(large.predicted_lag));
  CHECK(large.phase == doctest::Approx(2 * kPi * large.lag / large.period));
}

TEST_CASE("phase lag needs a minimum in range") {
  const DeviceParams p = default_params();
  CHECK_THROWS_AS(phase_lag(p, z_rotation_fields(1e-4), plus_state(), 1e-9, 101), NoExtremumFound);
}

TEST_CASE("encoded Pauli algebra") {
  for (Encoding enc : {Encoding::ST0, Encoding::FlipFlop, Encoding::STplus}) {
    const EncodingOperators e = encoding_operators(enc);
    std::array<ComplexMatrix, 3> s;
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(hermiticity_defect(e.sigma[k]) < 1e-15);
      s[k] = project(e.sigma[k], e.computational);
      CHECK(max_diff(s[k] * s[k], ComplexMatrix::identity(2)) < 1e-12);
    }
    CHECK(max_diff(commutator(s[0], s[1]), s[2] * cplx(0, 2)) < 1e-12);
    CHECK(max_diff(commutator(s[1], s[2]), s[0] * cplx(0, 2)) < 1e-12);
    CHECK(max_diff(commutator(s[2], s[0]), s[1] * cplx(0, 2)) < 1e-12);
  }
}

TEST_CASE("ST0 encoding conventions") {
  const EncodingOperators e = encoding_operators(Encoding::ST0);
  // S1z - S2z maps S to T0 with unit coefficient.
  CHECK(std::abs(e.sigma[0](1, 0) - 1.0) < 1e-15);
  const ComplexMatrix z = project(e.sigma[2], e.computational);
  CHECK(max_diff(z, ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}) < 1e-15);
}
