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
#include <random>

#include "st0/errors.hpp"
#include "st0/hamiltonian.hpp"
#include "st0/symmetry.hpp"
#include "support.hpp"

using namespace st0;
using testing::max_diff;

namespace {

double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_diff(a, b) / std::max(matnorm_max(b), 1e-300);
}

// Triplet block written out entry by entry.
ComplexMatrix triplet_oracle(const DeviceParams& p, const FieldConfig& f) {
  const double ez = p.half_zeeman();
  const double r = 1.0 / std::sqrt(2.0);
  const cplx lo(f.B_x * r, f.B_y * r), hi = std::conj(lo);
  return ComplexMatrix{{f.B_z, hi, 0.0}, {lo, 0.0, hi}, {0.0, lo, -f.B_z}} * cplx(ez);
}

}  // namespace

TEST_CASE("Gell-Mann matrices") {
  const auto& l = gell_mann();
  CHECK(l[2] == ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 0.0}});
  const double r3 = 1.0 / std::sqrt(3.0);
  CHECK(max_diff(l[7], ComplexMatrix{{r3, 0.0, 0.0}, {0.0, r3, 0.0}, {0.0, 0.0, -2.0 * r3}}) < 1e-16);
  CHECK(std::abs((l[0] * l[1]).trace()) == 0.0);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(hermiticity_defect(l[i]) == 0.0);
    CHECK(std::abs(l[i].trace()) < 1e-15);
    for (std::size_t j = 0; j < 8; ++j) {
      const cplx tr = (l[i] * l[j]).trace();
      CHECK(std::abs(tr - (i == j ? 2.0 : 0.0)) < 1e-15);
    }
  }
  // su(3) closure sample: [l1, l2] = 2i l3.
  CHECK(max_diff(l[0] * l[1] - l[1] * l[0], l[2] * cplx(0, 2)) < 1e-15);
}

TEST_CASE("symmetry-breaking generators") {
  for (const auto& g : symmetry_breaking()) {
    CHECK(hermiticity_defect(g) == 0.0);
    int nonzero = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (g(i, j) != cplx{}) {
          ++nonzero;
          CHECK(std::abs(g(i, j)) == 1.0);
        }
    CHECK(nonzero == 2);
  }
  CHECK(eta() == ComplexMatrix{{-1.0, 0, 0, 0}, {0, 1.0, 0, 0}, {0, 0, 1.0, 0}, {0, 0, 0, 1.0}});
}

TEST_CASE("triplet block") {
  const DeviceParams p = default_params();
  FieldConfig f;
  f.B_z = 0.1;
  const ComplexMatrix t = assemble_triplet_block(p, f);
  CHECK(max_diff(t, ComplexMatrix{{p.half_zeeman() * 0.1, 0, 0}, {0, 0, 0}, {0, 0, -p.half_zeeman() * 0.1}}) < 1e-20);
  CHECK(matnorm_max(assemble_triplet_block(p, FieldConfig{})) == 0.0);

  FieldConfig g;
  g.B_x = 5e-4;
  const ComplexMatrix tx = assemble_triplet_block(p, g);
  const double c = p.g * p.mu_B_eff * 5e-4 / (2.0 * std::sqrt(2.0));
  CHECK(tx(0, 1).real() == doctest::Approx(c).epsilon(1e-14));
  CHECK(tx(1, 2).real() == doctest::Approx(c).epsilon(1e-14));
  CHECK(tx(0, 2) == cplx{});

  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const FieldConfig r = testing::random_fields(rng, 0.05);
    CHECK(rel_diff(assemble_triplet_block(p, r), triplet_oracle(p, r)) < 1e-14);
  }
}

TEST_CASE("assemble_full placements") {
  const DeviceParams p = default_params();
  FieldConfig f;
  f.B_x = 3e-4;
  f.B_y = -2e-4;
  f.B_z = 0.1;
  const ComplexMatrix h = assemble_full(p, f);
  for (std::size_t j = 1; j < 4; ++j) {
    CHECK(h(0, j) == cplx{});
    CHECK(h(j, 0) == cplx{});
  }

  FieldConfig g;
  g.dB_z = 0.01;
  const ComplexMatrix hg = assemble_full(p, g);
  CHECK(hg(0, 2).real() == doctest::Approx(p.half_zeeman() * 0.01).epsilon(1e-14));
  CHECK(hg(2, 0) == hg(0, 2));
  CHECK(hg(0, 1) == cplx{});
  CHECK(hg(0, 3) == cplx{});
}

TEST_CASE("generator reconstruction matches the direct builder") {
  const DeviceParams p = default_params();
  std::mt19937_64 rng(77);
  for (int k = 0; k < 500; ++k) {
    const FieldConfig f = testing::random_fields(rng, 0.05);
    const ComplexMatrix direct = build_dqd(p, f).matrix;
    const ComplexMatrix sym = permute_basis(assemble_full(p, f), kAppendix, kCanonical);
    CHECK(rel_diff(sym, direct) < 1e-14);
    const ComplexMatrix shifted =
        permute_basis(assemble_full(p, f, EnergyReference::SingletZero), kAppendix, kCanonical);
    CHECK(rel_diff(shifted, direct + ComplexMatrix::identity(4) * cplx(p.J_exc / 8.0)) < 1e-14);
  }
}

TEST_CASE("permute_basis") {
  std::mt19937_64 rng(8);
  const ComplexMatrix h = testing::random_hermitian(rng, 4);
  CHECK(permute_basis(h, kCanonical, kCanonical) == h);
  const ComplexMatrix once = permute_basis(h, kCanonical, kAppendix);
  CHECK(once(1, 1) == h(2, 2));
  CHECK(once(0, 2) == h(0, 1));
  CHECK(permute_basis(once, kCanonical, kAppendix) == h);
  CHECK(permute_basis(once, kAppendix, kCanonical) == h);
  const Ordering bad{BasisLabel::S, BasisLabel::S, BasisLabel::T0, BasisLabel::Tminus};
  CHECK_THROWS_AS(permute_basis(h, bad, kCanonical), InvalidOrdering);
  CHECK_THROWS_AS(permute_basis(ComplexMatrix::identity(3), kCanonical, kAppendix), DimensionMismatch);
}

TEST_CASE("rotation axis") {
  DeviceParams p = default_params();
  const RotationAxis only_j = rotation_axis_4d(p, FieldConfig{});
  CHECK(only_j.norm == doctest::Approx(p.J_exc / 8.0));
  CHECK(only_j.axis[0] == doctest::Approx(1.0));

  p.J_exc = 0.0;
  FieldConfig g;
  g.dB_z = 0.01;
  const RotationAxis only_dbz = rotation_axis_4d(p, g);
  CHECK(only_dbz.axis[11] == doctest::Approx(1.0));
  for (std::size_t k = 0; k < 15; ++k)
    if (k != 11) CHECK(only_dbz.axis[k] == 0.0);

  CHECK_THROWS_AS(rotation_axis_4d(p, FieldConfig{}), ZeroHamiltonian);

  FieldConfig f = reference_fields();
  f.B_x = f.B_y = f.dB_x = f.dB_y = 5e-4;
  const DeviceParams q = default_params();
  const RotationAxis r = rotation_axis_4d(q, f);
  double sum = 0.0, unit = 0.0;
  for (double c : generator_coefficients(q, f)) sum += c * c;
  for (double c : r.axis) unit += c * c;
  CHECK(r.norm == doctest::Approx(std::sqrt(sum)).epsilon(1e-14));
  CHECK(std::abs(unit - 1.0) < 1e-12);
}

TEST_CASE("singlet and triplet S_z expectation values") {
  const ComplexMatrix sz = spin::total_sz();
  const ComplexMatrix sz_app = permute_basis(sz, kCanonical, kAppendix);
  CHECK(std::abs(sz_app(0, 0)) < 1e-15);
  CHECK(std::abs(sz_app(2, 2)) < 1e-15);
  CHECK(sz_app(1, 1).real() == doctest::Approx(1.0));
  CHECK(sz_app(3, 3).real() == doctest::Approx(-1.0));
}
