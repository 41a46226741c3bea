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

#include "st0/dynamics.hpp"

#include <cmath>
#include <string>

#include "st0/errors.hpp"

namespace st0 {

StateVector::StateVector(CVector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (amps_.size() != 2 && amps_.size() != 4) {
    throw DimensionMismatch("state dimension must be 2 or 4");
  }
  const double n = norm2(amps_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw NotNormalized("state norm^2 is " + std::to_string(n));
  }
}

StateVector StateVector::basis(BasisLabel b, std::size_t dim) {
  if (index_of(b) >= dim) throw DimensionMismatch("basis label outside state dimension");
  CVector a(dim);
  a[index_of(b)] = 1.0;
  return StateVector(std::move(a));
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double n = std::sqrt(norm2(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw NotNormalized("cannot normalize a zero state");
  for (auto& a : amplitudes) a /= n;
  return StateVector(std::move(amplitudes));
}

std::vector<double> Trajectory::population_of(BasisLabel b) const {
  std::vector<double> p(populations.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = populations[k][index_of(b)];
  return p;
}

std::vector<double> uniform_grid(double start, double stop, std::size_t n) {
  if (n < 2) throw InvalidParameter("grid needs at least two points");
  if (!(stop > start)) throw InvalidParameter("grid stop must exceed start");
  std::vector<double> g(n);
  const double h = (stop - start) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) g[k] = start + h * static_cast<double>(k);
  g.back() = stop;
  return g;
}

ComplexMatrix propagator(const ComplexMatrix& h, double t, const DeviceParams& params) {
  return expm_unitary(h, t, params.hbar);
}

Trajectory evolve(const ComplexMatrix& h, const StateVector& psi0, std::span<const double> grid,
                  const DeviceParams& params) {
  if (h.rows() != 4 || psi0.dim() != 4) throw DimensionMismatch("evolve works on 4 levels");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw InvalidParameter("time grid must be strictly increasing");
  }
  const SpectralDecomposition sd = eigh(h);
  const CVector c = eigenbasis_expansion(sd, psi0);

  Trajectory tr;
  tr.times.assign(grid.begin(), grid.end());
  tr.populations.resize(grid.size());
  tr.amplitudes.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::array<cplx, 4> psi{};
    for (std::size_t j = 0; j < 4; ++j) {
      const cplx w = c[j] * std::polar(1.0, -sd.eigenvalues[j] * grid[k] / params.hbar);
      for (std::size_t i = 0; i < 4; ++i) psi[i] += sd.eigenvectors(i, j) * w;
    }
    tr.amplitudes[k] = psi;
    for (std::size_t i = 0; i < 4; ++i) tr.populations[k][i] = std::norm(psi[i]);
  }
  return tr;
}

StateVector relative_phase(cplx alpha, cplx beta, const DeviceParams& params, double t) {
  const double gap = params.J_exc / 4.0;
  return StateVector(CVector{alpha, beta * std::polar(1.0, -gap * t / params.hbar)});
}

CVector eigenbasis_expansion(const SpectralDecomposition& sd, const StateVector& state) {
  if (sd.dim() != state.dim()) throw DimensionMismatch("state and spectrum dimensions differ");
  CVector c(sd.dim());
  for (std::size_t j = 0; j < sd.dim(); ++j) {
    const CVector v = sd.eigenvectors.column(j);
    c[j] = inner(v, state.amplitudes());
  }
  return c;
}

CVector eigenbasis_expansion(const ComplexMatrix& h, BasisLabel state) {
  return eigenbasis_expansion(eigh(h), StateVector::basis(state, h.rows()));
}

double population_from_spectrum(const SpectralDecomposition& sd, const StateVector& psi0,
                                BasisLabel target, double t, const DeviceParams& params) {
  const CVector c = eigenbasis_expansion(sd, psi0);
  const std::size_t r = index_of(target);
  cplx a{};
  for (std::size_t j = 0; j < sd.dim(); ++j) {
    a += sd.eigenvectors(r, j) * c[j] * std::polar(1.0, -sd.eigenvalues[j] * t / params.hbar);
  }
  return std::norm(a);
}

}  // namespace st0
