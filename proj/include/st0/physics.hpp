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
#include <cstddef>
#include <string_view>

namespace st0 {

/// Device constants. Energies in eV, time in seconds, fields in tesla.
struct DeviceParams {
  double g = 2.0;
  double mu_B_eff = 6.42915e-5;  // eV/T
  double J_exc = 2e-6;           // eV, any sign
  double hbar = 6.582119569e-16; // eV s

  /// 1/2 g mu_B, the energy per tesla of a Zeeman term.
  double half_zeeman() const { return 0.5 * g * mu_B_eff; }
};

DeviceParams default_params();

/// Fields are sums (B_*) and differences (dB_*) over the two dots.
struct FieldConfig {
  double B_x = 0.0;
  double B_y = 0.0;
  double B_z = 0.0;
  double dB_x = 0.0;
  double dB_y = 0.0;
  double dB_z = 0.0;
  double duration = 0.0;
};

/// B_z = 100 mT and dB_z = 10 mT, everything else zero.
FieldConfig reference_fields();

/// Throws InvalidParameter on non-positive mu_B_eff/hbar, non-finite values
/// or a negative duration.
void require_valid(const DeviceParams& params, const FieldConfig& fields);

enum class BasisLabel : std::size_t { S = 0, T0 = 1, Tplus = 2, Tminus = 3 };

inline constexpr std::array<BasisLabel, 4> kCanonicalOrder = {
    BasisLabel::S, BasisLabel::T0, BasisLabel::Tplus, BasisLabel::Tminus};

constexpr std::size_t index_of(BasisLabel b) { return static_cast<std::size_t>(b); }
BasisLabel label_at(std::size_t index);
std::string_view label_name(BasisLabel b);
/// Accepts "S", "T0", "Tp"/"Tplus"/"T+", "Tm"/"Tminus"/"T-".
BasisLabel parse_label(std::string_view name);

inline constexpr double kWeakRegimeRatio = 0.1;

struct WeakFieldReport {
  double gradient_coupling = 0.0;    // |g mu_B (dB_x + i dB_y)| / (2 sqrt 2)
  double transverse_coupling = 0.0;  // |g mu_B (B_x + i B_y)| / (2 sqrt 2)
  double exchange_scale = 0.0;       // |J_exc / 8|
  bool weak_regime = true;
};

/// Advisory check of the weak transversal-field condition; never throws.
WeakFieldReport validate(const DeviceParams& params, const FieldConfig& fields);

}  // namespace st0
