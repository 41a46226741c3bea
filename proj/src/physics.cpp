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

#include "st0/physics.hpp"

#include <cmath>
#include <string>

#include "st0/errors.hpp"

namespace st0 {

DeviceParams default_params() { return DeviceParams{}; }

FieldConfig reference_fields() {
  FieldConfig f;
  f.B_z = 0.1;
  f.dB_z = 0.01;
  return f;
}

void require_valid(const DeviceParams& params, const FieldConfig& fields) {
  if (!std::isfinite(params.g) || !std::isfinite(params.J_exc)) {
    throw InvalidParameter("device parameters must be finite");
  }
  if (!(params.mu_B_eff > 0.0) || !std::isfinite(params.mu_B_eff)) {
    throw InvalidParameter("mu_B_eff must be positive");
  }
  if (!(params.hbar > 0.0) || !std::isfinite(params.hbar)) {
    throw InvalidParameter("hbar must be positive");
  }
  for (double v : {fields.B_x, fields.B_y, fields.B_z, fields.dB_x, fields.dB_y, fields.dB_z,
                   fields.duration}) {
    if (!std::isfinite(v)) throw InvalidParameter("field values must be finite");
  }
  if (fields.duration < 0.0) throw InvalidParameter("duration must be non-negative");
}

BasisLabel label_at(std::size_t index) {
  if (index >= kCanonicalOrder.size()) {
    throw InvalidOrdering("basis index out of range: " + std::to_string(index));
  }
  return kCanonicalOrder[index];
}

std::string_view label_name(BasisLabel b) {
  switch (b) {
    case BasisLabel::S: return "S";
    case BasisLabel::T0: return "T0";
    case BasisLabel::Tplus: return "Tp";
    case BasisLabel::Tminus: return "Tm";
  }
  return "?";
}

BasisLabel parse_label(std::string_view name) {
  if (name == "S") return BasisLabel::S;
  if (name == "T0") return BasisLabel::T0;
  if (name == "Tp" || name == "Tplus" || name == "T+") return BasisLabel::Tplus;
  if (name == "Tm" || name == "Tminus" || name == "T-") return BasisLabel::Tminus;
  throw InvalidOrdering("unknown basis label '" + std::string(name) + "'");
}

WeakFieldReport validate(const DeviceParams& params, const FieldConfig& fields) {
  const double c = params.g * params.mu_B_eff / (2.0 * std::sqrt(2.0));
  WeakFieldReport r;
  r.gradient_coupling = c * std::hypot(fields.dB_x, fields.dB_y);
  r.transverse_coupling = c * std::hypot(fields.B_x, fields.B_y);
  r.exchange_scale = std::abs(params.J_exc / 8.0);
  const double limit = kWeakRegimeRatio * r.exchange_scale;
  auto weak = [&](double coupling) { return coupling == 0.0 || coupling < limit; };
  r.weak_regime = weak(r.gradient_coupling) && weak(r.transverse_coupling);
  return r;
}

}  // namespace st0
