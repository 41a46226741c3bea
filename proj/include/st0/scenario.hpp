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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "st0/errors.hpp"
#include "st0/matrix.hpp"
#include "st0/physics.hpp"

namespace st0 {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Mode { Free, RotateZ, RotateXZ, CompareEff, Table2, Sweep };

struct GridSpec {
  double t_start = 0.0;   // s
  double t_end = 50e-9;   // s
  std::size_t n_points = 2001;
};

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
};

struct ScenarioConfig {
  DeviceParams params;
  FieldConfig fields = reference_fields();
  CVector initial{1.0, 0.0, 0.0, 0.0};
  std::string initial_name = "S";
  GridSpec grid;
  Mode mode = Mode::Free;
  SweepSpec sweep;
  std::vector<std::string> warnings;
};

/// Parses a JSON scenario. Absent keys keep their defaults (device constants,
/// B_z = 100 mT, dB_z = 10 mT, initial S, mode free); unknown keys and bad
/// values raise ConfigError naming the offending key.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::string& path);

std::string_view mode_name(Mode m);

/// Sweepable names: B_x_T, B_y_T, B_z_T, dB_x_T, dB_y_T, dB_z_T, duration_s
/// and B_perp_T (sets B_x, B_y, dB_x and dB_y together).
void apply_axis(FieldConfig& fields, std::string_view axis, double value);

/// Runs the configured mode and writes CSV to `out`. Comment lines start
/// with '#' and are omitted when `quiet` is set.
void run(const ScenarioConfig& config, std::ostream& out, bool quiet);

/// Perturbative levels for B_perp in {0, 0.1, 0.5} mT with dB_z forced to 0.
void write_table2(const DeviceParams& params, const FieldConfig& fields, std::ostream& out,
                  bool quiet);

/// One row per value, in input order, with the shifted levels and the phase
/// lag of the configured initial state over the configured grid. Points are
/// evaluated on up to ST0_NUM_THREADS threads.
void run_sweep(const ScenarioConfig& config, const SweepSpec& sweep, std::ostream& out, bool quiet);

/// "%.17g"
std::string format_number(double v);

/// Thread count from ST0_NUM_THREADS, else the hardware concurrency.
unsigned sweep_threads();

}  // namespace st0
