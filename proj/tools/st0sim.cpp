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

// Command-line front end for the ST0 leakage simulator.

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "st0/errors.hpp"
#include "st0/scenario.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size()) {
      throw st0::ConfigError("bad value '" + item + "' in --values");
    }
    values.push_back(v);
  }
  if (values.empty()) throw st0::ConfigError("--values is empty");
  return values;
}

// Writes to a buffer first so a failed run leaves no partial file behind.
template <class F>
void emit(const std::string& path, F&& body) {
  std::ostringstream buf;
  body(buf);
  if (path.empty() || path == "-") {
    std::cout << buf.str();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw st0::ConfigError("cannot open output file '" + path + "'");
  out << buf.str();
  if (!out) throw st0::ConfigError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ST0 qubit leakage simulator"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Omit '#' comment lines from the CSV");

  std::string config_path, out_path, axis, values;

  auto* simulate = app.add_subcommand("simulate", "Run the scenario described by a JSON config");
  simulate->add_option("config", config_path, "Scenario JSON file")->required();
  simulate->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
  simulate->add_flag("--quiet", quiet, "Omit '#' comment lines from the CSV");

  auto* table2 = app.add_subcommand("table2", "Second-order levels at B_perp = 0, 0.1, 0.5 mT");
  table2->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
  table2->add_flag("--quiet", quiet, "Omit '#' comment lines from the CSV");

  auto* sweep = app.add_subcommand("sweep", "Phase lag and shifted levels along one field axis");
  sweep->add_option("config", config_path, "Scenario JSON file")->required();
  sweep->add_option("--axis", axis, "Field name, e.g. dB_x_T or B_perp_T")->required();
  sweep->add_option("--values", values, "Comma-separated values in SI units")->required();
  sweep->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
  sweep->add_flag("--quiet", quiet, "Omit '#' comment lines from the CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  try {
    if (*simulate) {
      const st0::ScenarioConfig cfg = st0::load_config(config_path);
      for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
      emit(out_path, [&](std::ostream& os) { st0::run(cfg, os, quiet); });
    } else if (*table2) {
      emit(out_path, [&](std::ostream& os) {
        st0::write_table2(st0::default_params(), st0::reference_fields(), os, quiet);
      });
    } else if (*sweep) {
      st0::ScenarioConfig cfg = st0::load_config(config_path);
      const st0::SweepSpec spec{axis, parse_values(values)};
      emit(out_path, [&](std::ostream& os) { st0::run_sweep(cfg, spec, os, quiet); });
    }
  } catch (const st0::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const st0::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
