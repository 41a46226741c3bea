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

#include "st0/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

#include "st0/dynamics.hpp"
#include "st0/hamiltonian.hpp"
#include "st0/rotations.hpp"
#include "st0/weakfield.hpp"

namespace st0 {

namespace {

using nlohmann::json;

constexpr std::string_view kTrajectoryHeader =
    "t_s,pop_S,pop_T0,pop_Tp,pop_Tm,re_S,im_S,re_T0,im_T0,re_Tp,im_Tp,re_Tm,im_Tm";

double number_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + path + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("'" + path + key + "' must be finite");
  return d;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& path) {
  if (!obj.is_object()) throw ConfigError("'" + path + "' must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + path + key + "'");
    }
  }
}

void read_numbers(const json& obj, const std::string& path,
                  std::initializer_list<std::pair<const char*, double*>> slots) {
  for (const auto& [name, slot] : slots) {
    if (obj.contains(name)) *slot = number_at(obj, name, path);
  }
}

Mode parse_mode(const std::string& s) {
  static const std::map<std::string, Mode> modes{
      {"free", Mode::Free},           {"rotate_z", Mode::RotateZ}, {"rotate_xz", Mode::RotateXZ},
      {"compare_eff", Mode::CompareEff}, {"table2", Mode::Table2}, {"sweep", Mode::Sweep}};
  const auto it = modes.find(s);
  if (it == modes.end()) throw ConfigError("unknown mode '" + s + "'");
  return it->second;
}

CVector named_state(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "plus") return {r, r, 0.0, 0.0};
  if (name == "minus") return {r, -r, 0.0, 0.0};
  try {
    CVector v(4);
    v[index_of(parse_label(name))] = 1.0;
    return v;
  } catch (const InvalidOrdering&) {
    throw ConfigError("unknown initial_state '" + name + "'");
  }
}

cplx parse_amplitude(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("'initial_state' entries must be numbers or [re, im] pairs");
}

void parse_initial(const json& v, ScenarioConfig& cfg) {
  if (v.is_string()) {
    cfg.initial_name = v.get<std::string>();
    cfg.initial = named_state(cfg.initial_name);
    return;
  }
  if (!v.is_array() || (v.size() != 2 && v.size() != 4)) {
    throw ConfigError("'initial_state' must be a label or a list of 2 or 4 amplitudes");
  }
  CVector a(4);
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = parse_amplitude(v[i]);
  const double n2 = norm2(a);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw ConfigError("'initial_state' has zero norm");
  if (std::abs(n2 - 1.0) > 1e-9) {
    cfg.warnings.push_back("initial_state renormalized (norm^2 was " + format_number(n2) + ")");
  }
  const double n = std::sqrt(n2);
  for (auto& x : a) x /= n;
  cfg.initial = a;
  cfg.initial_name = "custom";
}

FieldConfig zero_gradient(FieldConfig f) {
  f.dB_z = 0.0;
  return f;
}

FieldConfig leak_free(FieldConfig f) {
  f.B_x = f.B_y = f.dB_x = f.dB_y = 0.0;
  return f;
}

void write_comment(std::ostream& out, bool quiet, const std::string& line) {
  if (!quiet) out << "# " << line << '\n';
}

void write_params(std::ostream& out, bool quiet, const DeviceParams& p, const FieldConfig& f) {
  write_comment(out, quiet,
                "g=" + format_number(p.g) + " mu_B_eff_eV_per_T=" + format_number(p.mu_B_eff) +
                    " J_exc_eV=" + format_number(p.J_exc) + " hbar_eV_s=" + format_number(p.hbar));
  write_comment(out, quiet,
                "B_x_T=" + format_number(f.B_x) + " B_y_T=" + format_number(f.B_y) +
                    " B_z_T=" + format_number(f.B_z) + " dB_x_T=" + format_number(f.dB_x) +
                    " dB_y_T=" + format_number(f.dB_y) + " dB_z_T=" + format_number(f.dB_z));
}

void write_trajectory(std::ostream& out, const Trajectory& tr) {
  out << kTrajectoryHeader << '\n';
  for (std::size_t k = 0; k < tr.size(); ++k) {
    out << format_number(tr.times[k]);
    for (double p : tr.populations[k]) out << ',' << format_number(p);
    for (const cplx& a : tr.amplitudes[k]) {
      out << ',' << format_number(a.real()) << ',' << format_number(a.imag());
    }
    out << '\n';
  }
}

std::vector<double> grid_of(const ScenarioConfig& c) {
  return uniform_grid(c.grid.t_start, c.grid.t_end, c.grid.n_points);
}

void run_trajectory(const ScenarioConfig& c, const FieldConfig& fields, std::ostream& out,
                    bool quiet, bool with_lag) {
  write_params(out, quiet, c.params, fields);
  write_comment(out, quiet, "initial_state=" + c.initial_name + " mode=" + std::string(mode_name(c.mode)));
  const WeakFieldReport weak = validate(c.params, fields);
  if (!weak.weak_regime) write_comment(out, quiet, "warning: transversal fields outside the weak regime");
  if (with_lag) {
    if (fields.dB_z != 0.0 || c.params.J_exc != 0.0) {
      FieldConfig timed = fields;
      timed.duration = c.grid.t_end - c.grid.t_start;
      const RotationSpec r = rotation_for(c.params, timed);
      write_comment(out, quiet,
                    "theta_x_rad=" + format_number(r.theta_x) + " theta_z_rad=" + format_number(r.theta_z) +
                        " over " + format_number(timed.duration) + " s");
    }
    const LagReport lag = phase_lag(c.params, fields, StateVector(c.initial, 1e-9), c.grid.t_end,
                                    c.grid.n_points);
    write_comment(out, quiet,
                  "phase_lag_s=" + format_number(lag.lag) + " phase_rad=" + format_number(lag.phase) +
                      " predicted_lag_s=" + format_number(lag.predicted_lag));
  }
  const Trajectory tr = evolve(build_dqd(c.params, fields).matrix, StateVector(c.initial, 1e-9),
                               grid_of(c), c.params);
  write_trajectory(out, tr);
}

void run_compare(const ScenarioConfig& c, std::ostream& out, bool quiet) {
  if (std::norm(c.initial[2]) + std::norm(c.initial[3]) != 0.0) {
    throw ConfigError("compare_eff needs an initial state inside the S/T0 subspace");
  }
  const FieldConfig& f = c.fields;
  const StateVector psi(c.initial, 1e-9);
  const CVector psi2{c.initial[0], c.initial[1]};
  const ComplexMatrix h_full = build_dqd(c.params, f).matrix;
  const ComplexMatrix h_free = build_dqd(c.params, leak_free(f)).matrix.block(0, 0, 2, 2);
  const EffectiveHamiltonian eff = effective_hamiltonian(c.params, f);

  const auto grid = grid_of(c);
  const SpectralDecomposition full = eigh(h_full);
  const CVector cj = eigenbasis_expansion(full, psi);
  auto overlap2 = [&](const ComplexMatrix& h, double t) {
    const ComplexMatrix u = expm_unitary(h, t, c.params.hbar);
    return std::norm(inner(psi2, u * std::span<const cplx>(psi2)));
  };

  std::vector<std::array<double, 3>> rows(grid.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    double pop_full = 0.0;
    {
      cplx a{};
      for (std::size_t j = 0; j < 4; ++j) {
        cplx proj{};
        for (std::size_t i = 0; i < 4; ++i) proj += std::conj(psi[i]) * full.eigenvectors(i, j);
        a += proj * cj[j] * std::polar(1.0, -full.eigenvalues[j] * t / c.params.hbar);
      }
      pop_full = std::norm(a);
    }
    rows[k] = {overlap2(h_free, t), pop_full, overlap2(eff.matrix, t)};
    worst = std::max(worst, std::abs(rows[k][2] - rows[k][1]));
  }

  write_params(out, quiet, c.params, f);
  write_comment(out, quiet, "population of the initial state (" + c.initial_name + ")");
  write_comment(out, quiet, "effective_asymmetry_eV=" + format_number(eff.asymmetry));
  write_comment(out, quiet, "max_abs_dev_eff_vs_full=" + format_number(worst));
  out << "t_s,pop_leakfree,pop_full,pop_eff,dev_eff\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << format_number(grid[k]) << ',' << format_number(rows[k][0]) << ','
        << format_number(rows[k][1]) << ',' << format_number(rows[k][2]) << ','
        << format_number(std::abs(rows[k][2] - rows[k][1])) << '\n';
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Free: return "free";
    case Mode::RotateZ: return "rotate_z";
    case Mode::RotateXZ: return "rotate_xz";
    case Mode::CompareEff: return "compare_eff";
    case Mode::Table2: return "table2";
    case Mode::Sweep: return "sweep";
  }
  return "?";
}

ScenarioConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(root, {"params", "fields", "initial_state", "grid", "mode", "sweep"}, "");

  ScenarioConfig cfg;
  if (root.contains("params")) {
    const json& p = root["params"];
    reject_unknown(p, {"g", "mu_B_eff_eV_per_T", "J_exc_eV", "hbar_eV_s"}, "params.");
    read_numbers(p, "params.",
                 {{"g", &cfg.params.g},
                  {"mu_B_eff_eV_per_T", &cfg.params.mu_B_eff},
                  {"J_exc_eV", &cfg.params.J_exc},
                  {"hbar_eV_s", &cfg.params.hbar}});
  }
  if (root.contains("fields")) {
    const json& f = root["fields"];
    reject_unknown(f, {"B_x_T", "B_y_T", "B_z_T", "dB_x_T", "dB_y_T", "dB_z_T", "duration_s"},
                   "fields.");
    read_numbers(f, "fields.",
                 {{"B_x_T", &cfg.fields.B_x},
                  {"B_y_T", &cfg.fields.B_y},
                  {"B_z_T", &cfg.fields.B_z},
                  {"dB_x_T", &cfg.fields.dB_x},
                  {"dB_y_T", &cfg.fields.dB_y},
                  {"dB_z_T", &cfg.fields.dB_z},
                  {"duration_s", &cfg.fields.duration}});
  }
  if (root.contains("initial_state")) parse_initial(root["initial_state"], cfg);
  if (root.contains("grid")) {
    const json& g = root["grid"];
    reject_unknown(g, {"t_start_s", "t_end_s", "n_points"}, "grid.");
    read_numbers(g, "grid.", {{"t_start_s", &cfg.grid.t_start}, {"t_end_s", &cfg.grid.t_end}});
    if (g.contains("n_points")) {
      if (!g["n_points"].is_number_integer()) throw ConfigError("'grid.n_points' must be an integer");
      const long long n = g["n_points"].get<long long>();
      if (n < 2) throw ConfigError("'grid.n_points' must be at least 2");
      cfg.grid.n_points = static_cast<std::size_t>(n);
    }
  }
  if (!(cfg.grid.t_start >= 0.0)) throw ConfigError("'grid.t_start_s' must be non-negative");
  if (!(cfg.grid.t_end > cfg.grid.t_start)) throw ConfigError("'grid.t_end_s' must exceed t_start_s");
  if (root.contains("mode")) {
    if (!root["mode"].is_string()) throw ConfigError("'mode' must be a string");
    cfg.mode = parse_mode(root["mode"].get<std::string>());
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown(s, {"axis", "values"}, "sweep.");
    if (s.contains("axis")) {
      if (!s["axis"].is_string()) throw ConfigError("'sweep.axis' must be a string");
      cfg.sweep.axis = s["axis"].get<std::string>();
      FieldConfig probe;
      apply_axis(probe, cfg.sweep.axis, 0.0);
    }
    if (s.contains("values")) {
      if (!s["values"].is_array()) throw ConfigError("'sweep.values' must be a list of numbers");
      for (const json& v : s["values"]) {
        if (!v.is_number()) throw ConfigError("'sweep.values' must be a list of numbers");
        cfg.sweep.values.push_back(v.get<double>());
      }
    }
  }
  if (cfg.mode == Mode::Sweep && (cfg.sweep.axis.empty() || cfg.sweep.values.empty())) {
    throw ConfigError("mode 'sweep' needs 'sweep.axis' and 'sweep.values'");
  }
  try {
    require_valid(cfg.params, cfg.fields);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_axis(FieldConfig& f, std::string_view axis, double value) {
  if (axis == "B_x_T") f.B_x = value;
  else if (axis == "B_y_T") f.B_y = value;
  else if (axis == "B_z_T") f.B_z = value;
  else if (axis == "dB_x_T") f.dB_x = value;
  else if (axis == "dB_y_T") f.dB_y = value;
  else if (axis == "dB_z_T") f.dB_z = value;
  else if (axis == "duration_s") f.duration = value;
  else if (axis == "B_perp_T") f.B_x = f.B_y = f.dB_x = f.dB_y = value;
  else throw ConfigError("unknown sweep axis '" + std::string(axis) + "'");
}

void run(const ScenarioConfig& c, std::ostream& out, bool quiet) {
  for (const auto& w : c.warnings) write_comment(out, quiet, "warning: " + w);
  switch (c.mode) {
    case Mode::Free:
      run_trajectory(c, zero_gradient(c.fields), out, quiet, false);
      break;
    case Mode::RotateZ:
      run_trajectory(c, zero_gradient(c.fields), out, quiet, true);
      break;
    case Mode::RotateXZ:
      run_trajectory(c, c.fields, out, quiet, true);
      break;
    case Mode::CompareEff:
      run_compare(c, out, quiet);
      break;
    case Mode::Table2:
      write_table2(c.params, c.fields, out, quiet);
      break;
    case Mode::Sweep:
      run_sweep(c, c.sweep, out, quiet);
      break;
  }
}

void write_table2(const DeviceParams& params, const FieldConfig& fields, std::ostream& out,
                  bool quiet) {
  FieldConfig base = zero_gradient(fields);
  write_comment(out, quiet, "second-order levels with B_x = B_y = dB_x = dB_y = B_perp");
  write_comment(out, quiet, "dB_z is set to 0 for this table; B_z_T=" + format_number(base.B_z) +
                                " J_exc_eV=" + format_number(params.J_exc));
  out << "B_perp_T,lambda_S_eV,lambda_T0_eV,lambda_Tp_eV,lambda_Tm_eV\n";
  for (double b : {0.0, 1e-4, 5e-4}) {
    apply_axis(base, "B_perp_T", b);
    const PtSpectrum pt = pt_eigenvalues(params, base);
    out << format_number(b);
    for (double l : pt.lambda_p) out << ',' << format_number(l);
    out << '\n';
  }
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("ST0_NUM_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void run_sweep(const ScenarioConfig& c, const SweepSpec& sweep, std::ostream& out, bool quiet) {
  {
    FieldConfig probe;
    apply_axis(probe, sweep.axis, 0.0);
  }
  struct Row {
    PtSpectrum pt;
    LagReport lag;
    std::string error;
  };
  std::vector<Row> rows(sweep.values.size());
  const StateVector psi(c.initial, 1e-9);
  auto work = [&](std::size_t k) {
    FieldConfig f = c.fields;
    apply_axis(f, sweep.axis, sweep.values[k]);
    try {
      rows[k].pt = pt_eigenvalues(c.params, f);
      rows[k].lag = phase_lag(c.params, f, psi, c.grid.t_end, c.grid.n_points);
    } catch (const Error& e) {
      rows[k].error = e.what();
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(sweep_threads(), static_cast<unsigned>(std::max<std::size_t>(1, rows.size())));
  if (n_threads <= 1) {
    for (std::size_t k = 0; k < rows.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < rows.size(); k += n_threads) work(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const Row& r : rows) {
    if (!r.error.empty()) throw Error("sweep point failed: " + r.error);
  }

  write_params(out, quiet, c.params, c.fields);
  write_comment(out, quiet, "axis=" + sweep.axis + " initial_state=" + c.initial_name +
                                " horizon_s=" + format_number(c.grid.t_end));
  out << sweep.axis
      << ",lambda_S_eV,lambda_T0_eV,lambda_Tp_eV,lambda_Tm_eV,lag_s,phase_rad,predicted_lag_s\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << format_number(sweep.values[k]);
    for (double l : rows[k].pt.lambda_p) out << ',' << format_number(l);
    out << ',' << format_number(rows[k].lag.lag) << ',' << format_number(rows[k].lag.phase) << ','
        << format_number(rows[k].lag.predicted_lag) << '\n';
  }
}

}  // namespace st0
