// Copyright 2026 The qthermo Authors
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


#include "core/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "core/dynamics.hpp"
#include "core/engine.hpp"
#include "core/fock.hpp"
#include "core/ledger.hpp"
#include "core/linalg.hpp"
#include "core/passivity.hpp"

namespace qthermo::scenario {

const std::vector<std::string> kTrajectoryColumns = {
    "t",        "energy",      "entropy",     "ergotropy",   "passive_energy",
    "E_d_cum",  "W_cum",       "dEpas_d_cum", "dErgo_d_cum", "sigma_cum",
    "trace_err", "min_eig",    "firstlaw_residual"};

const std::vector<std::string> kCycleColumns = {
    "E_dh",  "E_dh_prime", "E_dc",       "work_out", "eta",
    "eta_max", "eta_sigma", "eta_carnot", "regime",   "firstlaw_residual",
    "entropy_closure"};

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  return fmt::format("{:.12g}", v);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  const std::size_t count = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < count; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

double dt_of(config::Config& cfg, const std::string& key, double fallback, const Overrides& ov) {
  const double v = cfg.get_double(key, fallback);
  return ov.dt ? *ov.dt : v;
}

int cutoff_of(config::Config& cfg, const std::string& key, int fallback, const Overrides& ov) {
  const int v = cfg.get_int(key, fallback);
  return ov.cutoff ? *ov.cutoff : v;
}

void positive(config::Config& cfg, const std::string& key, double v) {
  if (!(v > 0.0)) fail(ErrorCode::config, cfg.origin() + ": [" + key + "] must be positive");
}

void nonneg(config::Config& cfg, const std::string& key, double v) {
  if (!(v >= 0.0)) fail(ErrorCode::config, cfg.origin() + ": [" + key + "] must be >= 0");
}

Table trajectory_table(const Trajectory& traj, const Generator& gen) {
  Table t;
  t.header = kTrajectoryColumns;
  const auto sigma = ledger::spohn_sigma_series(traj, gen);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const FirstLawLedger& l = traj.ledgers[k];
    const double residual = std::abs((l.energy_E - traj.initial_energy) - (l.E_d + l.work_W));
    t.rows.push_back({fmt_num(traj.times[k]), fmt_num(l.energy_E), fmt_num(l.entropy_S),
                      fmt_num(l.ergotropy_script_W), fmt_num(l.passive_energy_Epas),
                      fmt_num(l.E_d), fmt_num(l.work_W), fmt_num(l.dEpas_d), fmt_num(l.dErgo_d),
                      fmt_num(sigma[k]), fmt_num(traj.trace_err[k]), fmt_num(traj.min_eig[k]),
                      fmt_num(residual)});
  }
  return t;
}

struct Integrator {
  double dt;
  double t_final;
  int sample_every;
};

Integrator read_integrator(config::Config& cfg, const Overrides& ov, double t_final_default) {
  Integrator in;
  in.dt = dt_of(cfg, "integrator.dt", 0.01, ov);
  in.t_final = cfg.get_double("integrator.t_final", t_final_default);
  in.sample_every = cfg.get_int("integrator.sample_every", 10);
  positive(cfg, "integrator.dt", in.dt);
  nonneg(cfg, "integrator.t_final", in.t_final);
  if (in.sample_every < 1) fail(ErrorCode::config, cfg.origin() + ": [integrator.sample_every] must be >= 1");
  return in;
}

std::vector<std::string> cycle_cells(const engine::CycleReport& r) {
  return {fmt_num(r.E_dh),       fmt_num(r.E_dh_prime), fmt_num(r.E_dc),
          fmt_num(r.work_out),   fmt_num(r.eta_actual), fmt_num(r.eta_max),
          fmt_num(r.eta_sigma),  fmt_num(r.eta_carnot), engine::to_string(r.regime),
          fmt_num(r.firstlaw_residual), fmt_num(r.entropy_closure)};
}

engine::Backend parse_backend(config::Config& cfg, const std::string& key) {
  const std::string b = cfg.get_string(key, "auto");
  if (b == "auto") return engine::Backend::automatic;
  if (b == "fock") return engine::Backend::fock;
  if (b == "gaussian") return engine::Backend::gaussian;
  fail(ErrorCode::config, cfg.origin() + ": [" + key + "] must be auto, fock or gaussian");
}

}  // namespace

Table cmd_decay(config::Config& cfg, const Overrides& ov) {
  const int cutoff = cutoff_of(cfg, "system.cutoff", 40, ov);
  const double omega = cfg.get_double("system.omega", 10.0);
  const double alpha_re = cfg.get_double("state.alpha", 1.0);
  const double alpha_im = cfg.get_double("state.alpha_imag", 0.0);
  const double kappa = cfg.get_double("bath.kappa", 1.0);
  const double nbar = cfg.get_double("bath.nbar", 0.0);
  const Integrator in = read_integrator(cfg, ov, 5.0);
  cfg.finish();
  const HilbertDim dim(cutoff);
  const Generator gen = thermal_generator(omega, kappa, nbar, dim);
  EvolveOptions opts;
  opts.sample_every = in.sample_every;
  const Trajectory traj = evolve(gen, fock::coherent_state({alpha_re, alpha_im}, dim), in.t_final, in.dt, opts);
  return trajectory_table(traj, gen);
}

Table cmd_squeezed_relax(config::Config& cfg, const Overrides& ov) {
  const int cutoff = cutoff_of(cfg, "system.cutoff", 40, ov);
  const double omega = cfg.get_double("system.omega", 10.0);
  const double kappa = cfg.get_double("bath.kappa", 1.0);
  const double nbar = cfg.get_double("bath.nbar", 0.0);
  const double r = cfg.get_double("bath.r", 0.4);
  const double nbar0 = cfg.get_double("state.nbar", 0.0);
  const Integrator in = read_integrator(cfg, ov, 10.0);
  cfg.finish();
  const HilbertDim dim(cutoff);
  const Generator gen = squeezed_generator(omega, kappa, nbar, r, dim);
  EvolveOptions opts;
  opts.sample_every = in.sample_every;
  const Trajectory traj = evolve(gen, fock::thermal_state(nbar0, dim), in.t_final, in.dt, opts);
  return trajectory_table(traj, gen);
}

Table cmd_carnot_stroke(config::Config& cfg, const Overrides& ov) {
  const int cutoff = cutoff_of(cfg, "system.cutoff", 20, ov);
  const double w0 = cfg.get_double("system.omega_start", 25.0);
  const double rate = cfg.get_double("system.omega_rate", -0.05);
  const double kappa = cfg.get_double("bath.kappa", 1.0);
  const double temp = cfg.get_double("bath.temperature", 5.0);
  const double r = cfg.get_double("bath.r", 0.2);
  const double dt = dt_of(cfg, "integrator.dt", 0.01, ov);
  const double interval = cfg.get_double("integrator.sample_interval", 1.0);
  std::vector<double> durations = cfg.get_list("sweep.durations", {25, 50, 75, 100, 125, 150, 175, 200});
  cfg.finish();
  positive(cfg, "integrator.dt", dt);
  positive(cfg, "integrator.sample_interval", interval);
  positive(cfg, "bath.temperature", temp);
  double t_max = 0.0;
  for (double d : durations) {
    positive(cfg, "sweep.durations", d);
    t_max = std::max(t_max, d);
  }
  const double w_end = w0 + rate * t_max;
  if (!(w_end > 0.0)) fail(ErrorCode::config, cfg.origin() + ": frequency ramp crosses zero");
  const int per_sample = std::max(1, static_cast<int>(std::lround(interval / dt)));
  const double grid = per_sample * dt;

  const HilbertDim dim(cutoff);
  const auto sched = HamiltonianSchedule::oscillator_ramp(w0, w_end, 0.0, t_max, dim);
  const Generator gen = squeezed_generator_driven(sched, kappa, temp, r);
  const Generator gen_th = thermal_counterpart(gen);
  const DensityMatrix rho0 = fock::thermal_state(fock::bose_occupation(w0, temp), dim);
  const Matrix s = fock::squeeze_operator(r, dim).matrix();
  const DensityMatrix tilde0(dim, linalg::hermitian_part(s.adjoint() * rho0.matrix() * s));

  EvolveOptions opts;
  opts.sample_every = per_sample;
  Trajectory traj, alt;
  parallel_for(2, ov.workers, [&](std::size_t i) {
    if (i == 0) traj = evolve(gen, rho0, t_max, dt, opts);
    else alt = ledger::alt_path_energy(gen_th, tilde0, t_max, dt, opts).trajectory;
  });
  const auto sigma = ledger::spohn_sigma_series(traj, gen);

  Table t;
  t.header = {"duration", "omega", "delta_S", "E_d", "E_d_prime", "sigma",
              "slack_alt", "slack_direct", "firstlaw_residual"};
  const double s0 = traj.ledgers.front().entropy_S;
  for (double d : durations) {
    const auto k = static_cast<std::size_t>(std::lround(d / grid));
    if (k >= traj.times.size() || std::abs(traj.times[k] - d) > 1e-6 * std::max(1.0, d))
      fail(ErrorCode::config, cfg.origin() + ": duration " + fmt_num(d) +
                                  " is not a multiple of the sample interval");
    const FirstLawLedger& l = traj.ledgers[k];
    const double ds = l.entropy_S - s0;
    const double e_prime = alt.ledgers[k].E_d;
    const double residual = std::abs((l.energy_E - traj.initial_energy) - (l.E_d + l.work_W));
    t.rows.push_back({fmt_num(d), fmt_num(sched.scale(d)), fmt_num(ds), fmt_num(l.E_d),
                      fmt_num(e_prime), fmt_num(sigma[k]), fmt_num(ds - e_prime / temp),
                      fmt_num(ds - l.E_d / temp), fmt_num(residual)});
  }
  return t;
}

Table cmd_otto_sweep(config::Config& cfg, const Overrides& ov) {
  engine::CycleSpec base;
  base.kind = engine::CycleKind::otto;
  const double t_ratio = cfg.get_double("cycle.t_ratio", 3.0);
  const double scale_u = cfg.get_double("cycle.scale_u", 0.1);
  base.omega_h = cfg.get_double("cycle.omega_h", 1.0);
  base.kappa_c = base.kappa_h = cfg.get_double("cycle.kappa", 1.0);
  base.hold = cfg.get_double("cycle.hold", 20.0);
  base.dt = dt_of(cfg, "cycle.dt", 0.01, ov);
  base.backend = parse_backend(cfg, "cycle.backend");
  base.cutoff = cutoff_of(cfg, "cycle.cutoff", 0, ov);
  base.max_fock_cutoff = cfg.get_int("cycle.max_fock_cutoff", 60);
  const auto ratios = cfg.get_list("sweep.ratios", {0.22, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  const double r_a = cfg.get_double("sweep.r_for_ratios", 0.5);
  const auto rs = cfg.get_list("sweep.r_values", {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2});
  const double ratio_b = cfg.get_double("sweep.ratio_for_r", 0.5);
  cfg.finish();
  positive(cfg, "cycle.scale_u", scale_u);
  if (!(t_ratio > 1.0)) fail(ErrorCode::config, cfg.origin() + ": [cycle.t_ratio] must exceed 1");
  positive(cfg, "cycle.omega_h", base.omega_h);
  base.T_h = base.omega_h / scale_u;
  base.T_c = base.T_h / t_ratio;

  struct Point {
    const char* panel;
    double ratio;
    double r;
  };
  std::vector<Point> points;
  for (double q : ratios) points.push_back({"a", q, r_a});
  for (double r : rs) points.push_back({"b", ratio_b, r});

  std::vector<std::vector<std::string>> sim(points.size()), closed(points.size());
  parallel_for(points.size(), ov.workers, [&](std::size_t i) {
    const Point& p = points[i];
    engine::CycleSpec spec = base;
    spec.omega_c = p.ratio * base.omega_h;
    spec.r = p.r;
    const auto key = [&](const char* source) {
      return std::vector<std::string>{p.panel, fmt_num(p.ratio), fmt_num(p.r), source};
    };
    sim[i] = key("sim");
    const auto cells = cycle_cells(engine::run_otto(spec));
    sim[i].insert(sim[i].end(), cells.begin(), cells.end());

    closed[i] = key("closed_form");
    try {
      const auto cf = engine::closed_form_otto(spec.T_c, spec.T_h, spec.omega_c, spec.omega_h, p.r, scale_u);
      const double e_dh = spec.omega_h * (cf.nbar_h + cf.dnbar_h - cf.nbar_c);
      const double e_prime = spec.omega_h * (cf.nbar_h - cf.nbar_c);
      const double e_dc = spec.omega_c * (cf.nbar_c - cf.nbar_h);
      const std::vector<std::string> c = {
          fmt_num(e_dh), fmt_num(e_prime), fmt_num(e_dc), fmt_num(e_dh + e_dc), fmt_num(cf.eta),
          fmt_num(cf.eta_max), fmt_num(cf.eta_sigma), fmt_num(cf.eta_carnot),
          engine::to_string(cf.regime), "0", "0"};
      closed[i].insert(closed[i].end(), c.begin(), c.end());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::regime_violation) throw;
      const std::vector<std::string> c = {"nan", "nan", "nan", "nan", "nan", "nan", "nan",
                                          fmt_num(1.0 - 1.0 / t_ratio), "not_engine", "0", "0"};
      closed[i].insert(closed[i].end(), c.begin(), c.end());
    }
  });
  Table t;
  t.header = {"panel", "ratio", "r", "source"};
  t.header.insert(t.header.end(), kCycleColumns.begin(), kCycleColumns.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    t.rows.push_back(sim[i]);
    t.rows.push_back(closed[i]);
  }
  return t;
}

Table cmd_cycle(config::Config& cfg, const Overrides& ov) {
  engine::CycleSpec spec;
  const std::string kind = cfg.get_string("cycle.kind", "carnot_like");
  if (kind == "otto") spec.kind = engine::CycleKind::otto;
  else if (kind == "carnot_like") spec.kind = engine::CycleKind::carnot_like;
  else fail(ErrorCode::config, cfg.origin() + ": [cycle.kind] must be otto or carnot_like");
  spec.backend = parse_backend(cfg, "cycle.backend");
  spec.cutoff = cutoff_of(cfg, "cycle.cutoff", 0, ov);
  spec.max_fock_cutoff = cfg.get_int("cycle.max_fock_cutoff", 60);
  spec.T_c = cfg.get_double("cycle.T_c", 2.5);
  spec.T_h = cfg.get_double("cycle.T_h", 5.0);
  spec.kappa_c = cfg.get_double("cycle.kappa_c", 1.0);
  spec.kappa_h = cfg.get_double("cycle.kappa_h", 1.0);
  spec.r = cfg.get_double("cycle.r", 0.2);
  spec.omega_c = cfg.get_double("cycle.omega_c", 12.5);
  spec.omega_h = cfg.get_double("cycle.omega_h", 15.0);
  spec.omega_1 = cfg.get_double("cycle.omega_1", spec.omega_h * spec.T_c / spec.T_h);
  spec.omega_2 = cfg.get_double("cycle.omega_2", spec.omega_c * spec.T_h / spec.T_c);
  spec.hot_ramp = cfg.get_double("cycle.hot_ramp", 200.0);
  spec.cold_ramp = cfg.get_double("cycle.cold_ramp", 200.0);
  spec.hold = cfg.get_double("cycle.hold", 20.0);
  spec.dt = dt_of(cfg, "cycle.dt", 0.01, ov);
  const bool sweep = cfg.has("sweep.durations");
  const auto durations = cfg.get_list("sweep.durations", {spec.hot_ramp});
  cfg.finish();
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::config, cfg.origin() + ": " + e.what());
  }

  std::vector<std::vector<std::string>> rows(durations.size());
  parallel_for(durations.size(), ov.workers, [&](std::size_t i) {
    engine::CycleSpec s = spec;
    if (sweep) s.hot_ramp = s.cold_ramp = durations[i];
    const auto rep = engine::run_cycle(s);
    rows[i] = {kind, fmt_num(s.hot_ramp), fmt_num(s.cold_ramp), engine::to_string(rep.backend)};
    const auto cells = cycle_cells(rep);
    rows[i].insert(rows[i].end(), cells.begin(), cells.end());
  });
  Table t;
  t.header = {"kind", "hot_ramp", "cold_ramp", "backend"};
  t.header.insert(t.header.end(), kCycleColumns.begin(), kCycleColumns.end());
  t.rows = std::move(rows);
  return t;
}

Table cmd_multibath(config::Config& cfg, const Overrides& ov) {
  engine::MultibathSpec spec;
  spec.backend = parse_backend(cfg, "cycle.backend");
  spec.cutoff = cutoff_of(cfg, "cycle.cutoff", 0, ov);
  spec.max_fock_cutoff = cfg.get_int("cycle.max_fock_cutoff", 60);
  spec.hold = cfg.get_double("cycle.hold", 20.0);
  spec.dt = dt_of(cfg, "cycle.dt", 0.01, ov);
  for (const auto& sec : cfg.sections()) {
    if (sec.rfind("stage_", 0) != 0) continue;
    engine::BathStage st;
    st.name = sec.substr(6);
    st.omega = cfg.get_double(sec + ".omega");
    st.T = cfg.get_double(sec + ".temperature");
    st.kappa = cfg.get_double(sec + ".kappa", 1.0);
    st.r = cfg.get_double(sec + ".r", 0.0);
    spec.stages.push_back(st);
  }
  cfg.finish();
  if (spec.stages.size() < 2)
    fail(ErrorCode::config, cfg.origin() + ": a multi-bath cycle needs at least two [stage_*] sections");
  const auto rep = engine::run_multibath(spec);
  Table t;
  t.header = {"n_baths", "backend"};
  t.header.insert(t.header.end(), kCycleColumns.begin(), kCycleColumns.end());
  t.header.push_back("eta_max_two_bath");
  t.rows.push_back({std::to_string(spec.stages.size()), engine::to_string(rep.backend),
                    fmt_num(rep.E_in), fmt_num(rep.E_in_prime), fmt_num(rep.E_out),
                    fmt_num(-rep.work_W), fmt_num(rep.eta_actual), fmt_num(rep.bound), "nan",
                    fmt_num(rep.eta_carnot), engine::to_string(rep.regime),
                    fmt_num(rep.firstlaw_residual), fmt_num(rep.entropy_closure),
                    fmt_num(rep.eta_max_reduced)});
  return t;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"decay", "squeezed-relax", "carnot-stroke",
                                                  "otto-sweep", "cycle", "multibath"};
  return names;
}

std::string render_csv(const Table& table) {
  std::string out = std::string(kUnitsLine) + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::io, "cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      fail(ErrorCode::io, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::io, "cannot move output into place at " + path);
  }
}

void run(const std::string& command, const std::string& config_path, const std::string& out_path,
         const Overrides& ov) {
  static const std::map<std::string, Table (*)(config::Config&, const Overrides&)> table = {
      {"decay", cmd_decay},           {"squeezed-relax", cmd_squeezed_relax},
      {"carnot-stroke", cmd_carnot_stroke}, {"otto-sweep", cmd_otto_sweep},
      {"cycle", cmd_cycle},           {"multibath", cmd_multibath}};
  const auto it = table.find(command);
  if (it == table.end()) fail(ErrorCode::invalid_argument, "unknown scenario '" + command + "'");
  if (ov.dt && !(*ov.dt > 0.0)) fail(ErrorCode::config, "--dt must be positive");
  if (ov.cutoff && *ov.cutoff < 2) fail(ErrorCode::config, "--cutoff must be at least 2");
  config::Config cfg = config_path.empty() ? config::Config::parse("", "<defaults>")
                                           : config::Config::load(config_path);
  const std::string csv = render_csv(it->second(cfg, ov));
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
    std::cout.flush();
  } else {
    write_atomic(out_path, csv);
  }
}

}  // namespace qthermo::scenario
