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


#include "qthermo/qthermo.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/dynamics.hpp"
#include "core/engine.hpp"
#include "core/fock.hpp"
#include "core/ledger.hpp"
#include "core/linalg.hpp"
#include "core/passivity.hpp"
#include "core/scenario.hpp"

struct qt_state {
  qthermo::DensityMatrix rho;
};

struct qt_generator {
  qthermo::Generator gen;
};

struct qt_trajectory {
  qthermo::Trajectory traj;
};

namespace {

using namespace qthermo;

thread_local std::string g_last_error;

qt_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return QT_ERR_INVALID_ARGUMENT;
    case ErrorCode::cutoff_leak: return QT_ERR_CUTOFF_LEAK;
    case ErrorCode::positivity_loss: return QT_ERR_POSITIVITY_LOSS;
    case ErrorCode::non_unique_steady_state: return QT_ERR_NON_UNIQUE_STEADY_STATE;
    case ErrorCode::not_unitary: return QT_ERR_NOT_UNITARY;
    case ErrorCode::ledger_inconsistent: return QT_ERR_LEDGER_INCONSISTENT;
    case ErrorCode::regime_violation: return QT_ERR_REGIME_VIOLATION;
    case ErrorCode::not_steady: return QT_ERR_NOT_STEADY;
    case ErrorCode::slow_drive_violation: return QT_ERR_SLOW_DRIVE_VIOLATION;
    case ErrorCode::config: return QT_ERR_CONFIG;
    case ErrorCode::io: return QT_ERR_IO;
  }
  return QT_ERR_INTERNAL;
}

template <class F>
qt_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QT_OK;
  } catch (const Error& e) {
    g_last_error = std::string(to_string(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(name) + " must not be null");
}

qt_regime regime_of(engine::Regime r) {
  switch (r) {
    case engine::Regime::engine: return QT_REGIME_ENGINE;
    case engine::Regime::engine_and_refrigerator: return QT_REGIME_ENGINE_AND_REFRIGERATOR;
    case engine::Regime::not_engine: break;
  }
  return QT_REGIME_NOT_ENGINE;
}

qt_backend backend_of(engine::Backend b) {
  switch (b) {
    case engine::Backend::fock: return QT_BACKEND_FOCK;
    case engine::Backend::gaussian: return QT_BACKEND_GAUSSIAN;
    case engine::Backend::automatic: break;
  }
  return QT_BACKEND_AUTO;
}

engine::Backend backend_in(qt_backend b) {
  switch (b) {
    case QT_BACKEND_AUTO: return engine::Backend::automatic;
    case QT_BACKEND_FOCK: return engine::Backend::fock;
    case QT_BACKEND_GAUSSIAN: return engine::Backend::gaussian;
  }
  fail(ErrorCode::invalid_argument, "unknown backend");
}

template <class T, class... Args>
void emit(T** out, Args&&... args) {
  need(out, "out");
  *out = new T{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* qt_version(void) { return "0.1.0"; }

const char* qt_last_error(void) { return g_last_error.c_str(); }

const char* qt_status_name(qt_status status) {
  switch (status) {
    case QT_OK: return "Ok";
    case QT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case QT_ERR_CUTOFF_LEAK: return "CutoffLeak";
    case QT_ERR_POSITIVITY_LOSS: return "PositivityLoss";
    case QT_ERR_NON_UNIQUE_STEADY_STATE: return "NonUniqueSteadyState";
    case QT_ERR_NOT_UNITARY: return "NotUnitary";
    case QT_ERR_LEDGER_INCONSISTENT: return "LedgerInconsistent";
    case QT_ERR_REGIME_VIOLATION: return "RegimeViolation";
    case QT_ERR_NOT_STEADY: return "NotSteady";
    case QT_ERR_SLOW_DRIVE_VIOLATION: return "SlowDriveViolation";
    case QT_ERR_CONFIG: return "ConfigError";
    case QT_ERR_IO: return "IoError";
    case QT_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

qt_status qt_state_thermal(int cutoff, double nbar, qt_state** out) {
  return guarded([&] { emit(out, fock::thermal_state(nbar, HilbertDim(cutoff))); });
}

qt_status qt_state_coherent(int cutoff, double alpha_re, double alpha_im, qt_state** out) {
  return guarded(
      [&] { emit(out, fock::coherent_state({alpha_re, alpha_im}, HilbertDim(cutoff))); });
}

qt_status qt_state_squeezed_thermal(int cutoff, double nbar, double r, qt_state** out) {
  return guarded([&] { emit(out, fock::squeezed_thermal_state(nbar, r, HilbertDim(cutoff))); });
}

qt_status qt_state_from_matrix(int dim, const double* re_im, qt_state** out) {
  return guarded([&] {
    need(re_im, "re_im");
    const HilbertDim d(dim);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const std::size_t k = 2 * (static_cast<std::size_t>(i) * dim + j);
        m(i, j) = Complex(re_im[k], re_im[k + 1]);
      }
    emit(out, DensityMatrix(d, std::move(m)));
  });
}

void qt_state_free(qt_state* state) { delete state; }

int qt_state_dim(const qt_state* state) { return state ? state->rho.dim().value() : 0; }

qt_status qt_state_matrix(const qt_state* state, double* re_im) {
  return guarded([&] {
    need(state, "state");
    need(re_im, "re_im");
    const Matrix& m = state->rho.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const std::size_t k = 2 * static_cast<std::size_t>(i * m.cols() + j);
        re_im[k] = m(i, j).real();
        re_im[k + 1] = m(i, j).imag();
      }
  });
}

qt_status qt_state_entropy(const qt_state* state, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = passivity::von_neumann_entropy(state->rho);
  });
}

qt_status qt_state_relative_entropy(const qt_state* rho, const qt_state* sigma, double* out) {
  return guarded([&] {
    need(rho, "rho");
    need(sigma, "sigma");
    need(out, "out");
    *out = passivity::relative_entropy(rho->rho, sigma->rho);
  });
}

qt_status qt_state_trace_distance(const qt_state* a, const qt_state* b, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    require(a->rho.dim() == b->rho.dim(), "trace distance needs equal dimensions");
    *out = linalg::trace_distance(a->rho.matrix(), b->rho.matrix());
  });
}

qt_status qt_state_ergotropy(const qt_state* state, double omega, double* ergotropy,
                             double* passive_energy) {
  return guarded([&] {
    need(state, "state");
    const auto h = HamiltonianSchedule::oscillator(omega, state->rho.dim()).operator_at(0.0);
    const auto d = passivity::passive_decompose(state->rho, h);
    if (ergotropy) *ergotropy = d.ergotropy;
    if (passive_energy) *passive_energy = d.passive_energy;
  });
}

qt_status qt_state_majorizes(const qt_state* a, const qt_state* b, int* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = passivity::majorizes(a->rho, b->rho) ? 1 : 0;
  });
}

qt_status qt_generator_thermal(int cutoff, double omega, double kappa, double nbar,
                               qt_generator** out) {
  return guarded([&] { emit(out, thermal_generator(omega, kappa, nbar, HilbertDim(cutoff))); });
}

qt_status qt_generator_squeezed(int cutoff, double omega, double kappa, double nbar, double r,
                                qt_generator** out) {
  return guarded(
      [&] { emit(out, squeezed_generator(omega, kappa, nbar, r, HilbertDim(cutoff))); });
}

qt_status qt_generator_driven(int cutoff, double omega0, double omega1, double ramp, double kappa,
                              double temperature, double r, qt_generator** out) {
  return guarded([&] {
    auto sched = HamiltonianSchedule::oscillator_ramp(omega0, omega1, 0.0, ramp, HilbertDim(cutoff));
    if (r == 0.0) emit(out, thermal_generator_driven(std::move(sched), kappa, temperature));
    else emit(out, squeezed_generator_driven(std::move(sched), kappa, temperature, r));
  });
}

qt_status qt_generator_thermal_counterpart(const qt_generator* gen, qt_generator** out) {
  return guarded([&] {
    need(gen, "gen");
    emit(out, thermal_counterpart(gen->gen));
  });
}

void qt_generator_free(qt_generator* gen) { delete gen; }

qt_status qt_steady_state(const qt_generator* gen, double t_ref, qt_state** out) {
  return guarded([&] {
    need(gen, "gen");
    emit(out, steady_state(gen->gen, t_ref));
  });
}

qt_status qt_evolve(const qt_generator* gen, const qt_state* rho0, double t_final, double dt,
                    int sample_every, qt_trajectory** out) {
  return guarded([&] {
    need(gen, "gen");
    need(rho0, "rho0");
    EvolveOptions opts;
    opts.sample_every = sample_every;
    emit(out, evolve(gen->gen, rho0->rho, t_final, dt, opts));
  });
}

void qt_trajectory_free(qt_trajectory* traj) { delete traj; }

size_t qt_trajectory_size(const qt_trajectory* traj) {
  return traj ? traj->traj.times.size() : 0;
}

qt_status qt_trajectory_sample(const qt_trajectory* traj, size_t index, qt_sample* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    const Trajectory& t = traj->traj;
    require(index < t.times.size(), "sample index out of range");
    const FirstLawLedger& l = t.ledgers[index];
    *out = qt_sample{t.times[index], l.energy_E, l.entropy_S, l.ergotropy_script_W,
                     l.passive_energy_Epas, l.E_d, l.work_W, l.dEpas_d, l.dErgo_d,
                     t.trace_err[index], t.min_eig[index]};
  });
}

qt_status qt_trajectory_state(const qt_trajectory* traj, size_t index, qt_state** out) {
  return guarded([&] {
    need(traj, "traj");
    require(index < traj->traj.states.size(), "sample index out of range");
    emit(out, traj->traj.states[index]);
  });
}

qt_status qt_trajectory_residuals(const qt_trajectory* traj, double* firstlaw, double* split) {
  return guarded([&] {
    need(traj, "traj");
    if (firstlaw) *firstlaw = traj->traj.firstlaw_residual;
    if (split) *split = traj->traj.split_residual;
  });
}

qt_status qt_trajectory_sigma(const qt_trajectory* traj, const qt_generator* gen, double* out) {
  return guarded([&] {
    need(traj, "traj");
    need(gen, "gen");
    need(out, "out");
    *out = ledger::spohn_sigma_timedep(traj->traj, gen->gen);
  });
}

qt_status qt_eta_max(double E_dh_prime, double E_dh, double Tc, double Th, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = engine::eta_max(E_dh_prime, E_dh, Tc, Th);
  });
}

qt_status qt_eta_sigma(double E_dh_tilde, double E_dh, double Tc, double Th, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = engine::eta_sigma(E_dh_tilde, E_dh, Tc, Th);
  });
}

qt_status qt_eta_actual(double E_dh, double E_dc, double W, double* eta, qt_regime* regime) {
  return guarded([&] {
    const auto [e, r] = engine::eta_actual(E_dh, E_dc, W);
    if (eta) *eta = e;
    if (regime) *regime = regime_of(r);
  });
}

qt_status qt_closed_form_otto(double Tc, double Th, double omega_c, double omega_h, double r,
                              double scale_u, qt_closed_form* out) {
  return guarded([&] {
    need(out, "out");
    const auto c = engine::closed_form_otto(Tc, Th, omega_c, omega_h, r, scale_u);
    *out = qt_closed_form{c.nbar_c, c.nbar_h, c.dnbar_c,   c.dnbar_h,   c.eta,
                          c.eta_max, c.eta_sigma, c.eta_carnot, regime_of(c.regime)};
  });
}

qt_status qt_otto_engine_threshold(double Tc_over_Th, double r, double scale_u, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = engine::otto_engine_threshold(Tc_over_Th, r, scale_u);
  });
}

qt_status qt_multibath_bound(const qt_hot_entry* hot, size_t n_hot,
                             const qt_thermal_entry* thermal, size_t n_thermal, double* out) {
  return guarded([&] {
    need(out, "out");
    if (n_hot) need(hot, "hot");
    if (n_thermal) need(thermal, "thermal");
    std::vector<engine::HotEntry> h;
    for (size_t i = 0; i < n_hot; ++i) h.push_back({hot[i].E_prime, hot[i].E, hot[i].T});
    std::vector<engine::ThermalEntry> t;
    for (size_t i = 0; i < n_thermal; ++i) t.push_back({thermal[i].E, thermal[i].T});
    *out = engine::multibath_bound(h, t);
  });
}

void qt_cycle_spec_default(qt_cycle_spec* spec) {
  if (!spec) return;
  const engine::CycleSpec d;
  *spec = qt_cycle_spec{QT_CYCLE_OTTO, QT_BACKEND_AUTO, d.cutoff, d.max_fock_cutoff,
                        d.T_c, d.kappa_c, d.T_h, d.kappa_h, d.r,
                        d.omega_c, d.omega_h, d.omega_1, d.omega_2,
                        d.hot_ramp, d.cold_ramp, d.hold, d.dt};
}

qt_status qt_run_cycle(const qt_cycle_spec* spec, qt_cycle_report* out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    engine::CycleSpec s;
    switch (spec->kind) {
      case QT_CYCLE_OTTO: s.kind = engine::CycleKind::otto; break;
      case QT_CYCLE_CARNOT_LIKE: s.kind = engine::CycleKind::carnot_like; break;
      default: fail(ErrorCode::invalid_argument, "unknown cycle kind");
    }
    s.backend = backend_in(spec->backend);
    s.cutoff = spec->cutoff;
    s.max_fock_cutoff = spec->max_fock_cutoff;
    s.T_c = spec->T_c;
    s.kappa_c = spec->kappa_c;
    s.T_h = spec->T_h;
    s.kappa_h = spec->kappa_h;
    s.r = spec->r;
    s.omega_c = spec->omega_c;
    s.omega_h = spec->omega_h;
    s.omega_1 = spec->omega_1;
    s.omega_2 = spec->omega_2;
    s.hot_ramp = spec->hot_ramp;
    s.cold_ramp = spec->cold_ramp;
    s.hold = spec->hold;
    s.dt = spec->dt;
    const auto r = engine::run_cycle(s);
    *out = qt_cycle_report{backend_of(r.backend), r.cutoff, r.E_dh, r.E_dh_prime, r.E_dh_tilde,
                           r.E_dc, r.work_W, r.work_out, r.eta_actual, r.eta_max, r.eta_sigma,
                           r.eta_carnot, regime_of(r.regime), r.bounds_valid ? 1 : 0,
                           r.firstlaw_residual, r.entropy_closure, r.state_closure};
  });
}

qt_status qt_run_scenario(const char* command, const char* config_path, const char* out_path,
                          const qt_overrides* overrides) {
  return guarded([&] {
    need(command, "command");
    scenario::Overrides ov;
    if (overrides) {
      if (overrides->has_dt) ov.dt = overrides->dt;
      if (overrides->has_cutoff) ov.cutoff = overrides->cutoff;
      ov.workers = overrides->workers;
    }
    if (ov.workers < 1) fail(ErrorCode::config, "--workers must be at least 1");
    scenario::run(command, config_path ? config_path : "", out_path ? out_path : "-", ov);
  });
}

size_t qt_scenario_count(void) { return scenario::commands().size(); }

const char* qt_scenario_name(size_t index) {
  const auto& names = scenario::commands();
  return index < names.size() ? names[index].c_str() : nullptr;
}

}  // extern "C"
