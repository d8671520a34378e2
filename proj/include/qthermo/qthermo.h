/*
 * Copyright 2026 The qthermo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QTHERMO_QTHERMO_H_
#define QTHERMO_QTHERMO_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QTHERMO_BUILDING_LIBRARY)
#    define QT_API __declspec(dllexport)
#  else
#    define QT_API __declspec(dllimport)
#  endif
#else
#  define QT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Units: hbar = k_B = 1; energies in hbar*kappa, time in 1/kappa. */

typedef enum qt_status {
  QT_OK = 0,
  QT_ERR_INVALID_ARGUMENT = 1,
  QT_ERR_CUTOFF_LEAK = 2,
  QT_ERR_POSITIVITY_LOSS = 3,
  QT_ERR_NON_UNIQUE_STEADY_STATE = 4,
  QT_ERR_NOT_UNITARY = 5,
  QT_ERR_LEDGER_INCONSISTENT = 6,
  QT_ERR_REGIME_VIOLATION = 7,
  QT_ERR_NOT_STEADY = 8,
  QT_ERR_SLOW_DRIVE_VIOLATION = 9,
  QT_ERR_CONFIG = 10,
  QT_ERR_IO = 11,
  QT_ERR_INTERNAL = 99
} qt_status;

typedef enum qt_regime {
  QT_REGIME_ENGINE = 0,
  QT_REGIME_ENGINE_AND_REFRIGERATOR = 1,
  QT_REGIME_NOT_ENGINE = 2
} qt_regime;

typedef enum qt_cycle_kind { QT_CYCLE_OTTO = 0, QT_CYCLE_CARNOT_LIKE = 1 } qt_cycle_kind;

typedef enum qt_backend {
  QT_BACKEND_AUTO = 0,
  QT_BACKEND_FOCK = 1,
  QT_BACKEND_GAUSSIAN = 2
} qt_backend;

typedef struct qt_state qt_state;
typedef struct qt_generator qt_generator;
typedef struct qt_trajectory qt_trajectory;

/* Library version string, e.g. "0.1.0". */
QT_API const char* qt_version(void);
/* Message of the most recent failure on the calling thread; "" if none. */
QT_API const char* qt_last_error(void);
QT_API const char* qt_status_name(qt_status status);

/* ---- states ---- */

QT_API qt_status qt_state_thermal(int cutoff, double nbar, qt_state** out);
QT_API qt_status qt_state_coherent(int cutoff, double alpha_re, double alpha_im, qt_state** out);
QT_API qt_status qt_state_squeezed_thermal(int cutoff, double nbar, double r, qt_state** out);
/* Row-major dim x dim matrix with interleaved (re, im) entries. */
QT_API qt_status qt_state_from_matrix(int dim, const double* re_im, qt_state** out);
QT_API void qt_state_free(qt_state* state);

QT_API int qt_state_dim(const qt_state* state);
/* Writes 2 * dim * dim doubles in the layout of qt_state_from_matrix. */
QT_API qt_status qt_state_matrix(const qt_state* state, double* re_im);
QT_API qt_status qt_state_entropy(const qt_state* state, double* out);
/* S(rho || sigma); +inf on support mismatch. */
QT_API qt_status qt_state_relative_entropy(const qt_state* rho, const qt_state* sigma, double* out);
QT_API qt_status qt_state_trace_distance(const qt_state* a, const qt_state* b, double* out);
/* Ergotropy and passive energy against H = omega a^dagger a. */
QT_API qt_status qt_state_ergotropy(const qt_state* state, double omega, double* ergotropy,
                                    double* passive_energy);
QT_API qt_status qt_state_majorizes(const qt_state* a, const qt_state* b, int* out);

/* ---- generators ---- */

QT_API qt_status qt_generator_thermal(int cutoff, double omega, double kappa, double nbar,
                                      qt_generator** out);
QT_API qt_status qt_generator_squeezed(int cutoff, double omega, double kappa, double nbar,
                                       double r, qt_generator** out);
/* Frequency ramped linearly from omega0 to omega1 over [0, ramp]; the bath
   occupation follows the instantaneous frequency at the given temperature.
   r = 0 gives a thermal bath. */
QT_API qt_status qt_generator_driven(int cutoff, double omega0, double omega1, double ramp,
                                     double kappa, double temperature, double r,
                                     qt_generator** out);
QT_API qt_status qt_generator_thermal_counterpart(const qt_generator* gen, qt_generator** out);
QT_API void qt_generator_free(qt_generator* gen);

QT_API qt_status qt_steady_state(const qt_generator* gen, double t_ref, qt_state** out);

/* ---- evolution ---- */

typedef struct qt_sample {
  double t;
  double energy;
  double entropy;
  double ergotropy;
  double passive_energy;
  double E_d;
  double work_W;
  double dEpas_d;
  double dErgo_d;
  double trace_err;
  double min_eig;
} qt_sample;

QT_API qt_status qt_evolve(const qt_generator* gen, const qt_state* rho0, double t_final,
                           double dt, int sample_every, qt_trajectory** out);
QT_API void qt_trajectory_free(qt_trajectory* traj);
QT_API size_t qt_trajectory_size(const qt_trajectory* traj);
QT_API qt_status qt_trajectory_sample(const qt_trajectory* traj, size_t index, qt_sample* out);
QT_API qt_status qt_trajectory_state(const qt_trajectory* traj, size_t index, qt_state** out);
QT_API qt_status qt_trajectory_residuals(const qt_trajectory* traj, double* firstlaw,
                                         double* split);
/* Cumulative entropy production at the last sample. */
QT_API qt_status qt_trajectory_sigma(const qt_trajectory* traj, const qt_generator* gen,
                                     double* out);

/* ---- efficiencies ---- */

QT_API qt_status qt_eta_max(double E_dh_prime, double E_dh, double Tc, double Th, double* out);
QT_API qt_status qt_eta_sigma(double E_dh_tilde, double E_dh, double Tc, double Th, double* out);
QT_API qt_status qt_eta_actual(double E_dh, double E_dc, double W, double* eta,
                               qt_regime* regime);

typedef struct qt_closed_form {
  double nbar_c, nbar_h, dnbar_c, dnbar_h;
  double eta, eta_max, eta_sigma, eta_carnot;
  qt_regime regime;
} qt_closed_form;

QT_API qt_status qt_closed_form_otto(double Tc, double Th, double omega_c, double omega_h,
                                     double r, double scale_u, qt_closed_form* out);
QT_API qt_status qt_otto_engine_threshold(double Tc_over_Th, double r, double scale_u,
                                          double* out);

typedef struct qt_hot_entry {
  double E_prime;
  double E;
  double T;
} qt_hot_entry;

typedef struct qt_thermal_entry {
  double E;
  double T;
} qt_thermal_entry;

QT_API qt_status qt_multibath_bound(const qt_hot_entry* hot, size_t n_hot,
                                    const qt_thermal_entry* thermal, size_t n_thermal,
                                    double* out);

/* ---- cycles ---- */

typedef struct qt_cycle_spec {
  qt_cycle_kind kind;
  qt_backend backend;
  int cutoff;
  int max_fock_cutoff;
  double T_c, kappa_c, T_h, kappa_h, r;
  double omega_c, omega_h, omega_1, omega_2;
  double hot_ramp, cold_ramp, hold, dt;
} qt_cycle_spec;

typedef struct qt_cycle_report {
  qt_backend backend;
  int cutoff;
  double E_dh, E_dh_prime, E_dh_tilde, E_dc;
  double work_W, work_out;
  double eta_actual, eta_max, eta_sigma, eta_carnot;
  qt_regime regime;
  int bounds_valid;
  double firstlaw_residual, entropy_closure, state_closure;
} qt_cycle_report;

/* Fills spec with the library defaults. */
QT_API void qt_cycle_spec_default(qt_cycle_spec* spec);
QT_API qt_status qt_run_cycle(const qt_cycle_spec* spec, qt_cycle_report* out);

/* ---- scenarios ---- */

typedef struct qt_overrides {
  int has_dt;
  double dt;
  int has_cutoff;
  int cutoff;
  int workers;
} qt_overrides;

/* Runs a named scenario and writes its CSV to out_path ("-" or NULL for
   stdout). config_path may be NULL for defaults; overrides may be NULL.
   Nothing is written on failure. */
QT_API qt_status qt_run_scenario(const char* command, const char* config_path,
                                 const char* out_path, const qt_overrides* overrides);
/* Number of scenarios and their names. */
QT_API size_t qt_scenario_count(void);
QT_API const char* qt_scenario_name(size_t index);

#ifdef __cplusplus
}
#endif

#endif  /* QTHERMO_QTHERMO_H_ */
