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


#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/first_law.hpp"

namespace qthermo::engine {

enum class CycleKind { otto, carnot_like };
enum class Backend { automatic, fock, gaussian };
enum class Regime { engine, engine_and_refrigerator, not_engine };

const char* to_string(Regime regime);
const char* to_string(Backend backend);
const char* to_string(CycleKind kind);

struct CycleSpec {
  CycleKind kind = CycleKind::otto;
  Backend backend = Backend::automatic;
  /// Fock cutoff; 0 picks the smallest one that passes the leak check.
  int cutoff = 0;
  /// Automatic backend switches to Gaussian moments above this cutoff.
  int max_fock_cutoff = 60;

  double T_c = 1.0;
  double kappa_c = 1.0;
  double T_h = 3.0;
  double kappa_h = 1.0;
  double r = 0.0;

  double omega_c = 1.0;
  double omega_h = 2.0;
  /// Carnot-like only: omega_2 = omega_c T_h / T_c, omega_1 = omega_h T_c / T_h.
  double omega_1 = 0.0;
  double omega_2 = 0.0;

  /// Carnot-like frequency ramp durations.
  double hot_ramp = 0.0;
  double cold_ramp = 0.0;
  /// Bath contact at fixed frequency after the ramp (the whole isochore for Otto).
  double hold = 20.0;
  double dt = 0.01;

  void validate() const;
};

struct StrokeReport {
  std::string name;
  double work = 0.0;          // energy delivered to the medium by the drive
  double E_d = 0.0;           // energy delivered by the bath
  double dEpas_d = 0.0;
  double dErgo_d = 0.0;
  double delta_S = 0.0;
  double firstlaw_residual = 0.0;
  double stationarity = 0.0;  // max |L rho| at the end of a bath stroke
};

struct CycleReport {
  CycleKind kind = CycleKind::otto;
  Backend backend = Backend::fock;
  int cutoff = 0;

  double E_dh = 0.0;
  /// Alternative-path energy of the hot stroke.
  double E_dh_prime = 0.0;
  /// Energy exchanged when the unsqueezed start state relaxes thermally.
  double E_dh_tilde = 0.0;
  /// Passive-energy change during the hot stroke.
  double dEpas_h = 0.0;
  double E_dc = 0.0;
  double work_W = 0.0;    // net work done on the medium
  double work_out = 0.0;  // -work_W
  double delta_S_h = 0.0;
  double delta_S_c = 0.0;

  double eta_actual = 0.0;
  double eta_max = 0.0;
  double eta_sigma = 0.0;
  double eta_carnot = 0.0;
  Regime regime = Regime::not_engine;
  /// Engine regime with E_dc <= 0 and E_dh_prime >= 0: the bounds apply.
  bool bounds_valid = false;

  double firstlaw_residual = 0.0;  // |E_dc + E_dh + W|
  double entropy_closure = 0.0;    // |Delta S over the cycle|
  double state_closure = 0.0;      // distance between start and end states
  /// E_dc / T_c + E_dh_prime / T_h.
  double clausius_alt = 0.0;
  bool slow_drive_ok = true;

  std::vector<StrokeReport> strokes;
};

/// 1 - (T_c / T_h) E'_dh / E_dh. Throws RegimeViolation unless E_dh > 0 and E'_dh >= 0.
double eta_max(double E_dh_prime, double E_dh, double Tc, double Th);
/// 1 - (T_c / T_h) E~_dh / E_dh; not capped at 1.
double eta_sigma(double E_dh_tilde, double E_dh, double Tc, double Th);
/// min(eta_max, eta_sigma) of a report.
double eta_bound_combined(const CycleReport& report);
/// Efficiency and regime from the cycle energies (W is work done on the medium).
std::pair<double, Regime> eta_actual(double E_dh, double E_dc, double W);

struct ClosedForm {
  double nbar_c, nbar_h, dnbar_c, dnbar_h;
  double eta, eta_max, eta_sigma, eta_carnot;
  Regime regime;
};

/// Closed-form Otto efficiencies. Only the ratios T_c/T_h and omega_c/omega_h
/// enter; the absolute scale is omega_h / T_h = scale_u. Throws
/// RegimeViolation when n_h + dn_h < n_c.
ClosedForm closed_form_otto(double Tc, double Th, double omega_c, double omega_h, double r,
                            double scale_u);

/// Smallest omega_c / omega_h at which the Otto cycle is an engine.
double otto_engine_threshold(double Tc_over_Th, double r, double scale_u);

struct HotEntry {
  double E_prime;
  double E;
  double T;
};
struct ThermalEntry {
  double E;
  double T;
};

/// 1 - (T_min / T_max) E'_in / E_in over all energising baths.
double multibath_bound(const std::vector<HotEntry>& hot, const std::vector<ThermalEntry>& thermal);

CycleReport run_otto(const CycleSpec& spec);
CycleReport run_carnot_like(const CycleSpec& spec);
CycleReport run_cycle(const CycleSpec& spec);

/// One bath visited at a fixed frequency. r > 0 marks a squeezed bath, whose
/// ergotropy is extracted right after the stroke.
struct BathStage {
  std::string name;
  double omega;
  double T;
  double kappa = 1.0;
  double r = 0.0;
};

struct MultibathSpec {
  std::vector<BathStage> stages;
  Backend backend = Backend::automatic;
  int cutoff = 0;
  int max_fock_cutoff = 60;
  double hold = 20.0;
  double dt = 0.01;
};

struct StageResult {
  BathStage stage;
  double E_d = 0.0;
  double E_d_prime = 0.0;
  double work = 0.0;  // adiabat before plus extraction after
  double delta_S = 0.0;
};

struct MultibathReport {
  Backend backend = Backend::fock;
  int cutoff = 0;
  std::vector<StageResult> stages;
  double E_in = 0.0;
  double E_in_prime = 0.0;
  double E_out = 0.0;
  double work_W = 0.0;
  double eta_actual = 0.0;
  Regime regime = Regime::not_engine;
  double bound = 0.0;
  /// eta_max of the squeezed baths alone between T_min and T_max.
  double eta_max_reduced = 0.0;
  double eta_carnot = 0.0;
  double firstlaw_residual = 0.0;
  double entropy_closure = 0.0;
  double state_closure = 0.0;
};

/// Stages run in order starting from the steady state of the last stage.
MultibathReport run_multibath(const MultibathSpec& spec);

}  // namespace qthermo::engine
