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

#include <vector>

#include "core/dynamics.hpp"

namespace qthermo::ledger {

/// Re-derives the first-law ledger from a trajectory's snapshots against the
/// generator's Hamiltonian. Throws LedgerInconsistent when the two ergotropy
/// evaluations disagree beyond tolerance.
FirstLawLedger accumulate_ledger(const Trajectory& traj, const Generator& gen);

/// S(rho0 || rho_ss); +infinity on support mismatch.
double spohn_sigma_constH(const DensityMatrix& rho0, const DensityMatrix& rho_ss);

/// Spectral form of ln rho_ss(t): log-eigenvalues (possibly -infinity) and
/// eigenvectors as columns.
struct LogState {
  RealVector logs;
  Matrix vectors;

  /// Tr[x ln rho_ss] over the supported subspace.
  double trace(const Matrix& x) const;
  /// Largest weight of rho on the unsupported subspace.
  double unsupported_weight(const Matrix& rho) const;
};

/// ln rho_ss(t). Bath generators use the closed-form squeezed thermal state;
/// other generators use the numerical stationary state, with eigenvalues at or
/// below the floor mapped to -infinity.
LogState log_steady_state(const Generator& gen, double t);

/// Cumulative Sigma at each trajectory sample (first entry 0):
/// Delta S + sum_k Tr[drho_k * mean(ln rho_ss(t_k), ln rho_ss(t_k+1))].
std::vector<double> spohn_sigma_series(const Trajectory& traj, const Generator& gen);

double spohn_sigma_timedep(const Trajectory& traj, const Generator& gen);

/// S(U^dagger rho0 U || pi_ss). Throws NotUnitary.
double sigma_nonthermal(const DensityMatrix& rho0, const Operator& u, const DensityMatrix& pi_ss);

struct AltPath {
  double E_d_prime;
  Trajectory trajectory;
};

/// Evolves the passive part of rho0 under a thermal generator and returns the
/// dissipative energy exchanged along the way.
AltPath alt_path_energy(const Generator& gen_thermal, const DensityMatrix& rho0, double t_final,
                        double dt, const EvolveOptions& options = {});

/// Same construction for a caller-supplied generator whose stationary states
/// are passive. No check is made that they are.
AltPath alt_path_energy_passive(const Generator& gen_passive, const DensityMatrix& rho0, double t_final,
                                double dt, const EvolveOptions& options = {});

struct EntropyReport {
  double delta_S = 0.0;
  double sigma_spohn = 0.0;
  double E_d = 0.0;
  double alt_energy_Edprime = 0.0;
  /// E_d / T.
  double bound_direct = 0.0;
  /// E'_d / T.
  double bound_alt = 0.0;
  double slack_direct = 0.0;
  double slack_alt = 0.0;
  /// S(pi_0 || pi_ss) with both passive states taken against H at the end.
  double passive_relative_entropy = 0.0;
  /// bound_alt >= bound_direct within tolerance.
  bool alt_is_tighter = true;
};

/// Entropy-change bounds for a relaxation stroke. U maps the bath's passive
/// frame to its steady-state frame (identity for a thermal bath, S(r) for a
/// squeezed one). dt is the step for the alternative-path evolution.
EntropyReport entropy_bound_report(const Trajectory& traj, const Generator& gen, double bath_T,
                                   const Operator& u, double dt);

}  // namespace qthermo::ledger
