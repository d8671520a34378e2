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

#include "core/fock.hpp"

namespace qthermo {

/// Cumulative first-law bookkeeping along a trajectory plus the instantaneous
/// state functions at the current point.
struct FirstLawLedger {
  double E_d = 0.0;       // dissipative energy change
  double work_W = 0.0;    // energy change from the Hamiltonian schedule
  double dEpas_d = 0.0;   // dissipative passive-energy change
  double dErgo_d = 0.0;   // dissipative ergotropy change
  double energy_E = 0.0;
  double entropy_S = 0.0;
  double ergotropy_script_W = 0.0;
  double passive_energy_Epas = 0.0;
  /// Independent evaluation of dErgo_d from instantaneous ergotropies.
  double dErgo_d_check = 0.0;
};

/// Spectral snapshot of one grid point, enough to advance the ledger.
struct LedgerPoint {
  double energy;
  double passive_energy;
  double entropy;
  std::vector<double> populations_desc;
  RealVector energies_asc;
};

/// Builds a LedgerPoint from a state and the Hamiltonian at the same time.
LedgerPoint ledger_point(const Matrix& rho, const Matrix& h, const RealVector& energies_asc);

/// Step-by-step accumulator. Per step, with bars denoting endpoint averages:
///   E_d += Tr[drho Hbar], W += Tr[rhobar dH],
///   dEpas_d += sum_n dr_n Ebar_n, dErgo_d = E_d - dEpas_d.
/// The first law holds to roundoff by construction.
class LedgerAccumulator {
 public:
  LedgerAccumulator(const Matrix& rho0, const Matrix& h0, const RealVector& energies0);

  void step(const Matrix& rho1, const Matrix& h1, const RealVector& energies1);

  const FirstLawLedger& ledger() const noexcept { return ledger_; }
  const LedgerPoint& initial() const noexcept { return first_; }
  const LedgerPoint& current() const noexcept { return last_point_; }

  /// |Delta E - (E_d + W)|.
  double firstlaw_residual() const;
  /// |dErgo_d - dErgo_d_check|.
  double split_residual() const;

 private:
  FirstLawLedger ledger_;
  LedgerPoint first_;
  LedgerPoint last_point_;
  Matrix last_rho_;
  Matrix last_h_;
};

/// 1e-6 * max(|Delta E|, energy_scale).
double firstlaw_tolerance(double delta_energy, double energy_scale);

}  // namespace qthermo
