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


#include "core/first_law.hpp"

#include <algorithm>
#include <cmath>

#include "core/linalg.hpp"
#include "core/passivity.hpp"

namespace qthermo {

LedgerPoint ledger_point(const Matrix& rho, const Matrix& h, const RealVector& energies_asc) {
  LedgerPoint p;
  p.populations_desc = passivity::spectrum_desc(rho);
  p.energy = (rho * h).trace().real();
  p.energies_asc = energies_asc;
  p.passive_energy = passivity::passive_energy(
      p.populations_desc, std::span<const double>(energies_asc.data(), energies_asc.size()));
  p.entropy = passivity::entropy_of_spectrum(p.populations_desc);
  return p;
}

namespace {

void fill_instant(FirstLawLedger& l, const LedgerPoint& p) {
  l.energy_E = p.energy;
  l.entropy_S = p.entropy;
  l.passive_energy_Epas = p.passive_energy;
  l.ergotropy_script_W = std::max(0.0, p.energy - p.passive_energy);
}

}  // namespace

LedgerAccumulator::LedgerAccumulator(const Matrix& rho0, const Matrix& h0,
                                     const RealVector& energies0)
    : first_(ledger_point(rho0, h0, energies0)), last_point_(first_), last_rho_(rho0),
      last_h_(h0) {
  fill_instant(ledger_, first_);
}

void LedgerAccumulator::step(const Matrix& rho1, const Matrix& h1, const RealVector& energies1) {
  LedgerPoint p1 = ledger_point(rho1, h1, energies1);
  const LedgerPoint& p0 = last_point_;

  const Matrix h_bar = 0.5 * (last_h_ + h1);
  const Matrix rho_bar = 0.5 * (last_rho_ + rho1);
  const double de_d = ((rho1 - last_rho_) * h_bar).trace().real();
  const double dw = (rho_bar * (h1 - last_h_)).trace().real();

  double depas = 0.0, pas_work = 0.0;
  for (std::size_t n = 0; n < p1.populations_desc.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const double dr = p1.populations_desc[n] - p0.populations_desc[n];
    const double r_bar = 0.5 * (p1.populations_desc[n] + p0.populations_desc[n]);
    depas += dr * 0.5 * (p1.energies_asc(i) + p0.energies_asc(i));
    pas_work += r_bar * (p1.energies_asc(i) - p0.energies_asc(i));
  }
  // Ergotropy change minus the part driven by the Hamiltonian at frozen state.
  const double ergo0 = p0.energy - p0.passive_energy;
  const double ergo1 = p1.energy - p1.passive_energy;
  const double dergo_check = (ergo1 - ergo0) - (dw - pas_work);

  ledger_.E_d += de_d;
  ledger_.work_W += dw;
  ledger_.dEpas_d += depas;
  ledger_.dErgo_d = ledger_.E_d - ledger_.dEpas_d;
  ledger_.dErgo_d_check += dergo_check;
  fill_instant(ledger_, p1);

  last_point_ = std::move(p1);
  last_rho_ = rho1;
  last_h_ = h1;
}

double LedgerAccumulator::firstlaw_residual() const {
  return std::abs((last_point_.energy - first_.energy) - (ledger_.E_d + ledger_.work_W));
}

double LedgerAccumulator::split_residual() const {
  return std::abs(ledger_.dErgo_d - ledger_.dErgo_d_check);
}

double firstlaw_tolerance(double delta_energy, double energy_scale) {
  return 1e-6 * std::max(std::abs(delta_energy), std::abs(energy_scale));
}

}  // namespace qthermo
