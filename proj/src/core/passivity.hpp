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

#include <span>
#include <vector>

#include "core/fock.hpp"

namespace qthermo::passivity {

/// Eigenvalues below this count as zero for entropy and support decisions.
inline constexpr double kEigFloor = 1e-14;
/// Slack on majorization partial sums.
inline constexpr double kTolMajor = 1e-10;

/// State eigenvalues in descending order paired against Hamiltonian energies in
/// ascending order. Ties keep the solver's index order (stable sort).
struct SpectrumOrdering {
  std::vector<double> eigenvalues_desc;
  Matrix state_basis;   // column k belongs to eigenvalues_desc[k]
  std::vector<double> energies_asc;
  Matrix energy_basis;  // column k belongs to energies_asc[k]
};

struct PassiveDecomposition {
  DensityMatrix passive_state;
  /// V with V rho V^dagger = passive_state.
  Operator extraction_unitary;
  double ergotropy;
  double passive_energy;
  double energy;
};

SpectrumOrdering order_spectrum(const DensityMatrix& rho, const Operator& hamiltonian);

PassiveDecomposition passive_decompose(const DensityMatrix& rho, const Operator& hamiltonian);

double ergotropy(const DensityMatrix& rho, const Operator& hamiltonian);

/// sum_n r_n E_n for descending populations r and ascending energies E.
double passive_energy(std::span<const double> populations_desc, std::span<const double> energies_asc);

/// -sum lambda ln lambda over eigenvalues above kEigFloor (k_B = 1).
double entropy_of_spectrum(std::span<const double> eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || sigma); +infinity when rho has weight outside the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Descending eigenvalues of a Hermitian matrix.
std::vector<double> spectrum_desc(const Matrix& rho);

bool majorizes_spectra(std::span<const double> first_desc, std::span<const double> second_desc);

/// True iff every descending partial sum of rho1 dominates that of rho2.
bool majorizes(const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace qthermo::passivity
