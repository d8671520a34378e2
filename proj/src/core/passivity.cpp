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

#include "core/passivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/linalg.hpp"

namespace qthermo::passivity {

SpectrumOrdering order_spectrum(const DensityMatrix& rho, const Operator& hamiltonian) {
  require(rho.dim() == hamiltonian.dim(), "state and Hamiltonian dimensions differ");
  require(hamiltonian.is_hermitian(), "Hamiltonian must be Hermitian");
  const auto state = linalg::eigh(rho.matrix());
  const auto energy = linalg::eigh(linalg::hermitian_part(hamiltonian.matrix()));
  const Eigen::Index n = state.values.size();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return state.values(i) > state.values(j);
  });

  SpectrumOrdering out;
  out.state_basis.resize(n, n);
  out.eigenvalues_desc.reserve(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues_desc.push_back(state.values(order[k]));
    out.state_basis.col(k) = state.vectors.col(order[k]);
  }
  out.energies_asc.assign(energy.values.data(), energy.values.data() + n);
  out.energy_basis = energy.vectors;
  return out;
}

PassiveDecomposition passive_decompose(const DensityMatrix& rho, const Operator& hamiltonian) {
  const SpectrumOrdering s = order_spectrum(rho, hamiltonian);
  const Eigen::Index n = static_cast<Eigen::Index>(s.eigenvalues_desc.size());
  RealVector pops(n);
  for (Eigen::Index k = 0; k < n; ++k) pops(k) = std::max(0.0, s.eigenvalues_desc[k]);
  pops /= pops.sum();

  Matrix pi = s.energy_basis * pops.cast<Complex>().asDiagonal() * s.energy_basis.adjoint();
  Matrix v = s.energy_basis * s.state_basis.adjoint();

  const double energy = rho.expectation(hamiltonian.matrix());
  const double e_pas = passive_energy(s.eigenvalues_desc, s.energies_asc);
  return PassiveDecomposition{
      DensityMatrix(rho.dim(), linalg::hermitian_part(pi)),
      Operator(rho.dim(), std::move(v)),
      std::max(0.0, energy - e_pas),
      e_pas,
      energy,
  };
}

double ergotropy(const DensityMatrix& rho, const Operator& hamiltonian) {
  return passive_decompose(rho, hamiltonian).ergotropy;
}

double passive_energy(std::span<const double> populations_desc, std::span<const double> energies_asc) {
  require(populations_desc.size() == energies_asc.size(), "spectrum sizes differ");
  double e = 0.0;
  for (std::size_t k = 0; k < populations_desc.size(); ++k) e += populations_desc[k] * energies_asc[k];
  return e;
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues)
    if (lambda > kEigFloor) s -= lambda * std::log(lambda);
  return s;
}

std::vector<double> spectrum_desc(const Matrix& rho) {
  const RealVector ev = linalg::eigvalsh(linalg::hermitian_part(rho));
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(spectrum_desc(rho.matrix()));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.dim() == sigma.dim(), "relative entropy needs equal dimensions");
  const auto s = linalg::eigh(sigma.matrix());
  // Weight of rho along each eigenvector of sigma.
  const Matrix rot = s.vectors.adjoint() * rho.matrix() * s.vectors;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    const double w = rot(k, k).real();
    if (s.values(k) <= kEigFloor) {
      if (w > kEigFloor) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += w * std::log(s.values(k));
  }
  const double value = -von_neumann_entropy(rho) - cross;
  return std::max(0.0, value);
}

bool majorizes_spectra(std::span<const double> first_desc, std::span<const double> second_desc) {
  require(first_desc.size() == second_desc.size(), "majorization needs equal dimensions");
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < first_desc.size(); ++k) {
    a += first_desc[k];
    b += second_desc[k];
    if (a < b - kTolMajor) return false;
  }
  return true;
}

bool majorizes(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require(rho1.dim() == rho2.dim(), "majorization needs equal dimensions");
  return majorizes_spectra(spectrum_desc(rho1.matrix()), spectrum_desc(rho2.matrix()));
}

}  // namespace qthermo::passivity
