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

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "core/fock.hpp"
#include "core/linalg.hpp"

namespace qthermo::testing {

inline Matrix random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
inline Matrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_complex(n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q;
}

/// Full-rank random density matrix G G^dagger / Tr.
inline DensityMatrix random_state(int n, std::mt19937_64& rng) {
  const Matrix g = random_complex(n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(HilbertDim(n), linalg::hermitian_part(rho));
}

/// Random state supported on the lowest `levels` Fock states of an n-level space.
inline DensityMatrix random_low_state(int n, int levels, std::mt19937_64& rng) {
  Matrix rho = Matrix::Zero(n, n);
  rho.topLeftCorner(levels, levels) = random_state(levels, rng).matrix();
  return DensityMatrix(HilbertDim(n), rho);
}

inline Matrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index k = 0;
  for (double v : values) m(k, k) = v, ++k;
  return m;
}

}  // namespace qthermo::testing
