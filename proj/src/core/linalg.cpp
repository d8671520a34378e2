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

#include "core/linalg.hpp"

#include <cmath>
#include <vector>

namespace qthermo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::cutoff_leak: return "CutoffLeak";
    case ErrorCode::positivity_loss: return "PositivityLoss";
    case ErrorCode::non_unique_steady_state: return "NonUniqueSteadyState";
    case ErrorCode::not_unitary: return "NotUnitary";
    case ErrorCode::ledger_inconsistent: return "LedgerInconsistent";
    case ErrorCode::regime_violation: return "RegimeViolation";
    case ErrorCode::not_steady: return "NotSteady";
    case ErrorCode::slow_drive_violation: return "SlowDriveViolation";
    case ErrorCode::config: return "ConfigError";
    case ErrorCode::io: return "IoError";
  }
  return "Unknown";
}

namespace linalg {

HermitianEigen eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::invalid_argument, "Hermitian eigen-decomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::invalid_argument, "Hermitian eigen-decomposition did not converge");
  return solver.eigenvalues();
}

Matrix expm_i_hermitian(const Matrix& x) {
  const auto e = eigh(hermitian_part(x));
  Vector phases(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -e.values(k)));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  return 0.5 * eigvalsh(hermitian_part(a - b)).cwiseAbs().sum();
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

SparseMatrix to_sparse(const Matrix& m) {
  std::vector<Eigen::Triplet<Complex>> entries;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex(0.0, 0.0)) entries.emplace_back(i, j, m(i, j));
  SparseMatrix s(m.rows(), m.cols());
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

}  // namespace linalg
}  // namespace qthermo
