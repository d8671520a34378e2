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

#include "core/types.hpp"

namespace qthermo::linalg {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};

HermitianEigen eigh(const Matrix& m);

/// Only the eigenvalues, ascending.
RealVector eigvalsh(const Matrix& m);

/// exp(-i X) for Hermitian X, via its spectral decomposition. Unitary to
/// machine precision regardless of the norm of X.
Matrix expm_i_hermitian(const Matrix& x);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// 0.5 * sum of |eigenvalues| of a Hermitian difference.
double trace_distance(const Matrix& a, const Matrix& b);

Matrix hermitian_part(const Matrix& m);

/// Drops exact zeros so products with ladder operators stay cheap.
SparseMatrix to_sparse(const Matrix& m);

}  // namespace qthermo::linalg
