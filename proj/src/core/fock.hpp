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

namespace qthermo {

/// Validation tolerances shared by every state and operator check.
struct Tolerances {
  static constexpr double herm = 1e-10;
  static constexpr double trace = 1e-10;
  static constexpr double psd = 1e-9;
  static constexpr double unitary = 1e-9;
  static constexpr double leak = 1e-8;
};

/// Number of retained Fock levels 0..N-1 of a truncated oscillator.
class HilbertDim {
 public:
  static constexpr int kDefault = 40;

  explicit HilbertDim(int cutoff);

  int value() const noexcept { return n_; }
  friend bool operator==(HilbertDim, HilbertDim) = default;

 private:
  int n_;
};

/// Dense square operator on a truncated Fock space.
class Operator {
 public:
  Operator(HilbertDim dim, Matrix entries);

  static Operator identity(HilbertDim dim);
  static Operator zero(HilbertDim dim);

  HilbertDim dim() const noexcept { return dim_; }
  const Matrix& matrix() const noexcept { return m_; }

  Operator adjoint() const { return Operator(dim_, m_.adjoint()); }
  bool is_hermitian(double tol = Tolerances::herm) const;
  /// max |U^dagger U - 1|.
  double unitarity_error() const;

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  HilbertDim dim_;
  Matrix m_;
};

/// Hermitian, unit-trace, positive semidefinite operator. Construction
/// validates; use the result of every constructor in fock:: freely.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op);
  DensityMatrix(HilbertDim dim, Matrix entries) : DensityMatrix(Operator(dim, std::move(entries))) {}

  HilbertDim dim() const noexcept { return op_.dim(); }
  const Operator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }

  double expectation(const Matrix& observable) const;
  double purity() const;

 private:
  Operator op_;
};

namespace fock {

Operator annihilation(HilbertDim dim);
Operator creation(HilbertDim dim);
Operator number(HilbertDim dim);

/// S(r) = exp[(r/2)(a^2 - a^dagger^2)] with zero squeezing phase.
/// Throws CutoffLeak if S(r)|0> leaks past the top two levels.
Operator squeeze_operator(double r, HilbertDim dim);

DensityMatrix thermal_state(double nbar, HilbertDim dim);
DensityMatrix coherent_state(Complex alpha, HilbertDim dim);
/// S(r) rho_th(nbar) S(r)^dagger.
DensityMatrix squeezed_thermal_state(double nbar, double r, HilbertDim dim);

/// Population in the top `levels` Fock levels.
double top_population(const Matrix& rho, int levels = 2);

/// Bose occupation [exp(omega/T) - 1]^-1 with hbar = k_B = 1; T = 0 gives 0.
double bose_occupation(double omega, double temperature);
/// Inverse of bose_occupation: the temperature at which omega has nbar quanta.
double temperature_for(double omega, double nbar);

/// Smallest cutoff (up to max_cutoff) at which squeezed_thermal_state(nbar, r)
/// passes the leak check; returns max_cutoff + 1 when none does.
int suggest_cutoff(double nbar, double r, int max_cutoff);

}  // namespace fock
}  // namespace qthermo
