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

#include "core/fock.hpp"

namespace qthermo {

/// H(t) = f(t) H0 with f piecewise linear: f = f0 before t0, f1 after t1 and
/// linear in between. Self-commuting by construction.
class HamiltonianSchedule {
 public:
  /// Time-independent H.
  static HamiltonianSchedule constant(Operator h);
  /// omega a^dagger a.
  static HamiltonianSchedule oscillator(double omega, HilbertDim dim);
  /// omega(t) a^dagger a with omega moving linearly from omega0 at t0 to omega1 at t1.
  static HamiltonianSchedule oscillator_ramp(double omega0, double omega1, double t0, double t1,
                                             HilbertDim dim);

  HilbertDim dim() const noexcept { return base_.dim(); }
  const Operator& base() const noexcept { return base_; }

  bool is_constant() const noexcept { return f0_ == f1_; }
  bool is_self_commuting() const noexcept { return true; }

  /// Scale factor f(t); for oscillator schedules this is omega(t).
  double scale(double t) const;
  /// df/dt, one-sided at the kinks (right derivative).
  double scale_rate(double t) const;
  double max_scale() const { return std::max(std::abs(f0_), std::abs(f1_)); }

  Matrix at(double t) const { return scale(t) * base_.matrix(); }
  Operator operator_at(double t) const { return Operator(dim(), at(t)); }
  /// Eigenvalues of H(t), ascending.
  RealVector spectrum(double t) const;

  double t_start() const noexcept { return t0_; }
  double t_end() const noexcept { return t1_; }

 private:
  HamiltonianSchedule(Operator base, RealVector base_spectrum, double f0, double f1, double t0,
                      double t1);

  Operator base_;
  RealVector base_spectrum_;  // ascending
  double f0_, f1_, t0_, t1_;
};

}  // namespace qthermo
