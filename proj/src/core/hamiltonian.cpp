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

#include "core/hamiltonian.hpp"

#include <cmath>

#include "core/linalg.hpp"

namespace qthermo {

HamiltonianSchedule::HamiltonianSchedule(Operator base, RealVector base_spectrum, double f0,
                                         double f1, double t0, double t1)
    : base_(std::move(base)), base_spectrum_(std::move(base_spectrum)),
      f0_(f0), f1_(f1), t0_(t0), t1_(t1) {}

HamiltonianSchedule HamiltonianSchedule::constant(Operator h) {
  require(h.is_hermitian(), "Hamiltonian must be Hermitian");
  RealVector spec = linalg::eigvalsh(linalg::hermitian_part(h.matrix()));
  return HamiltonianSchedule(std::move(h), std::move(spec), 1.0, 1.0, 0.0, 0.0);
}

HamiltonianSchedule HamiltonianSchedule::oscillator(double omega, HilbertDim dim) {
  return oscillator_ramp(omega, omega, 0.0, 0.0, dim);
}

HamiltonianSchedule HamiltonianSchedule::oscillator_ramp(double omega0, double omega1, double t0,
                                                         double t1, HilbertDim dim) {
  require(std::isfinite(omega0) && std::isfinite(omega1) && omega0 > 0.0 && omega1 > 0.0,
          "oscillator frequency must be positive and finite");
  require(std::isfinite(t0) && std::isfinite(t1) && t1 >= t0, "ramp interval must be ordered");
  require(t1 > t0 || omega0 == omega1, "a frequency change needs a ramp of positive length");
  RealVector spec(dim.value());
  for (int k = 0; k < dim.value(); ++k) spec(k) = k;
  return HamiltonianSchedule(fock::number(dim), std::move(spec), omega0, omega1, t0, t1);
}

double HamiltonianSchedule::scale(double t) const {
  if (f0_ == f1_ || t <= t0_) return f0_;
  if (t >= t1_) return f1_;
  return f0_ + (f1_ - f0_) * (t - t0_) / (t1_ - t0_);
}

double HamiltonianSchedule::scale_rate(double t) const {
  if (f0_ == f1_ || t < t0_ || t >= t1_) return 0.0;
  return (f1_ - f0_) / (t1_ - t0_);
}

RealVector HamiltonianSchedule::spectrum(double t) const {
  const double f = scale(t);
  // Negative scale reverses the ordering.
  return f >= 0.0 ? RealVector(f * base_spectrum_) : RealVector(f * base_spectrum_.reverse());
}

}  // namespace qthermo
