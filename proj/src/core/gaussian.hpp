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

#include "core/first_law.hpp"
#include "core/types.hpp"

namespace qthermo::gaussian {

/// Zero-mean single-mode Gaussian state: n = <a^dagger a>, m = <a^2>.
struct Moments {
  double n = 0.0;
  Complex m{0.0, 0.0};
};

Moments thermal(double nbar);
/// Moments of S(r) rho_th(nbar) S(r)^dagger.
Moments squeezed_thermal(double nbar, double r);
/// Moments of S(r)^dagger rho S(r).
Moments unsqueeze(const Moments& x, double r);

/// Symplectic eigenvalue minus 1/2: the occupation of the passive state.
double passive_occupation(const Moments& x);
/// Von Neumann entropy (k_B = 1).
double entropy(const Moments& x);
/// Bosonic entropy of a thermal occupation.
double thermal_entropy(double nbar);

/// Squeezed-bath stroke with frequency omega(t) = omega0 + (omega1 - omega0) t / ramp
/// for t < ramp and omega1 afterwards; nbar follows omega at the bath
/// temperature. A thermal bath is r = 0.
struct BathStroke {
  double omega0;
  double omega1;
  double ramp = 0.0;
  double hold = 0.0;
  double kappa = 1.0;
  double temperature;
  double r = 0.0;

  double omega(double t) const;
  double duration() const { return ramp + hold; }
};

struct StrokeResult {
  Moments final_state;
  FirstLawLedger ledger;
  double firstlaw_residual = 0.0;
  /// max(|dn/dt|, |dm/dt|) at the end.
  double stationarity = 0.0;
  std::vector<double> times;
  std::vector<Moments> samples;
};

/// RK4 integration of dn/dt = -2 kappa (n - N(t)), dm/dt = -2 kappa (m - M(t))
/// with the first-law ledger advanced every step.
StrokeResult run_stroke(const BathStroke& stroke, const Moments& start, double dt,
                        int sample_every = 0);

}  // namespace qthermo::gaussian
