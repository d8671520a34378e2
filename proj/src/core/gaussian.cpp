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


#include "core/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "core/dynamics.hpp"
#include "core/fock.hpp"

namespace qthermo::gaussian {

Moments thermal(double nbar) {
  require(std::isfinite(nbar) && nbar >= 0.0, "thermal occupation must be finite and >= 0");
  return {nbar, {0.0, 0.0}};
}

Moments squeezed_thermal(double nbar, double r) {
  require(std::isfinite(nbar) && nbar >= 0.0, "thermal occupation must be finite and >= 0");
  return {squeezed_N(nbar, r), {squeezed_M(nbar, r), 0.0}};
}

Moments unsqueeze(const Moments& x, double r) {
  const double c = std::cosh(r), s = std::sinh(r);
  Moments y;
  y.n = c * c * x.n + s * s * (x.n + 1.0) + c * s * 2.0 * x.m.real();
  y.m = c * c * x.m + s * s * std::conj(x.m) + c * s * (2.0 * x.n + 1.0);
  return y;
}

double passive_occupation(const Moments& x) {
  const double h = x.n + 0.5;
  return std::sqrt(std::max(0.25, h * h - std::norm(x.m))) - 0.5;
}

double thermal_entropy(double nbar) {
  if (nbar <= 0.0) return 0.0;
  return (nbar + 1.0) * std::log1p(nbar) - nbar * std::log(nbar);
}

double entropy(const Moments& x) { return thermal_entropy(passive_occupation(x)); }

double BathStroke::omega(double t) const {
  if (ramp <= 0.0 || t >= ramp) return omega1;
  if (t <= 0.0) return omega0;
  return omega0 + (omega1 - omega0) * t / ramp;
}

namespace {

struct Rates {
  double N;
  double M;
};

Rates targets(const BathStroke& s, double t) {
  const double nbar = fock::bose_occupation(s.omega(t), s.temperature);
  return {squeezed_N(nbar, s.r), squeezed_M(nbar, s.r)};
}

Moments derivative(const BathStroke& s, const Moments& x, double t) {
  const Rates q = targets(s, t);
  return {-2.0 * s.kappa * (x.n - q.N), -2.0 * s.kappa * (x.m - Complex(q.M, 0.0))};
}

Moments axpy(const Moments& x, double h, const Moments& k) { return {x.n + h * k.n, x.m + h * k.m}; }

}  // namespace

StrokeResult run_stroke(const BathStroke& stroke, const Moments& start, double dt,
                        int sample_every) {
  require(stroke.omega0 > 0.0 && stroke.omega1 > 0.0, "frequencies must be positive");
  require(stroke.kappa > 0.0 && stroke.temperature > 0.0, "kappa and temperature must be positive");
  require(stroke.ramp >= 0.0 && stroke.hold >= 0.0, "stroke durations must be >= 0");
  require(dt > 0.0, "time step must be positive");
  const double total = stroke.duration();
  const long steps = total == 0.0 ? 0 : static_cast<long>(std::ceil(total / dt - 1e-9));
  const double h = steps == 0 ? 0.0 : total / static_cast<double>(steps);

  StrokeResult res;
  Moments x = start;
  FirstLawLedger& l = res.ledger;
  auto fill = [&](double t) {
    const double w = stroke.omega(t);
    l.energy_E = w * x.n;
    l.passive_energy_Epas = w * passive_occupation(x);
    l.ergotropy_script_W = l.energy_E - l.passive_energy_Epas;
    l.entropy_S = entropy(x);
  };
  fill(0.0);
  const double e0 = l.energy_E;
  auto sample = [&](double t) {
    res.times.push_back(t);
    res.samples.push_back(x);
  };
  if (sample_every > 0) sample(0.0);

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const Moments k1 = derivative(stroke, x, t);
    const Moments k2 = derivative(stroke, axpy(x, 0.5 * h, k1), t + 0.5 * h);
    const Moments k3 = derivative(stroke, axpy(x, 0.5 * h, k2), t + 0.5 * h);
    const Moments k4 = derivative(stroke, axpy(x, h, k3), t + h);
    Moments y{x.n + h / 6.0 * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n),
              x.m + h / 6.0 * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m)};

    const double w0 = stroke.omega(t), w1 = stroke.omega(t + h);
    const double wbar = 0.5 * (w0 + w1);
    const double p0 = passive_occupation(x), p1 = passive_occupation(y);
    const double de_d = (y.n - x.n) * wbar;
    const double dw = 0.5 * (x.n + y.n) * (w1 - w0);
    const double depas = (p1 - p0) * wbar;
    const double pas_work = 0.5 * (p0 + p1) * (w1 - w0);
    const double ergo0 = w0 * (x.n - p0), ergo1 = w1 * (y.n - p1);
    l.E_d += de_d;
    l.work_W += dw;
    l.dEpas_d += depas;
    l.dErgo_d = l.E_d - l.dEpas_d;
    l.dErgo_d_check += (ergo1 - ergo0) - (dw - pas_work);
    x = y;
    fill(t + h);
    if (sample_every > 0 && ((k + 1) % sample_every == 0 || k + 1 == steps)) sample(t + h);
  }
  res.final_state = x;
  res.firstlaw_residual = std::abs((l.energy_E - e0) - (l.E_d + l.work_W));
  const Moments d = derivative(stroke, x, total);
  res.stationarity = std::max(std::abs(d.n), std::abs(d.m));
  return res;
}

}  // namespace qthermo::gaussian
