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


#include "core/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/linalg.hpp"
#include "core/passivity.hpp"

namespace qthermo::ledger {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

FirstLawLedger accumulate_ledger(const Trajectory& traj, const Generator& gen) {
  require(!traj.states.empty(), "trajectory is empty");
  require(traj.states.front().dim() == gen.dim(), "trajectory and generator dimensions differ");
  const auto& sched = gen.hamiltonian();
  const double t0 = traj.times.front();
  LedgerAccumulator acc(traj.states.front().matrix(), sched.at(t0), sched.spectrum(t0));
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double t = traj.times[k];
    acc.step(traj.states[k].matrix(), sched.at(t), sched.spectrum(t));
  }
  const double de = acc.current().energy - acc.initial().energy;
  const double tol = firstlaw_tolerance(de, sched.max_scale());
  if (acc.split_residual() > tol) {
    std::ostringstream os;
    os << "dissipative ergotropy change disagrees between evaluations by "
       << acc.split_residual() << " (tolerance " << tol << ")";
    fail(ErrorCode::ledger_inconsistent, os.str());
  }
  return acc.ledger();
}

double spohn_sigma_constH(const DensityMatrix& rho0, const DensityMatrix& rho_ss) {
  return passivity::relative_entropy(rho0, rho_ss);
}

double LogState::trace(const Matrix& x) const {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < logs.size(); ++k) {
    if (std::isinf(logs(k))) continue;
    sum += logs(k) * (vectors.col(k).adjoint() * x * vectors.col(k))(0, 0).real();
  }
  return sum;
}

double LogState::unsupported_weight(const Matrix& rho) const {
  double w = 0.0;
  for (Eigen::Index k = 0; k < logs.size(); ++k)
    if (std::isinf(logs(k)))
      w = std::max(w, (vectors.col(k).adjoint() * rho * vectors.col(k))(0, 0).real());
  return w;
}

LogState log_steady_state(const Generator& gen, double t) {
  const int n = gen.dim().value();
  if (gen.kind() != GeneratorKind::custom) {
    const double nbar = gen.nbar_at(t);
    LogState out{RealVector(n), Matrix::Identity(n, n)};
    if (nbar == 0.0) {
      out.logs.setConstant(-kInf);
      out.logs(0) = 0.0;
    } else {
      const double lq = std::log(nbar / (nbar + 1.0));
      // Normalization of the truncated geometric law.
      const double log_z = std::log(-std::expm1(n * lq)) - std::log(-std::expm1(lq));
      for (int k = 0; k < n; ++k) out.logs(k) = k * lq - log_z;
    }
    if (gen.bath().r != 0.0) out.vectors = fock::squeeze_operator(gen.bath().r, gen.dim()).matrix();
    return out;
  }
  const auto e = linalg::eigh(steady_state(gen, t).matrix());
  LogState out{RealVector(n), e.vectors};
  for (int k = 0; k < n; ++k)
    out.logs(k) = e.values(k) > passivity::kEigFloor ? std::log(e.values(k)) : -kInf;
  return out;
}

std::vector<double> spohn_sigma_series(const Trajectory& traj, const Generator& gen) {
  require(!traj.states.empty(), "trajectory is empty");
  std::vector<double> out(traj.states.size(), 0.0);
  const double s0 = passivity::von_neumann_entropy(traj.states.front());
  const bool constant = gen.hamiltonian().is_constant() && !gen.bath().driven();
  LogState log_prev = log_steady_state(gen, traj.times.front());
  bool infinite = log_prev.unsupported_weight(traj.states.front().matrix()) > passivity::kEigFloor;
  double flux = 0.0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const Matrix& rho = traj.states[k].matrix();
    const Matrix drho = rho - traj.states[k - 1].matrix();
    LogState log_next = constant ? log_prev : log_steady_state(gen, traj.times[k]);
    if (log_next.unsupported_weight(rho) > passivity::kEigFloor) infinite = true;
    flux += 0.5 * (log_prev.trace(drho) + log_next.trace(drho));
    const double sk = passivity::von_neumann_entropy(traj.states[k]);
    out[k] = infinite ? kInf : (sk - s0) + flux;
    log_prev = std::move(log_next);
  }
  return out;
}

double spohn_sigma_timedep(const Trajectory& traj, const Generator& gen) {
  return spohn_sigma_series(traj, gen).back();
}

double sigma_nonthermal(const DensityMatrix& rho0, const Operator& u, const DensityMatrix& pi_ss) {
  require(rho0.dim() == u.dim() && pi_ss.dim() == u.dim(), "dimensions differ");
  if (u.unitarity_error() > Tolerances::unitary)
    fail(ErrorCode::not_unitary, "conjugating operator is not unitary");
  const Matrix& um = u.matrix();
  const DensityMatrix tilde(rho0.dim(), linalg::hermitian_part(um.adjoint() * rho0.matrix() * um));
  return passivity::relative_entropy(tilde, pi_ss);
}

AltPath alt_path_energy(const Generator& gen_thermal, const DensityMatrix& rho0, double t_final,
                        double dt, const EvolveOptions& options) {
  require(gen_thermal.kind() == GeneratorKind::thermal, "alternative path needs a thermal generator");
  return alt_path_energy_passive(gen_thermal, rho0, t_final, dt, options);
}

AltPath alt_path_energy_passive(const Generator& gen_passive, const DensityMatrix& rho0, double t_final,
                                double dt, const EvolveOptions& options) {
  const Operator h0 = gen_passive.hamiltonian().operator_at(options.t0);
  const DensityMatrix pi0 = passivity::passive_decompose(rho0, h0).passive_state;
  Trajectory traj = evolve(gen_passive, pi0, t_final, dt, options);
  const double e = traj.ledger.E_d;
  return AltPath{e, std::move(traj)};
}

EntropyReport entropy_bound_report(const Trajectory& traj, const Generator& gen, double bath_T,
                                   const Operator& u, double dt) {
  require(std::isfinite(bath_T) && bath_T > 0.0, "bath temperature must be positive");
  require(traj.states.size() >= 2, "trajectory needs at least two samples");
  require(u.unitarity_error() <= Tolerances::unitary, "frame operator must be unitary");
  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  const DensityMatrix& rho0 = traj.states.front();
  const DensityMatrix& rho1 = traj.states.back();

  EntropyReport rep;
  rep.delta_S = passivity::von_neumann_entropy(rho1) - passivity::von_neumann_entropy(rho0);
  rep.E_d = traj.ledger.E_d;
  rep.bound_direct = rep.E_d / bath_T;

  const Matrix& um = u.matrix();
  const DensityMatrix tilde0(rho0.dim(), linalg::hermitian_part(um.adjoint() * rho0.matrix() * um));
  const Generator gen_th = gen.kind() == GeneratorKind::thermal ? gen : thermal_counterpart(gen);
  EvolveOptions opts;
  opts.t0 = t0;
  opts.sample_every = 1 << 20;
  const AltPath alt = alt_path_energy(gen_th, tilde0, t1 - t0, dt, opts);
  rep.alt_energy_Edprime = alt.E_d_prime;
  rep.bound_alt = rep.alt_energy_Edprime / bath_T;
  rep.slack_direct = rep.delta_S - rep.bound_direct;
  rep.slack_alt = rep.delta_S - rep.bound_alt;

  const Operator h1 = gen.hamiltonian().operator_at(t1);
  const DensityMatrix pi0 = passivity::passive_decompose(tilde0, h1).passive_state;
  const DensityMatrix pi_ss = passivity::passive_decompose(steady_state(gen_th, t1), h1).passive_state;
  rep.passive_relative_entropy = passivity::relative_entropy(pi0, pi_ss);

  rep.sigma_spohn = spohn_sigma_timedep(traj, gen);
  const double tol = firstlaw_tolerance(rep.E_d, gen.hamiltonian().max_scale()) / bath_T;
  rep.alt_is_tighter = rep.bound_alt >= rep.bound_direct - tol;
  return rep;
}

}  // namespace qthermo::ledger
