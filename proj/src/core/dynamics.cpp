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


#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <Eigen/SparseLU>

#include "core/linalg.hpp"
#include "core/passivity.hpp"

namespace qthermo {

namespace {

using Triplets = std::vector<Eigen::Triplet<Complex>>;

double spectral_norm(const SparseMatrix& m) {
  const Matrix d = Matrix(m);
  if (d.size() == 0) return 0.0;
  const RealVector ev = linalg::eigvalsh(d.adjoint() * d);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

// Appends scale * kron(x, y) in column-stacked ordering.
void add_kron(Triplets& out, const SparseMatrix& x, const SparseMatrix& y, Complex scale) {
  const Eigen::Index d = y.rows();
  for (Eigen::Index jx = 0; jx < x.outerSize(); ++jx)
    for (SparseMatrix::InnerIterator itx(x, jx); itx; ++itx)
      for (Eigen::Index jy = 0; jy < y.outerSize(); ++jy)
        for (SparseMatrix::InnerIterator ity(y, jy); ity; ++ity)
          out.emplace_back(itx.row() * d + ity.row(), itx.col() * d + ity.col(),
                           scale * itx.value() * ity.value());
}

std::function<double(double)> constant_fn(double v) {
  return [v](double) { return v; };
}

struct BathClock {
  HamiltonianSchedule schedule;
  BathSpec bath;

  double nbar(double t) const {
    if (!bath.driven()) return bath.nbar;
    return fock::bose_occupation(schedule.scale(t), bath.temperature);
  }
};

Generator make_thermal(HamiltonianSchedule schedule, BathSpec bath, Frame frame) {
  require(std::isfinite(bath.kappa) && bath.kappa > 0.0, "kappa must be positive");
  require(bath.driven() || (std::isfinite(bath.nbar) && bath.nbar >= 0.0),
          "thermal occupation must be finite and >= 0");
  bath.r = 0.0;
  const HilbertDim dim = schedule.dim();
  const Operator a = fock::annihilation(dim);
  const Operator ad = fock::creation(dim);
  auto clock = std::make_shared<const BathClock>(BathClock{schedule, bath});
  const double kappa = bath.kappa;
  std::vector<Dissipator> terms;
  terms.push_back({a, ad, [clock, kappa](double t) { return kappa * (clock->nbar(t) + 1.0); }});
  if (bath.driven() || bath.nbar > 0.0)
    terms.push_back({ad, a, [clock, kappa](double t) { return kappa * clock->nbar(t); }});
  return Generator(std::move(schedule), std::move(terms), GeneratorKind::thermal, bath, frame);
}

Generator make_squeezed(HamiltonianSchedule schedule, BathSpec bath, SqueezedForm form,
                        Frame frame) {
  require(std::isfinite(bath.kappa) && bath.kappa > 0.0, "kappa must be positive");
  require(bath.driven() || (std::isfinite(bath.nbar) && bath.nbar >= 0.0),
          "thermal occupation must be finite and >= 0");
  require(std::isfinite(bath.r), "squeezing parameter must be finite");
  const HilbertDim dim = schedule.dim();
  auto clock = std::make_shared<const BathClock>(BathClock{schedule, bath});
  const double kappa = bath.kappa;
  const double r = bath.r;
  std::vector<Dissipator> terms;
  if (form == SqueezedForm::jump_pair) {
    const Operator b = squeezed_mode(r, dim);
    const Operator bd = b.adjoint();
    terms.push_back({b, bd, [clock, kappa](double t) { return kappa * (clock->nbar(t) + 1.0); }});
    terms.push_back({bd, b, [clock, kappa](double t) { return kappa * clock->nbar(t); }});
  } else {
    const Operator a = fock::annihilation(dim);
    const Operator ad = fock::creation(dim);
    auto n_of = [clock, r](double t) { return squeezed_N(clock->nbar(t), r); };
    auto m_of = [clock, r](double t) { return squeezed_M(clock->nbar(t), r); };
    terms.push_back({a, ad, [n_of, kappa](double t) { return kappa * (n_of(t) + 1.0); }});
    terms.push_back({ad, a, [n_of, kappa](double t) { return kappa * n_of(t); }});
    terms.push_back({a, a, [m_of, kappa](double t) { return -kappa * m_of(t); }});
    terms.push_back({ad, ad, [m_of, kappa](double t) { return -kappa * m_of(t); }});
  }
  return Generator(std::move(schedule), std::move(terms), GeneratorKind::squeezed, bath, frame);
}

}  // namespace

Generator::Generator(HamiltonianSchedule hamiltonian, std::vector<Dissipator> terms,
                     GeneratorKind kind, BathSpec bath, Frame frame)
    : h_(std::move(hamiltonian)), terms_(std::move(terms)), kind_(kind), bath_(bath),
      frame_(frame) {
  for (const auto& d : terms_) {
    require(d.A.dim() == h_.dim() && d.B.dim() == h_.dim(),
            "dissipator dimension does not match the Hamiltonian");
    require(static_cast<bool>(d.coefficient), "dissipator needs a coefficient");
  }
  compile();
}

Generator Generator::from_jumps(HamiltonianSchedule hamiltonian, const std::vector<JumpTerm>& jumps,
                                Frame frame) {
  std::vector<Dissipator> terms;
  for (const auto& j : jumps) {
    require(std::isfinite(j.rate) && j.rate >= 0.0, "jump rate must be finite and >= 0");
    terms.push_back({j.op, j.op.adjoint(), constant_fn(0.5 * j.rate)});
  }
  return Generator(std::move(hamiltonian), std::move(terms), GeneratorKind::custom, {}, frame);
}

void Generator::compile() {
  compiled_.clear();
  for (const auto& d : terms_) {
    Compiled c{linalg::to_sparse(d.A.matrix()), linalg::to_sparse(d.B.matrix()), {}};
    c.ba = (c.b * c.a).pruned();
    compiled_.push_back(std::move(c));
  }
  Matrix h = h_.base().matrix();
  if (twist_) h = twist_->adjoint() * h * *twist_;
  h_dyn_base_ = linalg::to_sparse(h);
}

double Generator::nbar_at(double t) const {
  if (!bath_.driven()) return bath_.nbar;
  return fock::bose_occupation(h_.scale(t), bath_.temperature);
}

double Generator::coefficient_N(double t) const { return squeezed_N(nbar_at(t), bath_.r); }
double Generator::coefficient_M(double t) const { return squeezed_M(nbar_at(t), bath_.r); }

std::vector<JumpTerm> Generator::jumps_at(double t) const {
  std::vector<JumpTerm> out;
  for (const auto& d : terms_) {
    if (linalg::max_abs(d.B.matrix() - d.A.matrix().adjoint()) > 1e-12)
      fail(ErrorCode::invalid_argument, "dissipator is not of single-channel Lindblad form");
    out.push_back({d.A, 2.0 * d.coefficient(t)});
  }
  return out;
}

Matrix Generator::apply(const Matrix& rho, double t) const {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const double c = terms_[k].coefficient(t);
    if (c == 0.0) continue;
    const Compiled& m = compiled_[k];
    const Matrix a_rho = m.a * rho;
    out.noalias() += (2.0 * c) * (a_rho * m.b);
    out.noalias() -= c * (m.ba * rho);
    out.noalias() -= c * (rho * m.ba);
  }
  if (frame_ == Frame::lab) {
    const Complex f(0.0, -h_.scale(t));
    out.noalias() += f * (h_dyn_base_ * rho);
    out.noalias() -= f * (rho * h_dyn_base_);
  }
  return out;
}

Operator Generator::apply(const DensityMatrix& rho, double t) const {
  require(rho.dim() == dim(), "state and generator dimensions differ");
  return Operator(dim(), apply(rho.matrix(), t));
}

SparseMatrix Generator::superoperator(double t) const {
  const Eigen::Index d = dim().value();
  const SparseMatrix id = sparse_identity(d);
  Triplets trip;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const double c = terms_[k].coefficient(t);
    if (c == 0.0) continue;
    const Compiled& m = compiled_[k];
    add_kron(trip, SparseMatrix(m.b.transpose()), m.a, 2.0 * c);
    add_kron(trip, id, m.ba, -c);
    add_kron(trip, SparseMatrix(m.ba.transpose()), id, -c);
  }
  if (frame_ == Frame::lab) {
    const Complex f(0.0, -h_.scale(t));
    add_kron(trip, id, h_dyn_base_, f);
    add_kron(trip, SparseMatrix(h_dyn_base_.transpose()), id, -f);
  }
  SparseMatrix s(d * d, d * d);
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

double Generator::stiffness(double t0, double t1) const {
  const double ts[] = {t0, 0.5 * (t0 + t1), t1};
  double total = 0.0;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    double c = 0.0;
    for (double t : ts) c = std::max(c, std::abs(terms_[k].coefficient(t)));
    if (c == 0.0) continue;
    const Compiled& m = compiled_[k];
    total += 2.0 * c * (spectral_norm(m.ba) + spectral_norm(m.a) * spectral_norm(m.b));
  }
  if (frame_ == Frame::lab) {
    double f = 0.0;
    for (double t : ts) f = std::max(f, std::abs(h_.scale(t)));
    total += 2.0 * f * spectral_norm(h_dyn_base_);
  }
  return total;
}

Generator Generator::with_frame(Frame frame) const {
  Generator g = *this;
  g.frame_ = frame;
  return g;
}

Generator Generator::conjugated(const Operator& u) const {
  require(u.dim() == dim(), "unitary and generator dimensions differ");
  const Matrix& um = u.matrix();
  std::vector<Dissipator> terms;
  for (const auto& d : terms_)
    terms.push_back({Operator(dim(), um.adjoint() * d.A.matrix() * um),
                     Operator(dim(), um.adjoint() * d.B.matrix() * um), d.coefficient});
  Generator g(h_, std::move(terms), GeneratorKind::custom, bath_, frame_);
  g.twist_ = twist_ ? Matrix(*twist_ * um) : um;
  g.compile();
  return g;
}

double squeezed_N(double nbar, double r) {
  const double c = std::cosh(r), s = std::sinh(r);
  return nbar * (c * c + s * s) + s * s;
}

double squeezed_M(double nbar, double r) {
  return -std::cosh(r) * std::sinh(r) * (2.0 * nbar + 1.0);
}

Operator squeezed_mode(double r, HilbertDim dim) {
  const Matrix a = fock::annihilation(dim).matrix();
  return Operator(dim, std::cosh(r) * a + std::sinh(r) * a.adjoint());
}

Generator thermal_generator(double omega, double kappa, double nbar, HilbertDim dim, Frame frame) {
  BathSpec bath;
  bath.kappa = kappa;
  bath.nbar = nbar;
  return make_thermal(HamiltonianSchedule::oscillator(omega, dim), bath, frame);
}

Generator squeezed_generator(double omega, double kappa, double nbar, double r, HilbertDim dim,
                             SqueezedForm form, Frame frame) {
  BathSpec bath;
  bath.kappa = kappa;
  bath.nbar = nbar;
  bath.r = r;
  return make_squeezed(HamiltonianSchedule::oscillator(omega, dim), bath, form, frame);
}

Generator thermal_generator_driven(HamiltonianSchedule schedule, double kappa, double temperature,
                                   Frame frame) {
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
  BathSpec bath;
  bath.kappa = kappa;
  bath.temperature = temperature;
  return make_thermal(std::move(schedule), bath, frame);
}

Generator squeezed_generator_driven(HamiltonianSchedule schedule, double kappa, double temperature,
                                    double r, Frame frame) {
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
  BathSpec bath;
  bath.kappa = kappa;
  bath.temperature = temperature;
  bath.r = r;
  return make_squeezed(std::move(schedule), bath, SqueezedForm::jump_pair, frame);
}

Generator thermal_counterpart(const Generator& gen) {
  require(gen.kind() != GeneratorKind::custom, "thermal counterpart needs a bath generator");
  return make_thermal(gen.hamiltonian(), gen.bath(), gen.frame());
}

Generator conjugate_generator(const Generator& gen, const Operator& u) {
  const double err = u.unitarity_error();
  if (err > Tolerances::unitary) {
    std::ostringstream os;
    os << "operator is not unitary (max |U^dagger U - 1| = " << err << ")";
    fail(ErrorCode::not_unitary, os.str());
  }
  return gen.conjugated(u);
}

namespace {

// Upper bound on tau * stiffness for one integrator step.
constexpr double kStepStiffness = 0.4;

void check_step_size(const Generator& gen, double h, double t0, double t1) {
  if (gen.kind() == GeneratorKind::custom) return;
  double scale = 0.0;
  for (double t : {t0, t1}) {
    const double nbar = gen.nbar_at(t);
    const double rates = std::max({squeezed_N(nbar, gen.bath().r),
                                   std::abs(squeezed_M(nbar, gen.bath().r)), nbar + 1.0});
    scale = std::max(scale, gen.bath().kappa * rates);
    if (gen.frame() == Frame::lab) scale = std::max(scale, std::abs(gen.hamiltonian().scale(t)));
  }
  if (h > 0.1 / scale * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << h << " does not resolve the fastest rate; use dt <= " << 0.1 / scale;
    fail(ErrorCode::invalid_argument, os.str());
  }
}

}  // namespace

Trajectory evolve(const Generator& gen, const DensityMatrix& rho0, double t_final, double dt,
                  const EvolveOptions& options) {
  require(rho0.dim() == gen.dim(), "state and generator dimensions differ");
  require(std::isfinite(t_final) && t_final >= 0.0, "final time must be finite and >= 0");
  require(std::isfinite(dt) && dt > 0.0, "time step must be positive");
  require(options.sample_every >= 1, "sample_every must be at least 1");

  const double t0 = options.t0;
  const long steps = t_final == 0.0 ? 0 : static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = steps == 0 ? 0.0 : t_final / static_cast<double>(steps);
  if (steps > 0) check_step_size(gen, h, t0, t0 + t_final);
  const int sub = steps == 0
                      ? 1
                      : std::max(1, static_cast<int>(std::ceil(h * gen.stiffness(t0, t0 + t_final) / kStepStiffness)));
  const double tau = h / sub;

  const auto& sched = gen.hamiltonian();
  Matrix rho = rho0.matrix();
  LedgerAccumulator acc(rho, sched.at(t0), sched.spectrum(t0));

  Trajectory traj;
  traj.substeps = sub;
  traj.initial_energy = acc.initial().energy;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.emplace_back(rho0.dim(), rho);
    traj.ledgers.push_back(acc.ledger());
    traj.trace_err.push_back(std::abs(rho.trace() - Complex(1.0, 0.0)));
    traj.min_eig.push_back(acc.current().populations_desc.back());
  };
  record(t0);

  for (long k = 1; k <= steps; ++k) {
    for (int s = 0; s < sub; ++s) {
      const double t = t0 + (static_cast<double>(k - 1) * sub + s) * tau;
      const Matrix k1 = gen.apply(rho, t);
      const Matrix k2 = gen.apply(rho + (0.5 * tau) * k1, t + 0.5 * tau);
      const Matrix k3 = gen.apply(rho + (0.5 * tau) * k2, t + 0.5 * tau);
      const Matrix k4 = gen.apply(rho + tau * k3, t + tau);
      rho += (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rho = linalg::hermitian_part(rho);
      const double t_next = t + tau;
      acc.step(rho, sched.at(t_next), sched.spectrum(t_next));
      const double min_eig = acc.current().populations_desc.back();
      if (options.check_positivity && min_eig < -Tolerances::psd) {
        std::ostringstream os;
        os << "state lost positivity at t = " << t_next << " (min eigenvalue " << min_eig
           << "); reduce dt or raise the cutoff";
        fail(ErrorCode::positivity_loss, os.str());
      }
    }
    if (k % options.sample_every == 0 || k == steps)
      record(t0 + static_cast<double>(k) * h);
  }
  traj.ledger = acc.ledger();
  traj.firstlaw_residual = acc.firstlaw_residual();
  traj.split_residual = acc.split_residual();
  return traj;
}

DensityMatrix steady_state(const Generator& gen, double t_ref) {
  const Eigen::Index d = gen.dim().value();
  SparseMatrix m = gen.superoperator(t_ref);
  // Replace the (0,0) row with the trace functional.
  m.prune([](Eigen::Index row, Eigen::Index, const Complex&) { return row != 0; });
  {
    Triplets trace_row;
    for (Eigen::Index k = 0; k < d; ++k) trace_row.emplace_back(0, k * d + k, Complex(1.0, 0.0));
    SparseMatrix tr(d * d, d * d);
    tr.setFromTriplets(trace_row.begin(), trace_row.end());
    m += tr;
  }
  m.makeCompressed();

  Eigen::SparseLU<SparseMatrix> lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success)
    fail(ErrorCode::non_unique_steady_state, "generator has no unique stationary state (singular system)");

  // Smallest singular value of the bordered system by inverse iteration.
  Vector x = Vector::Ones(d * d).normalized();
  double inv_norm = 0.0;
  for (int it = 0; it < 12; ++it) {
    Vector y = lu.solve(x);
    Vector z = lu.adjoint().solve(y);
    inv_norm = std::sqrt(z.norm());
    if (!std::isfinite(inv_norm) || z.norm() == 0.0) break;
    x = z / z.norm();
  }
  if (!std::isfinite(inv_norm) || 1.0 / inv_norm < 1e-6) {
    std::ostringstream os;
    os << "generator has no unique stationary state (smallest singular value ~ "
       << (std::isfinite(inv_norm) ? 1.0 / inv_norm : 0.0) << ")";
    fail(ErrorCode::non_unique_steady_state, os.str());
  }

  Vector rhs = Vector::Zero(d * d);
  rhs(0) = 1.0;
  Vector v = lu.solve(rhs);
  v += lu.solve(rhs - m * v);
  Matrix rho = Eigen::Map<Matrix>(v.data(), d, d);
  rho = linalg::hermitian_part(rho);
  rho /= rho.trace();
  const double residual = linalg::max_abs(gen.apply(rho, t_ref));
  if (residual > 1e-10) {
    std::ostringstream os;
    os << "stationary solve residual " << residual << " exceeds 1e-10";
    fail(ErrorCode::non_unique_steady_state, os.str());
  }
  return DensityMatrix(gen.dim(), std::move(rho));
}

}  // namespace qthermo
