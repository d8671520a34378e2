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

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "core/first_law.hpp"
#include "core/fock.hpp"
#include "core/hamiltonian.hpp"

namespace qthermo {

/// Interaction frame drops the commutator with H; lab frame keeps it.
/// Energies are measured against H(t) in both.
enum class Frame { interaction, lab };

enum class GeneratorKind { thermal, squeezed, custom };

/// Lindblad channel (gamma/2)(2 L rho L^dagger - L^dagger L rho - rho L^dagger L).
struct JumpTerm {
  Operator op;
  double rate;
};

/// coefficient(t) * (2 A rho B - B A rho - rho B A).
struct Dissipator {
  Operator A;
  Operator B;
  std::function<double(double)> coefficient;
};

/// Bath parameters behind a thermal or squeezed generator. A finite
/// temperature makes nbar follow the instantaneous frequency; otherwise the
/// fixed nbar applies at all times.
struct BathSpec {
  double kappa = 1.0;
  double temperature = std::numeric_limits<double>::quiet_NaN();
  double nbar = 0.0;
  double r = 0.0;

  bool driven() const { return !std::isnan(temperature); }
};

class Generator {
 public:
  Generator(HamiltonianSchedule hamiltonian, std::vector<Dissipator> terms,
            GeneratorKind kind = GeneratorKind::custom, BathSpec bath = {},
            Frame frame = Frame::interaction);

  static Generator from_jumps(HamiltonianSchedule hamiltonian, const std::vector<JumpTerm>& jumps,
                              Frame frame = Frame::interaction);

  HilbertDim dim() const noexcept { return h_.dim(); }
  const HamiltonianSchedule& hamiltonian() const noexcept { return h_; }
  const std::vector<Dissipator>& dissipators() const noexcept { return terms_; }
  GeneratorKind kind() const noexcept { return kind_; }
  const BathSpec& bath() const noexcept { return bath_; }
  Frame frame() const noexcept { return frame_; }

  /// Thermal occupation of the bath at time t (kind thermal or squeezed).
  double nbar_at(double t) const;
  /// Squeezed-bath coefficients N and M at time t.
  double coefficient_N(double t) const;
  double coefficient_M(double t) const;

  /// Lindblad channels at time t. Requires every dissipator to have B = A^dagger.
  std::vector<JumpTerm> jumps_at(double t) const;

  Matrix apply(const Matrix& rho, double t) const;
  Operator apply(const DensityMatrix& rho, double t) const;

  /// Column-stacked superoperator: vec(L rho) = S vec(rho).
  SparseMatrix superoperator(double t) const;

  /// Upper estimate of the generator's spectral radius over [t0, t1].
  double stiffness(double t0, double t1) const;

  Generator with_frame(Frame frame) const;

  /// Dynamics-side conjugation: each A, B goes to U^dagger A U and the
  /// commutator uses U^dagger H U. The energy Hamiltonian is unchanged.
  Generator conjugated(const Operator& u) const;

 private:
  struct Compiled {
    SparseMatrix a, b, ba;
  };
  void compile();

  HamiltonianSchedule h_;
  std::vector<Dissipator> terms_;
  GeneratorKind kind_;
  BathSpec bath_;
  Frame frame_;
  std::optional<Matrix> twist_;  // U for the commutator Hamiltonian
  std::vector<Compiled> compiled_;
  SparseMatrix h_dyn_base_;
};

/// Squeezed-bath coefficients for a given occupation and squeezing.
double squeezed_N(double nbar, double r);
double squeezed_M(double nbar, double r);

/// b = a cosh r + a^dagger sinh r.
Operator squeezed_mode(double r, HilbertDim dim);

Generator thermal_generator(double omega, double kappa, double nbar, HilbertDim dim,
                            Frame frame = Frame::interaction);

enum class SqueezedForm { jump_pair, four_dissipator };

Generator squeezed_generator(double omega, double kappa, double nbar, double r, HilbertDim dim,
                             SqueezedForm form = SqueezedForm::jump_pair,
                             Frame frame = Frame::interaction);

/// Generators whose nbar follows the schedule's instantaneous frequency at
/// the given bath temperature.
Generator thermal_generator_driven(HamiltonianSchedule schedule, double kappa,
                                   double temperature, Frame frame = Frame::interaction);
Generator squeezed_generator_driven(HamiltonianSchedule schedule, double kappa,
                                    double temperature, double r,
                                    Frame frame = Frame::interaction);

/// The thermal generator with the same schedule, kappa and occupation.
Generator thermal_counterpart(const Generator& gen);

/// Generator whose jumps are U^dagger L U. Throws NotUnitary.
Generator conjugate_generator(const Generator& gen, const Operator& u);

struct EvolveOptions {
  /// Record a snapshot every this many output steps (the final time is always kept).
  int sample_every = 1;
  /// Fail with PositivityLoss below -Tolerances::psd.
  bool check_positivity = true;
  /// Start time of the generator clock.
  double t0 = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<FirstLawLedger> ledgers;
  std::vector<double> trace_err;
  std::vector<double> min_eig;
  FirstLawLedger ledger;        // at the final time
  double firstlaw_residual = 0.0;
  double split_residual = 0.0;
  double initial_energy = 0.0;
  int substeps = 1;             // integrator steps per output step

  const DensityMatrix& final_state() const { return states.back(); }
};

/// Fixed-step RK4 on the output grid dt, subdivided when needed for
/// stability. The first-law ledger advances with every integrator step.
Trajectory evolve(const Generator& gen, const DensityMatrix& rho0, double t_final, double dt,
                  const EvolveOptions& options = {});

/// Unique stationary state of the frozen generator at t_ref.
DensityMatrix steady_state(const Generator& gen, double t_ref = 0.0);

}  // namespace qthermo
