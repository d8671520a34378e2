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


#include <doctest.h>

#include <cmath>
#include <random>

#include "core/ledger.hpp"
#include "core/passivity.hpp"
#include "helpers.hpp"

using namespace qthermo;

TEST_SUITE("ledger") {

TEST_CASE("closed constant system has an empty ledger") {
  const HilbertDim d(20);
  const Generator g(HamiltonianSchedule::oscillator(1.0, d), {}, GeneratorKind::custom, {}, Frame::lab);
  const Trajectory tr = evolve(g, fock::coherent_state({0.8, 0.0}, d), 1.0, 0.002, {50});
  const FirstLawLedger& l = tr.ledger;
  CHECK(std::abs(l.E_d) < 1e-10);
  CHECK(std::abs(l.work_W) < 1e-14);
  CHECK(std::abs(l.dEpas_d) < 1e-9);
  CHECK(std::abs(l.dErgo_d) < 1e-9);
}

TEST_CASE("coherent decay dissipates ergotropy only") {
  const HilbertDim d(40);
  const double omega = 10.0;
  const Generator g = thermal_generator(omega, 1.0, 0.0, d);
  const Trajectory tr = evolve(g, fock::coherent_state({1.0, 0.0}, d), 2.0, 0.01, {10});
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double expected = omega * (std::exp(-2.0 * tr.times[k]) - 1.0);
    CHECK(tr.ledgers[k].dErgo_d == doctest::Approx(expected).epsilon(1e-7));
    CHECK(std::abs(tr.ledgers[k].dEpas_d) < 1e-8);
    CHECK(std::abs(tr.ledgers[k].entropy_S) < 1e-8);
  }
  CHECK(tr.firstlaw_residual < firstlaw_tolerance(tr.ledger.E_d, omega));
  CHECK(tr.split_residual < firstlaw_tolerance(tr.ledger.E_d, omega));
}

TEST_CASE("squeezed relaxation charges both passive energy and ergotropy") {
  const HilbertDim d(40);
  const Generator g = squeezed_generator(10.0, 1.0, 0.0, 0.4, d);
  const Trajectory tr = evolve(g, fock::thermal_state(0.0, d), 3.0, 0.01, {5});
  double max_pas = 0.0, max_ergo = 0.0;
  for (const auto& l : tr.ledgers) {
    CHECK(l.dEpas_d >= -1e-10);
    CHECK(l.dErgo_d >= -1e-10);
    max_pas = std::max(max_pas, l.dEpas_d);
    max_ergo = std::max(max_ergo, l.dErgo_d);
  }
  CHECK(max_pas > 0.1);
  CHECK(max_ergo > 0.1);
}

TEST_CASE("first law with a driven frequency") {
  const HilbertDim d(30);
  const auto sched = HamiltonianSchedule::oscillator_ramp(2.0, 1.0, 0.0, 5.0, d);
  const Generator g = thermal_generator_driven(sched, 1.0, 1.0);
  const Trajectory tr = evolve(g, fock::coherent_state({1.0, 0.0}, d), 5.0, 0.01, {50});
  const FirstLawLedger& l = tr.ledger;
  CHECK(l.work_W < 0.0);
  CHECK(std::abs((l.energy_E - tr.initial_energy) - (l.E_d + l.work_W)) < 1e-10);
  CHECK(l.dErgo_d == doctest::Approx(l.dErgo_d_check).epsilon(1e-8));
  CHECK(tr.split_residual < firstlaw_tolerance(l.E_d, 2.0));
}

TEST_CASE("re-derived ledger matches the co-integrated one") {
  const HilbertDim d(20);
  const Generator g = squeezed_generator(2.0, 1.0, 0.2, 0.3, d);
  const Trajectory tr = evolve(g, fock::coherent_state({0.5, 0.2}, d), 2.0, 0.01);
  const FirstLawLedger re = ledger::accumulate_ledger(tr, g);
  CHECK(re.E_d == doctest::Approx(tr.ledger.E_d).epsilon(1e-10));
  CHECK(re.energy_E == doctest::Approx(tr.ledger.energy_E).epsilon(1e-12));
  CHECK(re.dEpas_d == doctest::Approx(tr.ledger.dEpas_d).epsilon(1e-4));
}

TEST_CASE("constant-Hamiltonian entropy production") {
  const HilbertDim d(40);
  const DensityMatrix ss = fock::thermal_state(1.0, d);
  CHECK(ledger::spohn_sigma_constH(ss, ss) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(ledger::spohn_sigma_constH(fock::coherent_state({1.0, 0.0}, d), fock::thermal_state(0.0, d))));
  CHECK(ledger::spohn_sigma_constH(fock::thermal_state(0.5, d), ss) > 0.0);
}

TEST_CASE("entropy production series") {
  const HilbertDim d(30);
  const double nb = 0.6;
  const Generator g = thermal_generator(1.0, 1.0, nb, d);
  const DensityMatrix ss = fock::thermal_state(nb, d);
  const DensityMatrix rho0 = fock::coherent_state({0.7, 0.3}, d);
  const Trajectory tr = evolve(g, rho0, 3.0, 0.01, {10});
  const auto sigma = ledger::spohn_sigma_series(tr, g);
  CHECK(sigma.front() == 0.0);
  const double d0 = passivity::relative_entropy(rho0, ss);
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const double expected = d0 - passivity::relative_entropy(tr.states[k], ss);
    CHECK(sigma[k] == doctest::Approx(expected).epsilon(1e-9));
    if (k) CHECK(sigma[k] >= sigma[k - 1] - 1e-12);
  }
  CHECK(ledger::spohn_sigma_timedep(tr, g) == doctest::Approx(sigma.back()));
}

TEST_CASE("entropy production vanishes for a frozen steady start") {
  const HilbertDim d(20);
  const Generator g = squeezed_generator(1.0, 1.0, 0.5, 0.2, d);
  const Trajectory tr = evolve(g, steady_state(g), 1.0, 0.01);
  for (double s : ledger::spohn_sigma_series(tr, g)) CHECK(std::abs(s) < 1e-9);
}

TEST_CASE("pure steady state makes entropy production infinite") {
  const HilbertDim d(30);
  const Generator g = squeezed_generator(1.0, 1.0, 0.0, 0.4, d);
  const Trajectory tr = evolve(g, fock::thermal_state(0.0, d), 0.5, 0.01);
  const auto sigma = ledger::spohn_sigma_series(tr, g);
  CHECK(sigma.front() == 0.0);
  CHECK(std::isinf(sigma.back()));
}

TEST_CASE("log of the steady state") {
  const int n = 50;
  const HilbertDim d(n);
  std::mt19937_64 rng(4);
  const Generator g = squeezed_generator(1.0, 1.0, 0.5, 0.3, d);
  const auto ls = ledger::log_steady_state(g, 0.0);
  // ln(S rho_th S^dagger) = S ln(rho_th) S^dagger with the truncated geometric law.
  const double q = 0.5 / 1.5;
  const double log_z = std::log((1.0 - std::pow(q, n)) / (1.0 - q));
  Matrix ln_th = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) ln_th(k, k) = k * std::log(q) - log_z;
  const Matrix s = fock::squeeze_operator(0.3, d).matrix();
  const Matrix ln = s * ln_th * s.adjoint();
  for (int k = 0; k < 3; ++k) {
    const Matrix x = testing::random_low_state(50, 5, rng).matrix();
    CHECK(ls.trace(x) == doctest::Approx((x * ln).trace().real()).epsilon(1e-8));
  }
  CHECK(ls.unsupported_weight(fock::thermal_state(0.0, d).matrix()) == 0.0);
}

TEST_CASE("non-thermal entropy production") {
  const HilbertDim d(40);
  const double nb = 0.4, r = 0.3;
  const Operator s = fock::squeeze_operator(r, d);
  const DensityMatrix th = fock::thermal_state(nb, d);
  CHECK(ledger::sigma_nonthermal(fock::squeezed_thermal_state(nb, r, d), s, th) ==
        doctest::Approx(0.0).epsilon(1e-9));
  const HilbertDim small(25);
  const DensityMatrix rho0 = fock::thermal_state(0.8, small);
  const DensityMatrix th_small = fock::thermal_state(nb, small);
  const double expected = ledger::spohn_sigma_constH(rho0, th_small);
  CHECK(std::isfinite(expected));
  CHECK(ledger::sigma_nonthermal(rho0, Operator::identity(small), th_small) == doctest::Approx(expected));
  CHECK(std::isinf(ledger::sigma_nonthermal(fock::thermal_state(0.0, d), fock::squeeze_operator(0.4, d),
                                            fock::thermal_state(0.0, d))));
  CHECK_THROWS_AS(ledger::sigma_nonthermal(rho0, 2.0 * Operator::identity(small), th_small), Error);
}

TEST_CASE("alternative path") {
  const HilbertDim d(50);
  const Generator g = thermal_generator(1.0, 1.0, 0.4, d);
  SUBCASE("passive start follows the direct path") {
    const DensityMatrix rho0 = fock::thermal_state(1.2, d);
    const Trajectory tr = evolve(g, rho0, 2.0, 0.01);
    CHECK(ledger::alt_path_energy(g, rho0, 2.0, 0.01).E_d_prime == doctest::Approx(tr.ledger.E_d).epsilon(1e-12));
  }
  SUBCASE("constant H gives the passive-energy change after relaxation") {
    const DensityMatrix rho0 = fock::coherent_state({1.0, 0.0}, d);
    const Trajectory tr = evolve(g, rho0, 12.0, 0.02, {100});
    const double alt = ledger::alt_path_energy(g, rho0, 12.0, 0.02, {100}).E_d_prime;
    CHECK(alt == doctest::Approx(tr.ledger.dEpas_d).epsilon(1e-8));
  }
  SUBCASE("caller-supplied passive generator") {
    const DensityMatrix rho0 = fock::coherent_state({0.7, 0.0}, d);
    const double ref = ledger::alt_path_energy(g, rho0, 1.0, 0.01).E_d_prime;
    CHECK(ledger::alt_path_energy_passive(g, rho0, 1.0, 0.01).E_d_prime == doctest::Approx(ref).epsilon(1e-14));
    const Generator custom = Generator::from_jumps(g.hamiltonian(), g.jumps_at(0.0));
    CHECK(ledger::alt_path_energy_passive(custom, rho0, 1.0, 0.01).E_d_prime == doctest::Approx(ref).epsilon(1e-10));
  }
  SUBCASE("needs a thermal generator") {
    CHECK_THROWS_AS(ledger::alt_path_energy(squeezed_generator(1.0, 1.0, 0.4, 0.2, d),
                                            fock::thermal_state(0.4, d), 1.0, 0.01),
                    Error);
  }
}

TEST_CASE("quasi-static thermal stroke saturates the entropy bound") {
  const HilbertDim d(20);
  const double temp = 1.0;
  const auto sched = HamiltonianSchedule::oscillator_ramp(2.0, 1.5, 0.0, 100.0, d);
  const Generator g = thermal_generator_driven(sched, 1.0, temp);
  const DensityMatrix rho0 = fock::thermal_state(fock::bose_occupation(2.0, temp), d);
  const Trajectory tr = evolve(g, rho0, 100.0, 0.02, {500});
  const double alt = ledger::alt_path_energy(g, rho0, 100.0, 0.02, {500}).E_d_prime;
  const double ds = tr.ledger.entropy_S - tr.ledgers.front().entropy_S;
  CHECK(alt == doctest::Approx(temp * ds).epsilon(5e-3));
}

TEST_CASE("entropy bound report") {
  const HilbertDim d(40);
  SUBCASE("passive start gives equal slacks") {
    const Generator g = thermal_generator(1.0, 1.0, 0.5, d);
    const Trajectory tr = evolve(g, fock::thermal_state(1.5, d), 2.0, 0.01);
    const auto rep = ledger::entropy_bound_report(tr, g, fock::temperature_for(1.0, 0.5), Operator::identity(d), 0.01);
    CHECK(rep.slack_alt == doctest::Approx(rep.slack_direct).epsilon(1e-10));
    CHECK(rep.slack_alt >= -1e-10);
  }
  SUBCASE("coherent decay saturates the passive bound") {
    const double omega = 10.0, temp = 1.0;
    const Generator g = thermal_generator(omega, 1.0, 0.0, d);
    const Trajectory tr = evolve(g, fock::coherent_state({1.0, 0.0}, d), 2.0, 0.01);
    const auto rep = ledger::entropy_bound_report(tr, g, temp, Operator::identity(d), 0.01);
    CHECK(std::abs(rep.delta_S) < 1e-8);
    CHECK(std::abs(rep.bound_alt) < 1e-10);
    CHECK(rep.bound_direct == doctest::Approx(omega * (std::exp(-4.0) - 1.0) / temp).epsilon(1e-7));
    CHECK(rep.alt_is_tighter);
  }
  SUBCASE("squeezed relaxation breaks the direct bound but not the passive one") {
    const double omega = 1.0, nb = 0.5, r = 0.3;
    const double temp = fock::temperature_for(omega, nb);
    const Generator g = squeezed_generator(omega, 1.0, nb, r, d);
    const Trajectory tr = evolve(g, fock::thermal_state(nb, d), 3.0, 0.01);
    const auto rep = ledger::entropy_bound_report(tr, g, temp, fock::squeeze_operator(r, d), 0.01);
    CHECK(rep.slack_alt >= -1e-9);
    CHECK(rep.slack_direct < -0.1);
    CHECK_FALSE(rep.alt_is_tighter);
    CHECK(rep.sigma_spohn > 0.0);
  }
}

}  // TEST_SUITE
