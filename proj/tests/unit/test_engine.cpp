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

#include "core/engine.hpp"

using namespace qthermo;
using namespace qthermo::engine;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

double nbar(double u) { return 1.0 / (std::exp(u) - 1.0); }

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("eta_max") {
  CHECK(eta_max(2.0, 2.0, 1.0, 3.0) == doctest::Approx(2.0 / 3.0));
  CHECK(eta_max(0.0, 2.0, 1.0, 3.0) == doctest::Approx(1.0));
  CHECK(eta_max(1.0, 2.0, 1.0, 3.0) == doctest::Approx(5.0 / 6.0));
  CHECK(code_of([] { eta_max(-0.1, 2.0, 1.0, 3.0); }) == ErrorCode::regime_violation);
  CHECK(code_of([] { eta_max(1.0, 0.0, 1.0, 3.0); }) == ErrorCode::regime_violation);
}

TEST_CASE("eta_sigma") {
  CHECK(eta_sigma(2.0, 2.0, 1.0, 4.0) == doctest::Approx(0.75));
  CHECK(eta_sigma(-1.0, 2.0, 1.0, 4.0) > 1.0);
  CHECK(eta_sigma(1.5, 2.0, 1.0, 4.0) == doctest::Approx(eta_max(1.5, 2.0, 1.0, 4.0)));
}

TEST_CASE("combined bound picks the smaller one") {
  CycleReport r;
  r.eta_max = 0.8;
  r.eta_sigma = 1.2;
  CHECK(eta_bound_combined(r) == 0.8);
  r.eta_max = r.eta_sigma = 0.5;
  CHECK(eta_bound_combined(r) == 0.5);
}

TEST_CASE("actual efficiency and regime") {
  auto [e1, r1] = eta_actual(2.0, -1.0, -1.0);
  CHECK(e1 == doctest::Approx(0.5));
  CHECK(r1 == Regime::engine);
  auto [e2, r2] = eta_actual(2.0, 0.5, -2.5);
  CHECK(e2 == 1.0);
  CHECK(r2 == Regime::engine_and_refrigerator);
  auto [e3, r3] = eta_actual(2.0, -2.5, 0.5);
  CHECK(std::isnan(e3));
  CHECK(r3 == Regime::not_engine);
}

TEST_CASE("closed-form Otto") {
  SUBCASE("no squeezing is the textbook Otto cycle") {
    const auto cf = closed_form_otto(1.0, 3.0, 0.5, 1.0, 0.0, 0.1);
    CHECK(cf.eta == doctest::Approx(0.5));
    CHECK(cf.eta_max == doctest::Approx(cf.eta_carnot));
    CHECK(cf.eta_sigma == doctest::Approx(cf.eta_carnot));
  }
  SUBCASE("energies from the occupations") {
    const double r = 0.5, q = 0.5, u = 0.1;
    const auto cf = closed_form_otto(1.0, 3.0, q, 1.0, r, u);
    const double nh = nbar(u), nc = nbar(3.0 * q * u);
    const double dnh = (2 * nh + 1) * std::sinh(r) * std::sinh(r);
    const double e_dh = nh + dnh - nc, e_dc = q * (nc - nh);
    CHECK(cf.eta == doctest::Approx((e_dh + e_dc) / e_dh));
    CHECK(cf.eta_max == doctest::Approx(1.0 - (nh - nc) / (3.0 * e_dh)));
    CHECK(cf.eta <= cf.eta_max);
    CHECK(cf.eta_max <= cf.eta_sigma);
    CHECK(cf.eta_carnot <= cf.eta_max);
  }
  SUBCASE("efficiency one between the occupations") {
    const auto cf = closed_form_otto(1.0, 3.0, 0.3, 1.0, 0.5, 0.1);
    CHECK(cf.eta == 1.0);
    CHECK(cf.regime == Regime::engine_and_refrigerator);
  }
  SUBCASE("below threshold") {
    CHECK(code_of([] { closed_form_otto(1.0, 3.0, 0.1, 1.0, 0.5, 0.1); }) == ErrorCode::regime_violation);
  }
}

TEST_CASE("engine threshold") {
  const double q = otto_engine_threshold(1.0 / 3.0, 0.5, 0.1);
  CHECK(q >= 0.20);
  CHECK(q <= 0.23);
  CHECK_NOTHROW(closed_form_otto(1.0, 3.0, q * 1.001, 1.0, 0.5, 0.1));
  CHECK_THROWS(closed_form_otto(1.0, 3.0, q * 0.999, 1.0, 0.5, 0.1));
  CHECK(otto_engine_threshold(1.0 / 3.0, 0.0, 0.1) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("multi-bath bound") {
  SUBCASE("two baths reduce to eta_max") {
    CHECK(multibath_bound({{1.0, 2.0, 3.0}}, {{-1.5, 1.0}}) == doctest::Approx(eta_max(1.0, 2.0, 1.0, 3.0)));
  }
  SUBCASE("all-thermal baths give the Carnot value") {
    const double b = multibath_bound({}, {{2.0, 3.0}, {1.0, 2.0}, {-2.0, 1.0}});
    CHECK(b == doctest::Approx(1.0 - 1.0 / 3.0));
  }
  SUBCASE("errors") {
    CHECK(code_of([] { multibath_bound({{-1.0, 2.0, 3.0}}, {}); }) == ErrorCode::regime_violation);
    CHECK(code_of([] { multibath_bound({}, {{-1.0, 1.0}}); }) == ErrorCode::regime_violation);
  }
}

TEST_CASE("cycle specification checks") {
  CycleSpec s;
  s.T_c = -1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  CycleSpec c;
  c.kind = CycleKind::carnot_like;
  c.T_c = 2.5;
  c.T_h = 5.0;
  c.omega_c = 12.5;
  c.omega_h = 15.0;
  c.omega_1 = 7.5;
  c.omega_2 = 26.0;
  c.hot_ramp = c.cold_ramp = 10.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.omega_2 = 25.0;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("Otto cycle: Fock and Gaussian backends agree with the closed form") {
  CycleSpec s;
  s.kind = CycleKind::otto;
  s.T_c = 0.5;
  s.T_h = 1.0;
  s.omega_h = 2.0;
  s.omega_c = 1.4;
  s.r = 0.3;
  s.hold = 15.0;
  const auto cf = closed_form_otto(s.T_c, s.T_h, s.omega_c, s.omega_h, s.r, s.omega_h / s.T_h);
  for (Backend b : {Backend::fock, Backend::gaussian}) {
    s.backend = b;
    const auto rep = run_otto(s);
    CHECK(rep.backend == b);
    CHECK(rep.eta_actual == doctest::Approx(cf.eta).epsilon(1e-6));
    CHECK(rep.eta_max == doctest::Approx(cf.eta_max).epsilon(1e-6));
    CHECK(rep.eta_sigma == doctest::Approx(cf.eta_sigma).epsilon(1e-6));
    CHECK(rep.firstlaw_residual < 1e-8);
    CHECK(rep.state_closure < 1e-6);
  }
}

TEST_CASE("automatic backend falls back to moments for hot baths") {
  CycleSpec s;
  s.T_c = 10.0 / 3.0;
  s.T_h = 10.0;
  s.omega_h = 1.0;
  s.omega_c = 0.5;
  s.r = 0.5;
  const auto rep = run_otto(s);
  CHECK(rep.backend == Backend::gaussian);
}

TEST_CASE("Carnot-like cycle approaches its bound as the drive slows") {
  CycleSpec s;
  s.kind = CycleKind::carnot_like;
  s.backend = Backend::gaussian;
  s.T_c = 2.5;
  s.T_h = 5.0;
  s.omega_c = 12.5;
  s.omega_h = 15.0;
  s.omega_1 = 7.5;
  s.omega_2 = 25.0;
  s.r = 0.2;
  double prev_gap = 1.0;
  for (double ramp : {25.0, 100.0, 400.0}) {
    s.hot_ramp = s.cold_ramp = ramp;
    const auto rep = run_carnot_like(s);
    const double gap = rep.eta_max - rep.eta_actual;
    CHECK(gap >= 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("thermal Carnot-like cycle reaches the Carnot efficiency") {
  CycleSpec s;
  s.kind = CycleKind::carnot_like;
  s.backend = Backend::fock;
  s.T_c = 2.5;
  s.T_h = 5.0;
  s.omega_c = 12.5;
  s.omega_h = 15.0;
  s.omega_1 = 7.5;
  s.omega_2 = 25.0;
  s.hot_ramp = s.cold_ramp = 200.0;
  const auto rep = run_cycle(s);
  CHECK(rep.regime == Regime::engine);
  CHECK(std::abs(rep.eta_actual - rep.eta_carnot) < 1e-2);
  CHECK(rep.eta_actual <= rep.eta_carnot + 1e-9);
  CHECK(rep.slow_drive_ok);
  CHECK(rep.firstlaw_residual < 1e-8);
}

}  // TEST_SUITE
