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

#include "core/fock.hpp"
#include "core/linalg.hpp"
#include "core/passivity.hpp"
#include "helpers.hpp"

using namespace qthermo;

TEST_SUITE("fock") {

TEST_CASE("annihilation at the smallest size") {
  const Matrix a = fock::annihilation(HilbertDim(2)).matrix();
  CHECK(a(0, 0) == Complex(0));
  CHECK(a(0, 1) == Complex(1));
  CHECK(a(1, 0) == Complex(0));
  CHECK(a(1, 1) == Complex(0));
}

TEST_CASE("number operator is a^dagger a") {
  const HilbertDim d(4);
  const Matrix n = fock::number(d).matrix();
  const Matrix ada = (fock::creation(d) * fock::annihilation(d)).matrix();
  CHECK(linalg::max_abs(n - testing::diag({0, 1, 2, 3})) == 0.0);
  CHECK(linalg::max_abs(n - ada) < 1e-14);
}

TEST_CASE("truncated commutator") {
  const int n = 7;
  const HilbertDim d(n);
  const Matrix a = fock::annihilation(d).matrix();
  const Matrix c = a * a.adjoint() - a.adjoint() * a;
  Matrix expected = Matrix::Identity(n, n);
  expected(n - 1, n - 1) = 1.0 - n;
  CHECK(linalg::max_abs(c - expected) < 1e-13);
}

TEST_CASE("HilbertDim rejects cutoffs below two") {
  CHECK_THROWS_AS(HilbertDim(1), Error);
  CHECK_NOTHROW(HilbertDim(2));
}

TEST_CASE("squeeze operator") {
  const HilbertDim d(30);
  SUBCASE("r = 0 is the identity") {
    CHECK(linalg::max_abs(fock::squeeze_operator(0.0, d).matrix() - Matrix::Identity(30, 30)) < 1e-14);
  }
  SUBCASE("S(r) S(-r) = 1") {
    const Matrix p = (fock::squeeze_operator(0.4, d) * fock::squeeze_operator(-0.4, d)).matrix();
    CHECK(linalg::max_abs(p - Matrix::Identity(30, 30)) < Tolerances::unitary);
    CHECK(fock::squeeze_operator(0.4, d).unitarity_error() < Tolerances::unitary);
  }
  SUBCASE("squeezed vacuum occupation is sinh^2 r") {
    const Vector psi = fock::squeeze_operator(0.4, d).matrix().col(0);
    const double n = (psi.adjoint() * fock::number(d).matrix() * psi)(0).real();
    CHECK(n == doctest::Approx(std::sinh(0.4) * std::sinh(0.4)).epsilon(1e-9));
    CHECK(n == doctest::Approx(0.168717).epsilon(1e-5));
  }
  SUBCASE("squeezed vacuum amplitudes follow the even-number series") {
    const double r = 0.4;
    const HilbertDim big(40);
    const Vector psi = fock::squeeze_operator(r, big).matrix().col(0);
    double c = 1.0 / std::sqrt(std::cosh(r));
    for (int k = 0; k < 10; ++k) {
      CHECK(std::abs(psi(2 * k) - Complex(c)) < 1e-10);
      CHECK(std::abs(psi(2 * k + 1)) < 1e-12);
      // c_{k+1} / c_k = -tanh r * sqrt((2k+1)(2k+2)) / (2 (k+1))
      c *= -std::tanh(r) * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0)) / (2.0 * (k + 1.0));
    }
  }
  SUBCASE("leak past the cutoff is reported") {
    try {
      fock::squeeze_operator(2.5, HilbertDim(10));
      FAIL("expected CutoffLeak");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::cutoff_leak);
    }
  }
}

TEST_CASE("thermal state") {
  SUBCASE("nbar = 0 is the vacuum") {
    const Matrix rho = fock::thermal_state(0.0, HilbertDim(5)).matrix();
    Matrix vac = Matrix::Zero(5, 5);
    vac(0, 0) = 1.0;
    CHECK(linalg::max_abs(rho - vac) < 1e-15);
  }
  SUBCASE("nbar = 1 follows 2^-(n+1)") {
    const int n = 60;
    const Matrix rho = fock::thermal_state(1.0, HilbertDim(n)).matrix();
    for (int k = 0; k < 20; ++k) CHECK(rho(k, k).real() == doctest::Approx(std::ldexp(1.0, -(k + 1))).epsilon(1e-12));
  }
  SUBCASE("mean occupation") {
    const HilbertDim d(60);
    for (double nb : {0.1, 0.5, 1.0, 2.0}) {
      const double mean = fock::thermal_state(nb, d).expectation(fock::number(d).matrix());
      CHECK(mean == doctest::Approx(nb).epsilon(1e-9));
    }
  }
  SUBCASE("too hot for the cutoff") {
    try {
      fock::thermal_state(5.0, HilbertDim(10));
      FAIL("expected CutoffLeak");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::cutoff_leak);
    }
  }
  SUBCASE("negative occupation") { CHECK_THROWS_AS(fock::thermal_state(-0.1, HilbertDim(5)), Error); }
}

TEST_CASE("coherent state") {
  SUBCASE("alpha = 0 is the vacuum") {
    const Matrix rho = fock::coherent_state({0.0, 0.0}, HilbertDim(6)).matrix();
    CHECK(rho(0, 0).real() == doctest::Approx(1.0));
    CHECK(rho.trace().real() == doctest::Approx(1.0));
  }
  SUBCASE("pure with Poisson mean") {
    const HilbertDim d(30);
    const DensityMatrix rho = fock::coherent_state({1.5, 0.0}, d);
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.expectation(fock::number(d).matrix()) == doctest::Approx(2.25).epsilon(1e-8));
  }
  SUBCASE("phase enters through <a>") {
    const HilbertDim d(30);
    const Complex alpha(0.6, -0.8);
    const DensityMatrix rho = fock::coherent_state(alpha, d);
    const Complex mean_a = (rho.matrix() * fock::annihilation(d).matrix()).trace();
    CHECK(std::abs(mean_a - alpha) < 1e-9);
  }
}

TEST_CASE("squeezed thermal state") {
  const HilbertDim d(50);
  SUBCASE("r = 0 is thermal") {
    CHECK(linalg::max_abs(fock::squeezed_thermal_state(0.7, 0.0, d).matrix() -
                          fock::thermal_state(0.7, d).matrix()) < 1e-14);
  }
  SUBCASE("entropy is unitarily invariant") {
    const double s_sq = passivity::von_neumann_entropy(fock::squeezed_thermal_state(0.5, 0.5, d));
    const double s_th = passivity::von_neumann_entropy(fock::thermal_state(0.5, d));
    CHECK(s_sq == doctest::Approx(s_th).epsilon(1e-9));
  }
  SUBCASE("mean occupation") {
    const HilbertDim d(100);
    for (double nb : {0.0, 0.5, 1.0})
      for (double r : {0.2, 0.5}) {
        const double mean = fock::squeezed_thermal_state(nb, r, d).expectation(fock::number(d).matrix());
        const double s2 = std::sinh(r) * std::sinh(r);
        CHECK(mean == doctest::Approx(nb + (2 * nb + 1) * s2).epsilon(1e-8));
      }
  }
}

TEST_CASE("density matrix validation") {
  const HilbertDim d(2);
  auto code_of = [&](Matrix m) {
    try {
      DensityMatrix rho(d, std::move(m));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io;
  };
  Matrix non_herm = testing::diag({0.5, 0.5});
  non_herm(0, 1) = 0.1;
  CHECK(code_of(non_herm) == ErrorCode::invalid_argument);
  CHECK(code_of(testing::diag({0.5, 0.6})) == ErrorCode::invalid_argument);
  CHECK(code_of(testing::diag({1.1, -0.1})) == ErrorCode::invalid_argument);
  CHECK_NOTHROW(DensityMatrix(d, testing::diag({1.0 + 1e-12, -1e-12})));
  CHECK_THROWS_AS(DensityMatrix(HilbertDim(3), testing::diag({0.5, 0.5})), Error);
}

TEST_CASE("Bose occupation and its inverse") {
  CHECK(fock::bose_occupation(1.0, 0.0) == 0.0);
  CHECK(fock::bose_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0));
  for (double w : {0.3, 1.0, 4.0})
    for (double t : {0.5, 2.0, 10.0})
      CHECK(fock::temperature_for(w, fock::bose_occupation(w, t)) == doctest::Approx(t).epsilon(1e-12));
  CHECK_THROWS_AS(fock::bose_occupation(-1.0, 1.0), Error);
}

TEST_CASE("suggested cutoff is the smallest passing one") {
  for (double nb : {0.0, 0.3, 1.0})
    for (double r : {0.0, 0.3}) {
      const int n = fock::suggest_cutoff(nb, r, 80);
      REQUIRE(n <= 80);
      CHECK_NOTHROW(fock::squeezed_thermal_state(nb, r, HilbertDim(n)));
      if (n > 2) CHECK_THROWS_AS(fock::squeezed_thermal_state(nb, r, HilbertDim(n - 1)), Error);
    }
  CHECK(fock::suggest_cutoff(50.0, 0.0, 40) == 41);
}

}  // TEST_SUITE
