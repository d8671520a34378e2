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

#include "core/fock.hpp"

#include <cmath>
#include <sstream>

#include "core/linalg.hpp"

namespace qthermo {

HilbertDim::HilbertDim(int cutoff) : n_(cutoff) {
  if (cutoff < 2) fail(ErrorCode::invalid_argument, "Hilbert-space cutoff must be at least 2");
}

Operator::Operator(HilbertDim dim, Matrix entries) : dim_(dim), m_(std::move(entries)) {
  if (m_.rows() != dim.value() || m_.cols() != dim.value())
    fail(ErrorCode::invalid_argument, "operator shape does not match its Hilbert dimension");
  if (!m_.allFinite()) fail(ErrorCode::invalid_argument, "operator has non-finite entries");
}

Operator Operator::identity(HilbertDim dim) {
  return Operator(dim, Matrix::Identity(dim.value(), dim.value()));
}

Operator Operator::zero(HilbertDim dim) {
  return Operator(dim, Matrix::Zero(dim.value(), dim.value()));
}

bool Operator::is_hermitian(double tol) const {
  return linalg::max_abs(m_ - m_.adjoint()) <= tol;
}

double Operator::unitarity_error() const {
  return linalg::max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols()));
}

Operator operator*(const Operator& a, const Operator& b) {
  require(a.dim_ == b.dim_, "operator dimensions differ");
  return Operator(a.dim_, a.m_ * b.m_);
}

Operator operator+(const Operator& a, const Operator& b) {
  require(a.dim_ == b.dim_, "operator dimensions differ");
  return Operator(a.dim_, a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require(a.dim_ == b.dim_, "operator dimensions differ");
  return Operator(a.dim_, a.m_ - b.m_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(a.dim_, s * a.m_); }

namespace {

Operator validated(Operator op) {
  const Matrix& m = op.matrix();
  const double herm_err = linalg::max_abs(m - m.adjoint());
  if (herm_err > Tolerances::herm) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max deviation " << herm_err << ")";
    fail(ErrorCode::invalid_argument, os.str());
  }
  const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_err > Tolerances::trace) {
    std::ostringstream os;
    os << "density matrix trace deviates from 1 by " << trace_err;
    fail(ErrorCode::invalid_argument, os.str());
  }
  Matrix h = linalg::hermitian_part(m);
  const double min_eig = linalg::eigvalsh(h)(0);
  if (min_eig < -Tolerances::psd) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min_eig;
    fail(ErrorCode::invalid_argument, os.str());
  }
  return Operator(op.dim(), std::move(h));
}

void check_leak(const Matrix& rho, const char* what) {
  const double leak = fock::top_population(rho);
  if (leak > Tolerances::leak) {
    std::ostringstream os;
    os << what << ": population " << leak << " in the top two Fock levels of a cutoff-"
       << rho.rows() << " space exceeds " << Tolerances::leak;
    fail(ErrorCode::cutoff_leak, os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Operator op) : op_(validated(std::move(op))) {}

double DensityMatrix::expectation(const Matrix& observable) const {
  return (matrix() * observable).trace().real();
}

double DensityMatrix::purity() const { return (matrix() * matrix()).trace().real(); }

namespace fock {

Operator annihilation(HilbertDim dim) {
  const int n = dim.value();
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return Operator(dim, std::move(a));
}

Operator creation(HilbertDim dim) { return annihilation(dim).adjoint(); }

Operator number(HilbertDim dim) {
  const int n = dim.value();
  Matrix num = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
  return Operator(dim, std::move(num));
}

Operator squeeze_operator(double r, HilbertDim dim) {
  require(std::isfinite(r), "squeezing parameter must be finite");
  const Matrix a = annihilation(dim).matrix();
  // (r/2)(a^2 - a^dagger^2) = -i X with X Hermitian.
  const Matrix anti = 0.5 * r * (a * a - (a * a).adjoint());
  const Matrix x = Complex(0.0, 1.0) * anti;
  Operator s(dim, linalg::expm_i_hermitian(x));
  const Vector vac = s.matrix().col(0);
  check_leak(vac * vac.adjoint(), "squeeze_operator");
  return s;
}

DensityMatrix thermal_state(double nbar, HilbertDim dim) {
  require(std::isfinite(nbar) && nbar >= 0.0, "thermal occupation must be finite and >= 0");
  const int n = dim.value();
  const double q = nbar / (nbar + 1.0);
  RealVector p(n);
  double w = 1.0;
  for (int k = 0; k < n; ++k) {
    p(k) = w;
    w *= q;
  }
  p /= p.sum();
  Matrix rho = Matrix::Zero(n, n);
  rho.diagonal() = p.cast<Complex>();
  check_leak(rho, "thermal_state");
  return DensityMatrix(dim, std::move(rho));
}

DensityMatrix coherent_state(Complex alpha, HilbertDim dim) {
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()),
          "coherent amplitude must be finite");
  const int n = dim.value();
  Vector psi(n);
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < n; ++k) {
    psi(k) = c;
    c *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  psi /= psi.norm();
  Matrix rho = psi * psi.adjoint();
  check_leak(rho, "coherent_state");
  return DensityMatrix(dim, std::move(rho));
}

DensityMatrix squeezed_thermal_state(double nbar, double r, HilbertDim dim) {
  const Matrix th = thermal_state(nbar, dim).matrix();
  const Matrix s = squeeze_operator(r, dim).matrix();
  Matrix rho = s * th * s.adjoint();
  check_leak(rho, "squeezed_thermal_state");
  return DensityMatrix(dim, linalg::hermitian_part(rho));
}

double top_population(const Matrix& rho, int levels) {
  const Eigen::Index n = rho.rows();
  double sum = 0.0;
  for (Eigen::Index k = std::max<Eigen::Index>(0, n - levels); k < n; ++k) sum += rho(k, k).real();
  return sum;
}

double bose_occupation(double omega, double temperature) {
  require(omega > 0.0, "frequency must be positive");
  require(temperature >= 0.0, "temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double temperature_for(double omega, double nbar) {
  require(omega > 0.0, "frequency must be positive");
  require(nbar >= 0.0, "occupation must be non-negative");
  if (nbar == 0.0) return 0.0;
  return omega / std::log1p(1.0 / nbar);
}

int suggest_cutoff(double nbar, double r, int max_cutoff) {
  auto passes = [&](int n) {
    try {
      squeezed_thermal_state(nbar, r, HilbertDim(n));
      return true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::cutoff_leak) return false;
      throw;
    }
  };
  if (!passes(max_cutoff)) return max_cutoff + 1;
  int lo = 2, hi = max_cutoff;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (passes(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

}  // namespace fock
}  // namespace qthermo
