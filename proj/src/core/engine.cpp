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


#include "core/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "core/dynamics.hpp"
#include "core/gaussian.hpp"
#include "core/linalg.hpp"
#include "core/passivity.hpp"

namespace qthermo::engine {

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::engine: return "engine";
    case Regime::engine_and_refrigerator: return "engine_and_refrigerator";
    case Regime::not_engine: return "not_engine";
  }
  return "unknown";
}

const char* to_string(Backend backend) {
  switch (backend) {
    case Backend::automatic: return "auto";
    case Backend::fock: return "fock";
    case Backend::gaussian: return "gaussian";
  }
  return "unknown";
}

const char* to_string(CycleKind kind) {
  return kind == CycleKind::otto ? "otto" : "carnot_like";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSteadyTol = 1e-8;

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

void check_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    std::ostringstream os;
    os << what << " must be positive and finite";
    fail(ErrorCode::invalid_argument, os.str());
  }
}

}  // namespace

void CycleSpec::validate() const {
  check_positive(T_c, "T_c");
  check_positive(T_h, "T_h");
  require(T_h > T_c, "T_h must exceed T_c");
  check_positive(kappa_c, "kappa_c");
  check_positive(kappa_h, "kappa_h");
  check_positive(omega_c, "omega_c");
  check_positive(omega_h, "omega_h");
  check_positive(dt, "dt");
  require(std::isfinite(r) && r >= 0.0, "squeezing parameter must be >= 0");
  require(std::isfinite(hold) && hold >= 0.0, "hold time must be >= 0");
  require(cutoff == 0 || cutoff >= 2, "cutoff must be 0 (automatic) or at least 2");
  require(max_fock_cutoff >= 2, "max_fock_cutoff must be at least 2");
  if (kind == CycleKind::carnot_like) {
    check_positive(omega_1, "omega_1");
    check_positive(omega_2, "omega_2");
    require(close_rel(omega_2, omega_c * T_h / T_c, 1e-9), "omega_2 must equal omega_c T_h / T_c");
    require(close_rel(omega_1, omega_h * T_c / T_h, 1e-9), "omega_1 must equal omega_h T_c / T_h");
    require(std::isfinite(hot_ramp) && hot_ramp > 0.0 && std::isfinite(cold_ramp) && cold_ramp > 0.0,
            "Carnot-like strokes need positive ramp durations");
  }
}

double eta_max(double E_dh_prime, double E_dh, double Tc, double Th) {
  if (!(E_dh > 0.0) || !(E_dh_prime >= 0.0)) {
    std::ostringstream os;
    os << "efficiency bound needs E_dh > 0 and E_dh' >= 0 (got " << E_dh << ", " << E_dh_prime << ")";
    fail(ErrorCode::regime_violation, os.str());
  }
  check_positive(Tc, "T_c");
  check_positive(Th, "T_h");
  return 1.0 - (Tc / Th) * (E_dh_prime / E_dh);
}

double eta_sigma(double E_dh_tilde, double E_dh, double Tc, double Th) {
  if (!(E_dh > 0.0)) fail(ErrorCode::regime_violation, "entropy-production bound needs E_dh > 0");
  check_positive(Tc, "T_c");
  check_positive(Th, "T_h");
  return 1.0 - (Tc / Th) * (E_dh_tilde / E_dh);
}

double eta_bound_combined(const CycleReport& report) {
  return std::min(report.eta_max, report.eta_sigma);
}

std::pair<double, Regime> eta_actual(double E_dh, double E_dc, double W) {
  if (W >= 0.0 || E_dh <= 0.0) return {kNaN, Regime::not_engine};
  if (E_dc > 0.0) return {1.0, Regime::engine_and_refrigerator};
  return {1.0 + E_dc / E_dh, Regime::engine};
}

ClosedForm closed_form_otto(double Tc, double Th, double omega_c, double omega_h, double r,
                            double scale_u) {
  check_positive(Tc, "T_c");
  check_positive(Th, "T_h");
  check_positive(omega_c, "omega_c");
  check_positive(omega_h, "omega_h");
  check_positive(scale_u, "scale_u");
  ClosedForm cf{};
  const double u_h = scale_u;
  const double u_c = scale_u * (omega_c / omega_h) * (Th / Tc);
  cf.nbar_h = 1.0 / std::expm1(u_h);
  cf.nbar_c = 1.0 / std::expm1(u_c);
  const double s2 = std::sinh(r) * std::sinh(r);
  cf.dnbar_h = (2.0 * cf.nbar_h + 1.0) * s2;
  cf.dnbar_c = (2.0 * cf.nbar_c + 1.0) * s2;
  const double denom = cf.nbar_h + cf.dnbar_h - cf.nbar_c;
  if (denom < 0.0) {
    std::ostringstream os;
    os << "not an engine: n_h + dn_h = " << cf.nbar_h + cf.dnbar_h << " < n_c = " << cf.nbar_c;
    fail(ErrorCode::regime_violation, os.str());
  }
  const double ratio = omega_c / omega_h;
  cf.eta_carnot = 1.0 - Tc / Th;
  cf.eta_max = 1.0 - (Tc / Th) * (cf.nbar_h - cf.nbar_c) / denom;
  cf.eta_sigma = 1.0 - (Tc / Th) * (cf.nbar_h - cf.nbar_c - cf.dnbar_c) / denom;
  if (cf.nbar_c <= cf.nbar_h) {
    cf.eta = 1.0 - (cf.nbar_h - cf.nbar_c) * ratio / denom;
    cf.regime = Regime::engine;
  } else {
    cf.eta = 1.0;
    cf.regime = Regime::engine_and_refrigerator;
  }
  return cf;
}

double otto_engine_threshold(double Tc_over_Th, double r, double scale_u) {
  check_positive(Tc_over_Th, "T_c / T_h");
  require(Tc_over_Th < 1.0, "T_c must be below T_h");
  check_positive(scale_u, "scale_u");
  auto margin = [&](double ratio) {
    const double nh = 1.0 / std::expm1(scale_u);
    const double nc = 1.0 / std::expm1(scale_u * ratio / Tc_over_Th);
    return nh + (2.0 * nh + 1.0) * std::sinh(r) * std::sinh(r) - nc;
  };
  double lo = 1e-9, hi = 1.0;
  if (margin(hi) < 0.0) return kNaN;
  if (margin(lo) >= 0.0) return lo;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double multibath_bound(const std::vector<HotEntry>& hot, const std::vector<ThermalEntry>& thermal) {
  if (hot.empty() && thermal.empty()) fail(ErrorCode::regime_violation, "no baths given");
  double t_min = std::numeric_limits<double>::infinity(), t_max = 0.0;
  double e_in = 0.0, e_in_prime = 0.0;
  for (const auto& h : hot) {
    check_positive(h.T, "bath temperature");
    if (!(h.E_prime >= 0.0)) fail(ErrorCode::regime_violation, "energising alternative-path energy must be >= 0");
    t_min = std::min(t_min, h.T);
    t_max = std::max(t_max, h.T);
    e_in += h.E;
    e_in_prime += h.E_prime;
  }
  for (const auto& th : thermal) {
    check_positive(th.T, "bath temperature");
    t_min = std::min(t_min, th.T);
    t_max = std::max(t_max, th.T);
    if (th.E >= 0.0) {
      e_in += th.E;
      e_in_prime += th.E;
    }
  }
  if (!(e_in > 0.0)) fail(ErrorCode::regime_violation, "no energising input");
  return 1.0 - (t_min / t_max) * (e_in_prime / e_in);
}

namespace {

using gaussian::BathStroke;

struct BathOutcome {
  double E_d = 0.0;
  double work = 0.0;
  double dEpas = 0.0;
  double dErgo = 0.0;
  double residual = 0.0;
  double stationarity = 0.0;
};

// Single-mode working medium with H = omega a^dagger a.
class Medium {
 public:
  virtual ~Medium() = default;
  virtual std::unique_ptr<Medium> clone() const = 0;
  virtual double occupation() const = 0;
  virtual double entropy() const = 0;
  virtual double passive_occupation() const = 0;
  virtual void unsqueeze(double r) = 0;
  /// Replace the state with its passive counterpart.
  virtual void passivize() = 0;
  virtual BathOutcome bath_stroke(const BathStroke& s, double dt) = 0;
  virtual double distance(const Medium& other) const = 0;
};

class FockMedium final : public Medium {
 public:
  explicit FockMedium(DensityMatrix rho) : rho_(std::move(rho)) {}

  std::unique_ptr<Medium> clone() const override { return std::make_unique<FockMedium>(*this); }
  double occupation() const override {
    return rho_.expectation(fock::number(rho_.dim()).matrix());
  }
  double entropy() const override { return passivity::von_neumann_entropy(rho_); }
  double passive_occupation() const override {
    const auto p = passivity::spectrum_desc(rho_.matrix());
    double n = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) n += p[k] * static_cast<double>(k);
    return n;
  }
  void unsqueeze(double r) override {
    if (r == 0.0) return;
    const Matrix s = fock::squeeze_operator(r, rho_.dim()).matrix();
    rho_ = DensityMatrix(rho_.dim(), linalg::hermitian_part(s.adjoint() * rho_.matrix() * s));
  }
  void passivize() override {
    rho_ = passivity::passive_decompose(rho_, fock::number(rho_.dim())).passive_state;
  }
  BathOutcome bath_stroke(const BathStroke& s, double dt) override {
    const HilbertDim dim = rho_.dim();
    HamiltonianSchedule sched = s.ramp > 0.0
                                    ? HamiltonianSchedule::oscillator_ramp(s.omega0, s.omega1, 0.0, s.ramp, dim)
                                    : HamiltonianSchedule::oscillator(s.omega1, dim);
    const Generator gen = s.r == 0.0
                              ? thermal_generator_driven(std::move(sched), s.kappa, s.temperature)
                              : squeezed_generator_driven(std::move(sched), s.kappa, s.temperature, s.r);
    EvolveOptions opts;
    opts.sample_every = std::numeric_limits<int>::max();
    Trajectory traj = evolve(gen, rho_, s.duration(), dt, opts);
    rho_ = traj.final_state();
    BathOutcome out;
    out.E_d = traj.ledger.E_d;
    out.work = traj.ledger.work_W;
    out.dEpas = traj.ledger.dEpas_d;
    out.dErgo = traj.ledger.dErgo_d;
    out.residual = traj.firstlaw_residual;
    out.stationarity = linalg::max_abs(gen.apply(rho_.matrix(), s.duration()));
    return out;
  }
  double distance(const Medium& other) const override {
    const auto& o = dynamic_cast<const FockMedium&>(other);
    return linalg::trace_distance(rho_.matrix(), o.rho_.matrix());
  }

 private:
  DensityMatrix rho_;
};

class GaussianMedium final : public Medium {
 public:
  explicit GaussianMedium(gaussian::Moments x) : x_(x) {}

  std::unique_ptr<Medium> clone() const override { return std::make_unique<GaussianMedium>(*this); }
  double occupation() const override { return x_.n; }
  double entropy() const override { return gaussian::entropy(x_); }
  double passive_occupation() const override { return gaussian::passive_occupation(x_); }
  void unsqueeze(double r) override { x_ = gaussian::unsqueeze(x_, r); }
  void passivize() override { x_ = gaussian::thermal(gaussian::passive_occupation(x_)); }
  BathOutcome bath_stroke(const BathStroke& s, double dt) override {
    const auto res = gaussian::run_stroke(s, x_, dt);
    x_ = res.final_state;
    BathOutcome out;
    out.E_d = res.ledger.E_d;
    out.work = res.ledger.work_W;
    out.dEpas = res.ledger.dEpas_d;
    out.dErgo = res.ledger.dErgo_d;
    out.residual = res.firstlaw_residual;
    out.stationarity = res.stationarity;
    return out;
  }
  double distance(const Medium& other) const override {
    const auto& o = dynamic_cast<const GaussianMedium&>(other);
    return std::max(std::abs(x_.n - o.x_.n), std::abs(x_.m - o.x_.m));
  }

 private:
  gaussian::Moments x_;
};

struct MediumChoice {
  Backend backend;
  int cutoff;
};

// occupations: (nbar, r) pairs the medium must represent.
MediumChoice choose_medium(Backend backend, int cutoff, int max_cutoff,
                           const std::vector<std::pair<double, double>>& occupations) {
  if (backend == Backend::gaussian) return {Backend::gaussian, 0};
  if (cutoff > 0) return {Backend::fock, cutoff};
  int need = 2;
  for (const auto& [nbar, r] : occupations) {
    need = std::max(need, fock::suggest_cutoff(nbar, r, max_cutoff));
    if (need > max_cutoff) break;
  }
  // Headroom for transients between the stationary states.
  need += 4;
  if (need <= max_cutoff) return {Backend::fock, need};
  if (backend == Backend::fock) {
    std::ostringstream os;
    os << "cycle needs a Fock cutoff above " << max_cutoff;
    fail(ErrorCode::cutoff_leak, os.str());
  }
  return {Backend::gaussian, 0};
}

std::unique_ptr<Medium> thermal_medium(const MediumChoice& c, double nbar) {
  if (c.backend == Backend::gaussian) return std::make_unique<GaussianMedium>(gaussian::thermal(nbar));
  return std::make_unique<FockMedium>(fock::thermal_state(nbar, HilbertDim(c.cutoff)));
}

void require_steady(const BathOutcome& o, const std::string& stroke) {
  if (o.stationarity > kSteadyTol) {
    std::ostringstream os;
    os << stroke << " stroke ended away from its steady state (max |L rho| = " << o.stationarity
       << "); lengthen the hold time";
    fail(ErrorCode::not_steady, os.str());
  }
}

StrokeReport adiabat(Medium& m, double omega_from, double omega_to, const char* name) {
  StrokeReport s;
  s.name = name;
  s.work = (omega_to - omega_from) * m.occupation();
  return s;
}

StrokeReport extraction(Medium& m, double omega, double r) {
  StrokeReport s;
  s.name = "extract";
  const double before = m.occupation();
  m.unsqueeze(r);
  s.work = omega * (m.occupation() - before);
  return s;
}

StrokeReport bath(Medium& m, const BathStroke& stroke, double dt, const char* name,
                  BathOutcome* outcome = nullptr) {
  const double s0 = m.entropy();
  const BathOutcome o = m.bath_stroke(stroke, dt);
  require_steady(o, name);
  StrokeReport s;
  s.name = name;
  s.work = o.work;
  s.E_d = o.E_d;
  s.dEpas_d = o.dEpas;
  s.dErgo_d = o.dErgo;
  s.delta_S = m.entropy() - s0;
  s.firstlaw_residual = o.residual;
  s.stationarity = o.stationarity;
  if (outcome) *outcome = o;
  return s;
}

CycleReport run_two_bath(const CycleSpec& spec) {
  spec.validate();
  const bool carnot = spec.kind == CycleKind::carnot_like;
  const double w_hot_start = carnot ? spec.omega_2 : spec.omega_h;
  const double w_cold_start = carnot ? spec.omega_1 : spec.omega_c;
  const double nbar_c = fock::bose_occupation(spec.omega_c, spec.T_c);
  const double nbar_h = fock::bose_occupation(spec.omega_h, spec.T_h);

  std::vector<std::pair<double, double>> occ = {{nbar_c, spec.r}, {nbar_h, spec.r}};
  if (carnot) {
    occ.emplace_back(fock::bose_occupation(spec.omega_2, spec.T_h), spec.r);
    occ.emplace_back(fock::bose_occupation(spec.omega_1, spec.T_c), 0.0);
  }
  const MediumChoice choice = choose_medium(spec.backend, spec.cutoff, spec.max_fock_cutoff, occ);

  CycleReport rep;
  rep.kind = spec.kind;
  rep.backend = choice.backend;
  rep.cutoff = choice.cutoff;
  rep.eta_carnot = 1.0 - spec.T_c / spec.T_h;

  auto medium = thermal_medium(choice, nbar_c);
  const auto start = medium->clone();
  const double s_start = medium->entropy();

  rep.strokes.push_back(adiabat(*medium, spec.omega_c, w_hot_start, "compress"));

  const BathStroke hot{w_hot_start, spec.omega_h, carnot ? spec.hot_ramp : 0.0, spec.hold,
                       spec.kappa_h, spec.T_h, spec.r};
  const BathStroke hot_thermal{hot.omega0, hot.omega1, hot.ramp, hot.hold, hot.kappa,
                               hot.temperature, 0.0};
  // Thermal-frame comparison paths from the unsqueezed start of the hot stroke.
  {
    auto tilde = medium->clone();
    tilde->unsqueeze(spec.r);
    auto alt = tilde->clone();
    alt->passivize();
    rep.E_dh_tilde = tilde->bath_stroke(hot_thermal, spec.dt).E_d;
    rep.E_dh_prime = alt->bath_stroke(hot_thermal, spec.dt).E_d;
  }
  BathOutcome hot_out;
  rep.strokes.push_back(bath(*medium, hot, spec.dt, "hot", &hot_out));
  rep.E_dh = hot_out.E_d;
  rep.dEpas_h = hot_out.dEpas;
  rep.delta_S_h = rep.strokes.back().delta_S;
  if (!carnot) rep.E_dh_prime = hot_out.dEpas;

  rep.strokes.push_back(extraction(*medium, spec.omega_h, spec.r));
  rep.strokes.push_back(adiabat(*medium, spec.omega_h, w_cold_start, "expand"));

  const BathStroke cold{w_cold_start, spec.omega_c, carnot ? spec.cold_ramp : 0.0, spec.hold,
                        spec.kappa_c, spec.T_c, 0.0};
  BathOutcome cold_out;
  rep.strokes.push_back(bath(*medium, cold, spec.dt, "cold", &cold_out));
  rep.E_dc = cold_out.E_d;
  rep.delta_S_c = rep.strokes.back().delta_S;

  for (const auto& s : rep.strokes) rep.work_W += s.work;
  rep.work_out = -rep.work_W;
  rep.firstlaw_residual = std::abs(rep.E_dc + rep.E_dh + rep.work_W);
  rep.entropy_closure = std::abs(medium->entropy() - s_start);
  rep.state_closure = medium->distance(*start);
  rep.clausius_alt = rep.E_dc / spec.T_c + rep.E_dh_prime / spec.T_h;

  const auto [eta, regime] = eta_actual(rep.E_dh, rep.E_dc, rep.work_W);
  rep.eta_actual = eta;
  rep.regime = regime;
  const double tc_th = spec.T_c / spec.T_h;
  rep.eta_max = rep.E_dh > 0.0 ? 1.0 - tc_th * rep.E_dh_prime / rep.E_dh : kNaN;
  rep.eta_sigma = rep.E_dh > 0.0 ? eta_sigma(rep.E_dh_tilde, rep.E_dh, spec.T_c, spec.T_h) : kNaN;
  rep.bounds_valid = regime == Regime::engine && rep.E_dh_prime >= 0.0;

  if (carnot) {
    auto rate_ok = [](double w0, double w1, double ramp) {
      return std::abs(w1 - w0) / ramp / std::min(w0, w1) <= 0.01;
    };
    rep.slow_drive_ok = rate_ok(spec.omega_2, spec.omega_h, spec.hot_ramp * spec.kappa_h) &&
                        rate_ok(spec.omega_1, spec.omega_c, spec.cold_ramp * spec.kappa_c);
  }
  return rep;
}

}  // namespace

CycleReport run_otto(const CycleSpec& spec) {
  CycleSpec s = spec;
  s.kind = CycleKind::otto;
  return run_two_bath(s);
}

CycleReport run_carnot_like(const CycleSpec& spec) {
  CycleSpec s = spec;
  s.kind = CycleKind::carnot_like;
  return run_two_bath(s);
}

CycleReport run_cycle(const CycleSpec& spec) { return run_two_bath(spec); }

MultibathReport run_multibath(const MultibathSpec& spec) {
  require(spec.stages.size() >= 2, "a multi-bath cycle needs at least two stages");
  require(std::isfinite(spec.hold) && spec.hold >= 0.0, "hold time must be >= 0");
  check_positive(spec.dt, "dt");
  std::vector<std::pair<double, double>> occ;
  for (const auto& st : spec.stages) {
    check_positive(st.omega, "stage frequency");
    check_positive(st.T, "stage temperature");
    check_positive(st.kappa, "stage kappa");
    require(std::isfinite(st.r) && st.r >= 0.0, "squeezing parameter must be >= 0");
    occ.emplace_back(fock::bose_occupation(st.omega, st.T), st.r);
  }
  const MediumChoice choice = choose_medium(spec.backend, spec.cutoff, spec.max_fock_cutoff, occ);

  MultibathReport rep;
  rep.backend = choice.backend;
  rep.cutoff = choice.cutoff;
  const BathStage& last = spec.stages.back();
  require(last.r == 0.0, "the cycle must start from a thermal stage (last stage thermal)");
  auto medium = thermal_medium(choice, fock::bose_occupation(last.omega, last.T));
  const auto start = medium->clone();
  const double s_start = medium->entropy();
  double omega = last.omega;
  double t_min = std::numeric_limits<double>::infinity(), t_max = 0.0;
  std::vector<HotEntry> hot;
  std::vector<ThermalEntry> thermal;
  double sq_e = 0.0, sq_e_prime = 0.0;

  for (const auto& st : spec.stages) {
    StageResult sr;
    sr.stage = st;
    sr.work += adiabat(*medium, omega, st.omega, "adiabat").work;
    omega = st.omega;
    const BathStroke stroke{st.omega, st.omega, 0.0, spec.hold, st.kappa, st.T, st.r};
    const StrokeReport b = bath(*medium, stroke, spec.dt, st.name.c_str());
    sr.E_d = b.E_d;
    sr.delta_S = b.delta_S;
    sr.E_d_prime = st.r > 0.0 ? b.dEpas_d : b.E_d;
    if (st.r > 0.0) sr.work += extraction(*medium, st.omega, st.r).work;
    t_min = std::min(t_min, st.T);
    t_max = std::max(t_max, st.T);
    if (st.r > 0.0) {
      hot.push_back({sr.E_d_prime, sr.E_d, st.T});
      sq_e += sr.E_d;
      sq_e_prime += sr.E_d_prime;
    } else {
      thermal.push_back({sr.E_d, st.T});
    }
    if (sr.E_d >= 0.0) {
      rep.E_in += sr.E_d;
      rep.E_in_prime += sr.E_d_prime;
    } else {
      rep.E_out += sr.E_d;
    }
    rep.work_W += sr.work;
    rep.stages.push_back(sr);
  }
  rep.firstlaw_residual = std::abs(rep.E_in + rep.E_out + rep.work_W);
  rep.entropy_closure = std::abs(medium->entropy() - s_start);
  rep.state_closure = medium->distance(*start);
  rep.eta_carnot = 1.0 - t_min / t_max;
  const auto [eta, regime] = eta_actual(rep.E_in, rep.E_out, rep.work_W);
  rep.eta_actual = eta;
  rep.regime = regime;
  rep.bound = multibath_bound(hot, thermal);
  rep.eta_max_reduced = sq_e > 0.0 ? 1.0 - (t_min / t_max) * sq_e_prime / sq_e : kNaN;
  return rep;
}

}  // namespace qthermo::engine
