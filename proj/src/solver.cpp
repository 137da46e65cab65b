// Copyright 2026 The bsqlab Authors
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

#include "bsq/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/errors.hpp"
#include "bsq/imethod.hpp"

namespace bsq {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("SolverConfig: dt must be > 0");
  if (!(tol_picard > 0.0 && tol_picard <= 1e-2))
    throw PreconditionError("SolverConfig: tol_picard must lie in (0, 1e-2]");
  if (max_picard_iters < 2) throw PreconditionError("SolverConfig: max_picard_iters must be >= 2");
}

SpectralField rhs_nonlinear(const SpectralField& u, NonlinearSign sign) {
  const Grid& g = u.grid();
  if (sign == NonlinearSign::off) return SpectralField(g);
  const double s = sign == NonlinearSign::defocusing ? -1.0 : 1.0;
  SpectralField cubic = dealiased_cubic(u);
  cubic.coeffs() *= s * g.wavenumbers().square();
  return cubic;
}

Stepper::Stepper(const Grid& grid, const SolverConfig& config) : grid_(grid), config_(config) {
  config_.validate();
  const Complex i(0.0, 1.0);
  half_phase_ = (i * (0.5 * config_.dt * grid.frequencies()).cast<Complex>()).exp();
  inv_omega_ = grid.frequencies().inverse();
  inv_omega_(0) = 0.0;
}

void Stepper::half_flow(Pair& a) const {
  const Complex drift = a.plus(0) + 0.5 * config_.dt * a.minus(0);
  a.plus *= half_phase_;
  a.minus *= half_phase_.conjugate();
  a.plus(0) = drift;
}

Stepper::Pair Stepper::nonlinear(const Pair& a) const {
  Eigen::ArrayXcd u = 0.5 * (a.plus + a.minus);
  u(0) = a.plus(0);
  const Eigen::ArrayXcd f = rhs_nonlinear(SpectralField(grid_, std::move(u)), config_.sign).coeffs();
  const Complex i(0.0, 1.0);
  Pair k{-i * inv_omega_ * f, Eigen::ArrayXcd()};
  k.minus = -k.plus;
  k.plus(0) = 0.0;
  k.minus(0) = f(0);
  return k;
}

WaveState Stepper::step(const WaveState& state, long step_index) const {
  require_same_grid(grid_, state.grid(), "Stepper::step");
  const double h = config_.dt;
  const HalfWave hw = diagonalize(state);
  const Pair a{hw.plus.coeffs(), hw.minus.coeffs()};

  auto check = [&](const Pair& p) {
    if (!p.plus.allFinite() || !p.minus.allFinite())
      throw DivergenceError(step_index, state.t());
  };

  const Pair k1 = nonlinear(a);
  check(k1);

  Pair stage{a.plus + 0.5 * h * k1.plus, a.minus + 0.5 * h * k1.minus};
  half_flow(stage);
  const Pair k2 = nonlinear(stage);
  check(k2);

  Pair ea = a;
  half_flow(ea);
  stage = {ea.plus + 0.5 * h * k2.plus, ea.minus + 0.5 * h * k2.minus};
  const Pair k3 = nonlinear(stage);
  check(k3);

  Pair ek3 = k3;
  half_flow(ek3);
  // half_flow also drifts the zero mode, which is linear and so applies to
  // increments the same way.
  Pair eea = ea;
  half_flow(eea);
  stage = {eea.plus + h * ek3.plus, eea.minus + h * ek3.minus};
  const Pair k4 = nonlinear(stage);
  check(k4);

  // E^2 k1 + 2 E (k2 + k3) + k4
  Pair acc = k1;
  half_flow(acc);
  acc.plus += 2.0 * (k2.plus + k3.plus);
  acc.minus += 2.0 * (k2.minus + k3.minus);
  half_flow(acc);
  acc.plus += k4.plus;
  acc.minus += k4.minus;

  HalfWave next{SpectralField(grid_, eea.plus + (h / 6.0) * acc.plus),
                SpectralField(grid_, eea.minus + (h / 6.0) * acc.minus)};
  check({next.plus.coeffs(), next.minus.coeffs()});
  return reconstruct(next, state.t() + h);
}

WaveState step(const WaveState& state, const SolverConfig& config) {
  return Stepper(state.grid(), config).step(state);
}

namespace {

long step_count(double T, double dt) {
  if (!(T >= 0.0)) throw PreconditionError("evolve: T must be >= 0");
  const double n = std::round(T / dt);
  if (std::abs(n * dt - T) > 1e-9 * std::max(T, dt))
    throw PreconditionError("evolve: T must be a whole number of steps dt");
  return static_cast<long>(n);
}

}  // namespace

WaveState evolve_observed(const WaveState& state, double T, const SolverConfig& config,
                          const StepObserver& observer) {
  config.validate();
  const long n = step_count(T, config.dt);
  const Stepper stepper(state.grid(), config);
  WaveState current = state;
  if (observer) observer(current);
  for (long k = 0; k < n; ++k) {
    current = stepper.step(current, k);
    if (observer) observer(current);
  }
  return current;
}

Trajectory evolve(const WaveState& state, double T, const SolverConfig& config) {
  Trajectory traj;
  traj.config = config;
  evolve_observed(state, T, config, [&](const WaveState& s) {
    traj.states.push_back(s);
    traj.energies.push_back(energy(s).E_u);
  });
  return traj;
}

double local_delta_from_size(double size, double kappa, double eps) {
  if (!(kappa > 0.0)) throw PreconditionError("local_delta: kappa must be > 0");
  if (!(eps >= 0.0 && eps <= 0.1)) throw PreconditionError("local_delta: eps must lie in [0, 0.1]");
  if (!(size >= 0.0) || !std::isfinite(size))
    throw PreconditionError("local_delta: data size must be finite and >= 0");
  if (size == 0.0) return 1.0;
  return std::min(1.0, std::pow(kappa / (size * size), 1.0 / (0.5 - eps)));
}

double local_delta(const SpectralField& phi, const SpectralField& psi, double N, double s,
                   double kappa, double eps) {
  const ISpec spec{N, s, MultiplierShape::sharp};
  spec.validate();
  const double size = sobolev_norm(apply_I(spec, phi), 1.0) + sobolev_norm(apply_I(spec, psi), 0.0);
  return local_delta_from_size(size, kappa, eps);
}

Index picard_sample_count(const Grid& grid, double delta) {
  // Keeps omega_max * h near 0.1 so the oscillatory quadrature stays accurate.
  const double intervals = std::max(32.0, std::ceil(10.0 * grid.max_frequency() * delta));
  Index n = static_cast<Index>(intervals);
  if (n % 2 != 0) ++n;
  return n + 1;
}

namespace {

// Cumulative quadrature of samples g_0..g_{n-1} (spacing h) over [0, t_j],
// fourth order for every j: composite Simpson on an even prefix, closed by the
// 3/8 rule for odd j >= 3, and a three-point rule for j = 1.
class CumulativeQuadrature {
 public:
  CumulativeQuadrature(const std::vector<Eigen::ArrayXcd>& g, double h) : g_(g), h_(h) {
    even_.resize(g.size());
    even_[0] = Eigen::ArrayXcd::Zero(g[0].size());
    for (std::size_t j = 2; j < g.size(); j += 2)
      even_[j] = even_[j - 2] + (h / 3.0) * (g[j - 2] + 4.0 * g[j - 1] + g[j]);
  }

  Eigen::ArrayXcd operator()(std::size_t j) const {
    if (j % 2 == 0) return even_[j];
    if (j == 1) return (h_ / 12.0) * (5.0 * g_[0] + 8.0 * g_[1] - g_[2]);
    return even_[j - 3] + (3.0 * h_ / 8.0) * (g_[j - 3] + 3.0 * g_[j - 2] + 3.0 * g_[j - 1] + g_[j]);
  }

 private:
  const std::vector<Eigen::ArrayXcd>& g_;
  double h_;
  std::vector<Eigen::ArrayXcd> even_;
};

double max_h1_distance(const std::vector<SpectralField>& a, const std::vector<SpectralField>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, sobolev_norm(a[j] - b[j], 1.0));
  return d;
}

}  // namespace

PicardResult picard_solve(const SpectralField& phi, const SpectralField& psi, double delta,
                          const SolverConfig& config, Index samples) {
  config.validate();
  require_same_grid(phi.grid(), psi.grid(), "picard_solve");
  if (!(delta > 0.0 && delta <= 1.0)) throw PreconditionError("picard_solve: delta must lie in (0, 1]");
  const Grid& g = phi.grid();
  const Index n = samples > 0 ? samples : picard_sample_count(g, delta);
  if (n < 33 || n % 2 == 0) throw PreconditionError("picard_solve: need an odd sample count >= 33");
  const double h = delta / static_cast<double>(n - 1);

  const SpectralField psi_x = apply_multiplier(derivative_multiplier(g, 1), psi);
  const Eigen::ArrayXd& w = g.frequencies();
  Eigen::ArrayXd inv_w = w.inverse();
  inv_w(0) = 0.0;

  std::vector<Eigen::ArrayXd> cos_t(n), sin_t(n);
  std::vector<SpectralField> u(static_cast<std::size_t>(n), SpectralField(g));
  std::vector<SpectralField> ut(static_cast<std::size_t>(n), SpectralField(g));
  for (Index j = 0; j < n; ++j) {
    const double t = h * static_cast<double>(j);
    cos_t[j] = (t * w).cos();
    sin_t[j] = (t * w).sin();
    u[j] = SpectralField(g, cos_t[j] * phi.coeffs() + (sin_t[j] * inv_w) * psi_x.coeffs());
    u[j].coeffs()(0) = phi.coeffs()(0) + t * psi_x.coeffs()(0);
    ut[j] = SpectralField(g, cos_t[j] * psi_x.coeffs() - (w * sin_t[j]) * phi.coeffs());
  }
  const std::vector<SpectralField> u_lin = u;
  const std::vector<SpectralField> ut_lin = ut;

  PicardResult result;
  std::vector<Eigen::ArrayXcd> gc(n), gs(n), g0(n), g1(n);
  for (int iter = 1; iter <= config.max_picard_iters; ++iter) {
    for (Index j = 0; j < n; ++j) {
      const Eigen::ArrayXcd f = rhs_nonlinear(u[j], config.sign).coeffs();
      if (!f.allFinite())
        throw ContractionFailure("picard_solve: iterate became non-finite", result.ratios);
      gc[j] = cos_t[j] * f;
      gs[j] = sin_t[j] * f;
      g0[j] = Eigen::ArrayXcd::Constant(1, f(0));
      g1[j] = Eigen::ArrayXcd::Constant(1, h * static_cast<double>(j) * f(0));
    }
    const CumulativeQuadrature qc(gc, h), qs(gs, h), q0(g0, h), q1(g1, h);
    std::vector<SpectralField> u_next = u_lin;
    std::vector<SpectralField> ut_next = ut_lin;
    for (Index j = 0; j < n; ++j) {
      const Eigen::ArrayXcd c = qc(j), s = qs(j);
      u_next[j].coeffs() += inv_w * (sin_t[j] * c - cos_t[j] * s);
      ut_next[j].coeffs() += cos_t[j] * c + sin_t[j] * s;
      const double t = h * static_cast<double>(j);
      u_next[j].coeffs()(0) += t * q0(j)(0) - q1(j)(0);
      ut_next[j].coeffs()(0) += q0(j)(0);
    }

    double scale = 0.0;
    for (const auto& f : u_next) scale = std::max(scale, sobolev_norm(f, 1.0));
    const double diff = max_h1_distance(u_next, u);
    const double rel = scale > 0.0 ? diff / scale : 0.0;
    if (!result.differences.empty() && result.differences.back() > 0.0)
      result.ratios.push_back(rel / result.differences.back());
    result.differences.push_back(rel);
    u = std::move(u_next);
    ut = std::move(ut_next);
    result.iterations = iter;

    if (!std::isfinite(rel))
      throw ContractionFailure("picard_solve: iterate became non-finite", result.ratios);
    if (rel < config.tol_picard) {
      SolverConfig used = config;
      used.dt = h;
      result.trajectory.config = used;
      for (Index j = 0; j < n; ++j) {
        WaveState st(u[j], ut[j], h * static_cast<double>(j));
        result.trajectory.energies.push_back(energy(st).E_u);
        result.trajectory.states.push_back(std::move(st));
      }
      return result;
    }
    const std::size_t r = result.ratios.size();
    if (r >= 3 && result.ratios[r - 1] > 1.0 && result.ratios[r - 2] > 1.0 && result.ratios[r - 3] > 1.0)
      throw ContractionFailure("picard_solve: successive differences grow (delta too large)",
                               result.ratios);
  }
  throw ContractionFailure("picard_solve: no convergence within max_picard_iters", result.ratios);
}

}  // namespace bsq
