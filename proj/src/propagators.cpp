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

#include "bsq/propagators.hpp"

#include "bsq/errors.hpp"

namespace bsq {
namespace {

constexpr double kMeanTolerance = 1e-12;

// True when the zero mode is round-off relative to the rest of the field.
bool has_zero_mean(const SpectralField& f) {
  const double scale = std::max(1.0, f.coeffs().abs().maxCoeff());
  return std::abs(f.coeffs()(0)) <= kMeanTolerance * scale;
}

Eigen::ArrayXd sinc_symbol(const Eigen::ArrayXd& omega, double t) {
  Eigen::ArrayXd out(omega.size());
  for (Index j = 0; j < omega.size(); ++j)
    out(j) = omega(j) == 0.0 ? t : std::sin(t * omega(j)) / omega(j);
  return out;
}

}  // namespace

WaveState::WaveState(SpectralField u, SpectralField ut, double t)
    : u_(std::move(u)), ut_(std::move(ut)), t_(t) {
  require_same_grid(u_.grid(), ut_.grid(), "WaveState");
  if (!has_zero_mean(ut_))
    throw PreconditionError("WaveState: u_t must have zero mean (got |mean coeff| = " +
                            std::to_string(std::abs(ut_.coeffs()(0))) + ")");
  ut_.coeffs()(0) = 0.0;
}

WaveState WaveState::zero(const Grid& grid, double t) {
  return WaveState(SpectralField(grid), SpectralField(grid), t);
}

PropagatorCache::PropagatorCache(const Grid& grid, double dt) : grid_(grid), dt_(dt) {
  const Eigen::ArrayXd& w = grid.frequencies();
  cos_ = (dt * w).cos();
  sinc_ = sinc_symbol(w, dt);
  omega_sin_ = w * (dt * w).sin();
  const Complex i(0.0, 1.0);
  phase_plus_ = (i * (dt * w).cast<Complex>()).exp();
  phase_minus_ = phase_plus_.conjugate();
}

SpectralField vc_apply(const SpectralField& phi, double t) {
  return SpectralField(phi.grid(), (t * phi.grid().frequencies()).cos() * phi.coeffs());
}

SpectralField vs_apply(const SpectralField& f, double t) {
  return SpectralField(f.grid(), sinc_symbol(f.grid().frequencies(), t) * f.coeffs());
}

WaveState linear_evolve(const WaveState& state, const PropagatorCache& cache) {
  require_same_grid(state.grid(), cache.grid(), "linear_evolve");
  const Eigen::ArrayXcd& u = state.u().coeffs();
  const Eigen::ArrayXcd& ut = state.ut().coeffs();
  Eigen::ArrayXcd u1 = cache.cos_table() * u + cache.sinc_table() * ut;
  Eigen::ArrayXcd ut1 = cache.cos_table() * ut - cache.omega_sin_table() * u;
  return WaveState(SpectralField(state.grid(), std::move(u1)),
                   SpectralField(state.grid(), std::move(ut1)), state.t() + cache.dt());
}

WaveState linear_evolve(const WaveState& state, double t) {
  return linear_evolve(state, PropagatorCache(state.grid(), t));
}

SpectralField gh_apply(const SpectralField& phi, const SpectralField& psi_x, double t) {
  require_same_grid(phi.grid(), psi_x.grid(), "gh_apply");
  if (!has_zero_mean(psi_x)) throw PreconditionError("gh_apply: psi_x must have zero mean");
  const Grid& g = phi.grid();
  const Eigen::ArrayXd& w = g.frequencies();
  Eigen::ArrayXd inv_abs = g.wavenumbers().abs().inverse();
  inv_abs(0) = 0.0;
  Eigen::ArrayXcd out = inv_abs * (-(w * (t * w).sin()) * phi.coeffs() +
                                   (t * w).cos() * psi_x.coeffs());
  return SpectralField(g, std::move(out));
}

HalfWave diagonalize(const WaveState& state) {
  const Grid& g = state.grid();
  const Complex i(0.0, 1.0);
  Eigen::ArrayXd inv_w = g.frequencies().inverse();
  inv_w(0) = 0.0;
  const Eigen::ArrayXcd& u = state.u().coeffs();
  const Eigen::ArrayXcd rot = i * inv_w * state.ut().coeffs();
  Eigen::ArrayXcd plus = u - rot;
  Eigen::ArrayXcd minus = u + rot;
  plus(0) = u(0);
  minus(0) = state.ut().coeffs()(0);
  return {SpectralField(g, std::move(plus)), SpectralField(g, std::move(minus))};
}

WaveState reconstruct(const HalfWave& waves, double t) {
  require_same_grid(waves.plus.grid(), waves.minus.grid(), "reconstruct");
  const Grid& g = waves.plus.grid();
  const Complex i(0.0, 1.0);
  const Eigen::ArrayXcd& p = waves.plus.coeffs();
  const Eigen::ArrayXcd& m = waves.minus.coeffs();
  Eigen::ArrayXcd u = 0.5 * (p + m);
  Eigen::ArrayXcd ut = (0.5 * i) * g.frequencies() * (p - m);
  u(0) = p(0);
  ut(0) = m(0);
  return WaveState(SpectralField(g, std::move(u)), SpectralField(g, std::move(ut)), t);
}

HalfWave propagate(const HalfWave& waves, double t) {
  const Grid& g = waves.plus.grid();
  const Complex i(0.0, 1.0);
  const Eigen::ArrayXcd phase = (i * (t * g.frequencies()).cast<Complex>()).exp();
  HalfWave out{SpectralField(g, phase * waves.plus.coeffs()),
               SpectralField(g, phase.conjugate() * waves.minus.coeffs())};
  out.plus.coeffs()(0) = waves.plus.coeffs()(0) + t * waves.minus.coeffs()(0);
  out.minus.coeffs()(0) = waves.minus.coeffs()(0);
  return out;
}

double quadratic_energy(const WaveState& state) {
  const double h1 = sobolev_norm(state.u(), 1.0);
  const double kin = sobolev_norm(apply_multiplier(inverse_sqrt_laplacian(state.grid()), state.ut()), 0.0);
  return 0.5 * h1 * h1 + 0.5 * kin * kin;
}

}  // namespace bsq
