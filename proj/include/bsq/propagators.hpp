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

// Exact linear flow of u_tt - u_xx + u_xxxx = 0 as diagonal Fourier
// multipliers built from the dispersion relation omega(xi) of the grid.

#ifndef BSQ_PROPAGATORS_HPP
#define BSQ_PROPAGATORS_HPP

#include "bsq/spectral.hpp"

namespace bsq {

/// The pair (u, u_t) at time t. The zero mode of u_t must vanish: data of the
/// form u_t(0) = psi_x are mean-zero, and so is the forcing (|u|^2 u)_xx.
class WaveState {
 public:
  /// Throws ShapeError on grid mismatch and PreconditionError when u_t has a
  /// nonzero mean beyond round-off (which is then cleared exactly).
  WaveState(SpectralField u, SpectralField ut, double t = 0.0);

  /// Zero state on a grid.
  static WaveState zero(const Grid& grid, double t = 0.0);

  const Grid& grid() const { return u_.grid(); }
  const SpectralField& u() const { return u_; }
  const SpectralField& ut() const { return ut_; }
  double t() const { return t_; }

 private:
  SpectralField u_;
  SpectralField ut_;
  double t_;
};

/// Per-mode symbols of the linear flow for one time increment.
class PropagatorCache {
 public:
  PropagatorCache(const Grid& grid, double dt);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }

  const Eigen::ArrayXd& cos_table() const { return cos_; }
  /// sin(omega dt) / omega, equal to dt at xi = 0.
  const Eigen::ArrayXd& sinc_table() const { return sinc_; }
  /// omega sin(omega dt).
  const Eigen::ArrayXd& omega_sin_table() const { return omega_sin_; }
  /// exp(+i omega dt) and exp(-i omega dt).
  const Eigen::ArrayXcd& phase_plus() const { return phase_plus_; }
  const Eigen::ArrayXcd& phase_minus() const { return phase_minus_; }

 private:
  Grid grid_;
  double dt_;
  Eigen::ArrayXd cos_;
  Eigen::ArrayXd sinc_;
  Eigen::ArrayXd omega_sin_;
  Eigen::ArrayXcd phase_plus_;
  Eigen::ArrayXcd phase_minus_;
};

/// V_c(t): multiplies by cos(t omega).
SpectralField vc_apply(const SpectralField& phi, double t);
/// V_s(t): multiplies by sin(t omega) / omega, with value t at xi = 0.
SpectralField vs_apply(const SpectralField& f, double t);

/// Exact solution of the linear equation at state.t() + t.
WaveState linear_evolve(const WaveState& state, double t);
WaveState linear_evolve(const WaveState& state, const PropagatorCache& cache);

/// (-Delta)^(-1/2) d/dt of the linear flow from (phi, psi_x):
/// -|xi|^-1 omega sin(t omega) phi + |xi|^-1 cos(t omega) psi_x, zero mode 0.
/// Throws PreconditionError if psi_x has a nonzero mean.
SpectralField gh_apply(const SpectralField& phi, const SpectralField& psi_x, double t);

/// Half-wave variables a+ = u - i u_t / omega, a- = u + i u_t / omega.
/// Under the linear flow a+ -> exp(+i omega t) a+ and a- -> exp(-i omega t) a-.
/// The zero mode stores the degenerate pair (u_0, u_t0) untransformed.
struct HalfWave {
  SpectralField plus;
  SpectralField minus;
};

HalfWave diagonalize(const WaveState& state);
WaveState reconstruct(const HalfWave& waves, double t);
/// Linear flow in half-wave variables (the zero mode drifts as u_0 += t u_t0).
HalfWave propagate(const HalfWave& waves, double t);

/// 1/2 ||u||_{H^1}^2 + 1/2 ||(-Delta)^(-1/2) u_t||_{L^2}^2, conserved by the
/// linear flow.
double quadratic_energy(const WaveState& state);

}  // namespace bsq

#endif  // BSQ_PROPAGATORS_HPP
