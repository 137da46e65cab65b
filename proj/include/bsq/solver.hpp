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

// Nonlinear time integration of u_tt - u_xx + u_xxxx -/+ (|u|^2 u)_xx = 0.

#ifndef BSQ_SOLVER_HPP
#define BSQ_SOLVER_HPP

#include <functional>
#include <vector>

#include "bsq/propagators.hpp"

namespace bsq {

/// Sign of the cubic term. `defocusing` is u_tt - u_xx + u_xxxx - (|u|^2 u)_xx = 0,
/// `focusing` flips the sign, `off` drops it (linear equation).
enum class NonlinearSign { defocusing, focusing, off };

enum class Scheme { integrating_factor_rk4 };

struct SolverConfig {
  double dt = 1e-3;
  NonlinearSign sign = NonlinearSign::defocusing;
  Scheme scheme = Scheme::integrating_factor_rk4;
  double tol_picard = 1e-10;
  int max_picard_iters = 60;

  /// Throws PreconditionError on out-of-range fields.
  void validate() const;
};

struct Trajectory {
  std::vector<WaveState> states;
  SolverConfig config;
  /// E(u) of every stored state.
  std::vector<double> energies;
};

/// +/- d_x^2 (|u|^2 u) in Fourier space, with the sign of the PDE's forcing
/// (u_tt = u_xx - u_xxxx + F).
SpectralField rhs_nonlinear(const SpectralField& u, NonlinearSign sign);

/// Lawson (integrating-factor) classical Runge-Kutta step in half-wave
/// variables: the linear part exp(+/- i omega t) is integrated exactly, the
/// nonlinear part -/+ i F / omega by the four-stage rule.
class Stepper {
 public:
  Stepper(const Grid& grid, const SolverConfig& config);

  const SolverConfig& config() const { return config_; }

  /// Advances by dt. Throws DivergenceError(step_index) on non-finite stages.
  WaveState step(const WaveState& state, long step_index = 0) const;

 private:
  struct Pair {
    Eigen::ArrayXcd plus;
    Eigen::ArrayXcd minus;
  };

  Pair nonlinear(const Pair& a) const;
  void half_flow(Pair& a) const;

  Grid grid_;
  SolverConfig config_;
  Eigen::ArrayXcd half_phase_;
  Eigen::ArrayXd inv_omega_;
};

WaveState step(const WaveState& state, const SolverConfig& config);

using StepObserver = std::function<void(const WaveState&)>;

/// Trajectory from state.t() to state.t() + T; T must be a whole number of
/// steps. T = 0 gives the single initial state.
Trajectory evolve(const WaveState& state, double T, const SolverConfig& config);

/// Same integration without storing states; the observer sees every state
/// including the initial one. Returns the final state.
WaveState evolve_observed(const WaveState& state, double T, const SolverConfig& config,
                          const StepObserver& observer);

/// Existence time min(1, (kappa / S^2)^(1 / (1/2 - eps))) for a data size S.
double local_delta_from_size(double size, double kappa, double eps);

/// Existence time with S = ||I phi||_{H^1} + ||I psi||_{L^2} (sharp I_N).
double local_delta(const SpectralField& phi, const SpectralField& psi, double N, double s,
                   double kappa, double eps);

struct PicardResult {
  Trajectory trajectory;
  /// Successive-difference ratios ||w_{k+1} - w_k|| / ||w_k - w_{k-1}||.
  std::vector<double> ratios;
  /// Relative successive differences in C([0, delta]; H^1).
  std::vector<double> differences;
  int iterations = 0;
};

/// Default number of time samples (odd, >= 33) for picard_solve on [0, delta].
Index picard_sample_count(const Grid& grid, double delta);

/// Fixed point of w = V_c(t) phi + V_s(t) psi_x + int_0^t V_s(t - t') F(w(t')) dt'
/// on a uniform time grid, the Duhamel integral by composite Simpson
/// quadrature. Throws ContractionFailure carrying the ratio history when the
/// iteration does not converge.
PicardResult picard_solve(const SpectralField& phi, const SpectralField& psi, double delta,
                          const SolverConfig& config, Index samples = 0);

}  // namespace bsq

#endif  // BSQ_SOLVER_HPP
