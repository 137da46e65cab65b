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

// The I_N smoothing operator, energies E(u), E(Iu), and the almost
// conservation diagnostics.

#ifndef BSQ_IMETHOD_HPP
#define BSQ_IMETHOD_HPP

#include <limits>
#include <vector>

#include "bsq/solver.hpp"

namespace bsq {

enum class MultiplierShape { sharp, smooth };

/// m(xi) = 1 for |xi| <= N and (N / |xi|)^(1 - s) beyond (sharp), or the
/// same with a monotone C^2 blend on (N, 2N) (smooth).
struct ISpec {
  double N = 1.0;
  double s = 0.5;
  MultiplierShape shape = MultiplierShape::sharp;

  void validate() const;
};

double i_symbol(const ISpec& spec, double xi);
Multiplier i_multiplier(const Grid& grid, const ISpec& spec);
SpectralField apply_I(const ISpec& spec, const SpectralField& u);

struct EnergyParts {
  double h1 = 0.0;       ///< 1/2 ||u||_{H^1}^2
  double kinetic = 0.0;  ///< 1/2 ||(-Delta)^(-1/2) u_t||_{L^2}^2
  double quartic = 0.0;  ///< 1/4 ||u||_{L^4}^4

  double sum() const { return h1 + kinetic + quartic; }
};

struct EnergyReport {
  double t = 0.0;
  double E_u = 0.0;
  double E_Iu = 0.0;
  /// Summands of the energy this report is about (E(u) for `energy`,
  /// E(Iu) for `modified_energy`).
  EnergyParts parts;
  /// Defect of d/dt E(Iu) = <|Iu|^2 Iu - I(|u|^2 u), d_t Iu>; NaN unless filled
  /// by a trajectory diagnostic.
  double acl_residual = std::numeric_limits<double>::quiet_NaN();
};

EnergyParts energy_parts(const SpectralField& u, const SpectralField& ut);

/// E(u) of a state. E_Iu is set equal to E_u (I is the identity here).
EnergyReport energy(const WaveState& state);
/// E(Iu) of (Iu, I u_t); E_u carries the unmodified energy.
EnergyReport modified_energy(const WaveState& state, const ISpec& spec);

/// |Iu|^2 Iu - I(|u|^2 u).
SpectralField acl_commutator(const SpectralField& u, const ISpec& spec);
/// <|Iu|^2 Iu - I(|u|^2 u), d_t Iu>, the instantaneous rate of E(Iu).
double acl_rate(const WaveState& state, const ISpec& spec);

/// |centered difference of E(Iu) - acl_rate| at each interior stored time.
/// Needs >= 3 states on a uniform time grid.
std::vector<double> acl_residual(const Trajectory& traj, const ISpec& spec);

/// max_t |E(Iu)(t) - E(Iu)(0)| over the stored states.
double increment(const Trajectory& traj, const ISpec& spec);

}  // namespace bsq

#endif  // BSQ_IMETHOD_HPP
