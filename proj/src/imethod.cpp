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

#include "bsq/imethod.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

void ISpec::validate() const {
  if (!(N >= 1.0) || !std::isfinite(N)) throw PreconditionError("ISpec: N must be >= 1");
  if (!(s > 0.0 && s <= 1.0)) throw PreconditionError("ISpec: s must lie in (0, 1]");
}

double i_symbol(const ISpec& spec, double xi) {
  const double a = std::abs(xi);
  if (a <= spec.N) return 1.0;
  const double tail = std::pow(spec.N / a, 1.0 - spec.s);
  if (spec.shape == MultiplierShape::sharp || a >= 2.0 * spec.N) return tail;
  const double r = (a - spec.N) / spec.N;
  const double h = r * r * r * (10.0 + r * (-15.0 + 6.0 * r));
  return 1.0 + h * (tail - 1.0);
}

Multiplier i_multiplier(const Grid& grid, const ISpec& spec) {
  spec.validate();
  Multiplier m{grid, Eigen::ArrayXcd(grid.modes()), "I_N"};
  for (Index j = 0; j < grid.modes(); ++j) m.values(j) = i_symbol(spec, grid.wavenumber(j));
  return m;
}

SpectralField apply_I(const ISpec& spec, const SpectralField& u) {
  return apply_multiplier(i_multiplier(u.grid(), spec), u);
}

EnergyParts energy_parts(const SpectralField& u, const SpectralField& ut) {
  require_same_grid(u.grid(), ut.grid(), "energy_parts");
  EnergyParts p;
  const double h1 = sobolev_norm(u, 1.0);
  const double kin = sobolev_norm(apply_multiplier(inverse_sqrt_laplacian(u.grid()), ut), 0.0);
  const double l4 = lebesgue_norm(u, 4);
  p.h1 = 0.5 * h1 * h1;
  p.kinetic = 0.5 * kin * kin;
  p.quartic = 0.25 * l4 * l4 * l4 * l4;
  return p;
}

EnergyReport energy(const WaveState& state) {
  EnergyReport r;
  r.t = state.t();
  r.parts = energy_parts(state.u(), state.ut());
  r.E_u = r.parts.sum();
  r.E_Iu = r.E_u;
  return r;
}

EnergyReport modified_energy(const WaveState& state, const ISpec& spec) {
  const Multiplier m = i_multiplier(state.grid(), spec);
  EnergyReport r;
  r.t = state.t();
  r.parts = energy_parts(apply_multiplier(m, state.u()), apply_multiplier(m, state.ut()));
  r.E_Iu = r.parts.sum();
  r.E_u = energy_parts(state.u(), state.ut()).sum();
  return r;
}

SpectralField acl_commutator(const SpectralField& u, const ISpec& spec) {
  const Multiplier m = i_multiplier(u.grid(), spec);
  return dealiased_cubic(apply_multiplier(m, u)) - apply_multiplier(m, dealiased_cubic(u));
}

namespace {

// d/dt E(Iu) along the flow with the given nonlinearity: the quartic term
// always contributes <|Iu|^2 Iu, Iu_t>, the quadratic terms -sigma <I(|u|^2 u), Iu_t>.
double rate_with_sign(const WaveState& state, const ISpec& spec, NonlinearSign sign) {
  const Multiplier m = i_multiplier(state.grid(), spec);
  const SpectralField Iu = apply_multiplier(m, state.u());
  const SpectralField Iut = apply_multiplier(m, state.ut());
  SpectralField f = dealiased_cubic(Iu);
  if (sign == NonlinearSign::defocusing)
    f -= apply_multiplier(m, dealiased_cubic(state.u()));
  else if (sign == NonlinearSign::focusing)
    f += apply_multiplier(m, dealiased_cubic(state.u()));
  return inner_product(f, Iut);
}

}  // namespace

double acl_rate(const WaveState& state, const ISpec& spec) {
  return rate_with_sign(state, spec, NonlinearSign::defocusing);
}

std::vector<double> acl_residual(const Trajectory& traj, const ISpec& spec) {
  const auto& st = traj.states;
  if (st.size() < 3) throw PreconditionError("acl_residual: need at least 3 states");
  std::vector<double> e(st.size());
  for (std::size_t j = 0; j < st.size(); ++j) e[j] = modified_energy(st[j], spec).E_Iu;
  std::vector<double> out;
  out.reserve(st.size() - 2);
  for (std::size_t j = 1; j + 1 < st.size(); ++j) {
    const double h = st[j + 1].t() - st[j - 1].t();
    if (!(h > 0.0)) throw PreconditionError("acl_residual: times must increase");
    const double de = (e[j + 1] - e[j - 1]) / h;
    out.push_back(std::abs(de - rate_with_sign(st[j], spec, traj.config.sign)));
  }
  return out;
}

double increment(const Trajectory& traj, const ISpec& spec) {
  if (traj.states.empty()) throw PreconditionError("increment: empty trajectory");
  const double e0 = modified_energy(traj.states.front(), spec).E_Iu;
  double d = 0.0;
  for (const auto& s : traj.states) d = std::max(d, std::abs(modified_energy(s, spec).E_Iu - e0));
  return d;
}

}  // namespace bsq
