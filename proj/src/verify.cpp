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

#include "bsq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "bsq/bourgain.hpp"
#include "bsq/errors.hpp"
#include "bsq/experiments.hpp"

namespace bsq {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.module + "/" + c.name);
  return out;
}

namespace {

struct Measure {
  double measured;
  double threshold;
  bool passed;
  std::string detail = {};
};

Measure at_most(double v, double limit, std::string detail = {}) {
  return {v, limit, std::isfinite(v) && v <= limit, std::move(detail)};
}

Measure at_least(double v, double limit, std::string detail = {}) {
  return {v, limit, std::isfinite(v) && v >= limit, std::move(detail)};
}

class Runner {
 public:
  explicit Runner(VerifyReport& rep) : rep_(rep) {}

  void operator()(const char* module, const char* name, const std::function<Measure()>& fn) {
    CheckResult c;
    c.module = module;
    c.name = name;
    try {
      const Measure m = fn();
      c.passed = m.passed;
      c.measured = m.measured;
      c.threshold = m.threshold;
      c.detail = m.detail;
    } catch (const PreconditionError& e) {
      c.measured = std::numeric_limits<double>::quiet_NaN();
      c.detail = std::string("precondition: ") + e.what();
    } catch (const Error& e) {
      c.measured = std::numeric_limits<double>::quiet_NaN();
      c.detail = std::string("error: ") + e.what();
    }
    rep_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& rep_;
};

SpectralField smooth_field(const Grid& g, std::uint64_t key, double amp = 0.3) {
  CounterRng rng(7, key);
  return random_field(g, 3.0, 1.0, amp, rng);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

VerifyReport run_verify(const ExperimentConfig& config, Dispersion dispersion) {
  VerifyReport rep;
  rep.config = config;
  Runner check(rep);
  Grid* gp = nullptr;
  std::unique_ptr<Grid> holder;
  check("config", "validate", [&] {
    config.validate();
    holder = std::make_unique<Grid>(config.grid.L, config.grid.M, 0, dispersion);
    gp = holder.get();
    return Measure{0.0, 0.0, true};
  });
  if (!gp) return rep;
  const Grid& g = *gp;

  check("spectral_core", "transform_round_trip", [&] {
    const SpectralField u = smooth_field(g, 1);
    const SpectralField v = forward_transform(g, inverse_transform(u));
    return at_most((v - u).coeffs().abs().maxCoeff() / u.coeffs().abs().maxCoeff(), 1e-12);
  });

  check("spectral_core", "parseval", [&] {
    const SpectralField u = smooth_field(g, 2);
    return at_most(rel(lebesgue_norm(u, 2), sobolev_norm(u, 0.0)), 1e-12);
  });

  check("spectral_core", "cubic_vs_convolution", [&] {
    const Grid small = g.modes() <= 64 ? g : Grid(g.length(), 32, 0, dispersion);
    const SpectralField u = smooth_field(small, 3);
    const Index M = small.modes();
    const double L = small.length();
    Eigen::ArrayXcd ref = Eigen::ArrayXcd::Zero(M);
    for (Index a = -M / 2; a < M / 2; ++a)
      for (Index b = -M / 2; b < M / 2; ++b)
        for (Index c = -M / 2; c < M / 2; ++c) {
          const Index k = a - b + c;
          if (k < -M / 2 || k >= M / 2) continue;
          ref(small.slot(k)) += u.at(a) * std::conj(u.at(b)) * u.at(c) / (L * L);
        }
    const SpectralField got = dealiased_cubic(u);
    return at_most((got.coeffs() - ref).abs().maxCoeff() / ref.abs().maxCoeff(), 1e-10);
  });

  check("propagators", "plane_wave_closed_form", [&] {
    double err = 0.0;
    for (Index k : {1, 5}) {
      SpectralField u(g);
      u.at(k) = u.at(-k) = 0.5 * g.length();
      const double xi = 2.0 * M_PI * static_cast<double>(k) / g.length();
      for (double t : {0.1, 1.0}) {
        const WaveState s = linear_evolve(WaveState(u, SpectralField(g)), t);
        const double want = std::cos(dispersion_gamma(xi) * t) * 0.5 * g.length();
        err = std::max(err, std::abs(s.u().at(k) - want) / (0.5 * g.length()));
      }
    }
    return at_most(err, 1e-12);
  });

  check("propagators", "quadratic_energy_conserved", [&] {
    const WaveState s0(smooth_field(g, 4), apply_multiplier(derivative_multiplier(g, 1), smooth_field(g, 5)));
    const double e0 = quadratic_energy(s0);
    return at_most(rel(quadratic_energy(linear_evolve(s0, 3.7)), e0), 1e-12);
  });

  check("propagators", "half_wave_round_trip", [&] {
    const WaveState s0(smooth_field(g, 6), apply_multiplier(derivative_multiplier(g, 1), smooth_field(g, 7)));
    const WaveState s1 = reconstruct(diagonalize(s0), 0.0);
    const double d = sobolev_norm(s1.u() - s0.u(), 1.0) + sobolev_norm(s1.ut() - s0.ut(), -1.0);
    return at_most(d / (sobolev_norm(s0.u(), 1.0) + sobolev_norm(s0.ut(), -1.0)), 1e-12);
  });

  check("propagators", "linear_flow_matches_gamma", [&] {
    double err = 0.0;
    for (Index j = 0; j < g.modes(); ++j)
      err = std::max(err, rel(g.frequencies()(j), dispersion_gamma(g.wavenumber(j))) *
                              (g.wavenumber(j) != 0.0 ? 1.0 : 0.0));
    return at_most(err, 1e-14);
  });

  check("imethod", "smoothing_sandwich", [&] {
    double worst = 0.0;
    const double s = 0.75;
    for (double N : {4.0, 16.0, 64.0}) {
      for (double s0 : {0.0, s}) {
        for (std::uint64_t r = 0; r < 20; ++r) {
          CounterRng rng(11, r);
          const SpectralField u = random_field(g, 0.3, 0.0, 1.0, rng);
          const double mid = sobolev_norm(apply_I({N, s, MultiplierShape::sharp}, u), s0 + 1.0 - s);
          const double lo = sobolev_norm(u, s0);
          const double hi = 2.0 * std::pow(N, 1.0 - s) * lo;
          worst = std::max({worst, lo / mid, mid / hi});
        }
      }
    }
    return at_most(worst, 1.0 + 1e-12, "max of the two sandwich ratios");
  });

  check("imethod", "band_limited_identity", [&] {
    SpectralField u(g), v(g);
    u.at(1) = u.at(-1) = 0.4;
    v.at(1) = Complex(0.0, 0.3);
    v.at(-1) = Complex(0.0, -0.3);
    const WaveState s(u, v);
    const ISpec spec{std::max(1.0, 2.0 * g.wavenumber(1)), 0.6, MultiplierShape::sharp};
    return at_most(rel(modified_energy(s, spec).E_Iu, energy(s).E_u), 1e-14);
  });

  check("imethod", "commutator_vanishes_below_N_over_3", [&] {
    SpectralField u(g);
    u.at(1) = u.at(-1) = 0.5;
    const ISpec spec{std::max(1.0, 3.0 * g.wavenumber(1)), 0.6, MultiplierShape::sharp};
    return at_most(acl_commutator(u, spec).coeffs().abs().maxCoeff(), 1e-12);
  });

  check("solver", "energy_conservation", [&] {
    const WaveState s0(smooth_field(g, 8), apply_multiplier(derivative_multiplier(g, 1), smooth_field(g, 9)));
    SolverConfig c;
    c.dt = 1e-3;
    const double e0 = energy(s0).E_u;
    const WaveState s1 = evolve_observed(s0, 0.1, c, nullptr);
    return at_most(rel(energy(s1).E_u, e0), 1e-8);
  });

  check("bourgain", "weight_comparison_range", [&] {
    const RatioRange r = weight_comparison_range(100.0, 401, g.dispersion());
    const double excess = std::max(2.0 / 3.0 - r.min, r.max - 1.5);
    return at_most(excess, 0.0, "min " + std::to_string(r.min) + ", max " + std::to_string(r.max));
  });

  check("bourgain", "pm_split_identity", [&] {
    const SpectralField phi = smooth_field(g, 10);
    const SpaceTimeField f = free_evolution(phi, smooth_field(g, 11), 0.5, 64);
    const double x = xsb_norm(f, 0.5, 0.51);
    const auto [p, m] = decompose_pm(f);
    const double xp = xpm_norm(p, 0.5, 0.51, +1), xm = xpm_norm(m, 0.5, 0.51, -1);
    return at_most(rel(xp * xp + xm * xm, x * x), 1e-10);
  });

  check("bourgain", "xsb_monotone", [&] {
    const SpaceTimeField f = free_evolution(smooth_field(g, 12), smooth_field(g, 13), 0.5, 64);
    const double a = xsb_norm(f, 0.0, 0.3), b = xsb_norm(f, 0.0, 0.6), c = xsb_norm(f, 0.5, 0.6);
    return at_least(std::min(b - a, c - b), 0.0);
  });

  check("bourgain", "xsb_weight_variants", [&] {
    const SpaceTimeField f = free_evolution(smooth_field(g, 14), smooth_field(g, 15), 0.5, 64);
    const double b = 0.51;
    const double q = xsb_norm(f, 0.5, b) / xsb_norm(f, 0.5, b, XsbWeight::xi_squared);
    return at_most(std::abs(std::log(q)), b * std::log(3.0));
  });

  check("experiments", "slope_fit_recovery", [&] {
    std::vector<SweepRow> rows;
    for (std::uint64_t s = 0; s < 3; ++s)
      for (double N : {16.0, 32.0, 64.0, 128.0}) {
        SweepRow r;
        r.seed = s;
        r.N = N;
        r.increment = r.normalized_increment = 3.0 * static_cast<double>(s + 1) / (N * N);
        rows.push_back(r);
      }
    return at_most(std::abs(fit_sweep_slope(rows, false, 1).slope + 2.0), 1e-6);
  });

  check("experiments", "config_round_trip", [&] {
    const nlohmann::json j = to_json(config);
    return at_most(to_json(from_json(j)) == j ? 0.0 : 1.0, 0.0);
  });

  return rep;
}

}  // namespace bsq
