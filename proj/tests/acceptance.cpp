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

// Acceptance gate: one PASS/FAIL line per criterion. Tolerances are fixed
// here and are not configurable.
//
//   acceptance                 run every criterion
//   acceptance --criterion 5   run one

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/experiments.hpp"
#include "oracles.hpp"

using namespace bsq;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

WaveState state_of(const InitialData& d) { return oracle::state_from(d.phi, d.psi); }

// 1. plane waves against cos(gamma t) cos(kx)
Outcome exact_linear() {
  const Grid g(2.0 * pi, 64);
  const Eigen::ArrayXd x = g.points();
  double worst = 0.0;
  for (Index k : {1, 5, 20}) {
    SpectralField u(g);
    u.at(k) = u.at(-k) = 0.5 * g.length();
    for (double t : {0.1, 1.0, 10.0}) {
      const Eigen::ArrayXcd got = inverse_transform(linear_evolve(WaveState(u, SpectralField(g)), t).u());
      const Eigen::ArrayXd want = std::cos(dispersion_gamma(static_cast<double>(k)) * t) *
                                  (static_cast<double>(k) * x).cos();
      worst = std::max(worst, (got - want.cast<Complex>()).abs().maxCoeff());
    }
  }
  return {worst <= 1e-12, "max error / amplitude " + fmt("%.3e", worst) + " (tol 1e-12)"};
}

// 2. self-convergence order of the time stepper
Outcome scheme_order() {
  const Grid g(2.0 * pi, 32);
  SpectralField phi(g), psi(g);
  phi.at(1) = phi.at(-1) = pi;
  phi.at(2) = Complex(0.0, -0.5 * pi);
  phi.at(-2) = std::conj(phi.at(2));
  psi.at(3) = psi.at(-3) = 0.3 * pi;
  const WaveState s0 = oracle::state_from(phi, psi);
  std::vector<WaveState> finals;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    SolverConfig cfg;
    cfg.dt = dt;
    finals.push_back(evolve(s0, 1.0, cfg).states.back());
  }
  const double e1 = sobolev_norm(finals[0].u() - finals[1].u(), 1.0);
  const double e2 = sobolev_norm(finals[1].u() - finals[2].u(), 1.0);
  const double p = std::log2(e1 / e2);
  return {std::abs(p - 4.0) <= 0.3, "order " + fmt("%.3f", p) + " (want 4.0 +/- 0.3)"};
}

// 3. energy drift of a defocusing run and its dt refinement
Outcome energy_conservation() {
  const Grid g(2.0 * pi, 512);
  const WaveState s0 = state_of(synthesize_data(g, 0.75, 3.5, 1.0, 3, 0));
  std::vector<double> drift;
  for (double dt : {1e-3, 5e-4}) {
    SolverConfig cfg;
    cfg.dt = dt;
    const Trajectory tr = evolve(s0, 1.0, cfg);
    double d = 0.0;
    for (double e : tr.energies) d = std::max(d, std::abs(e - tr.energies.front()) / tr.energies.front());
    drift.push_back(d);
  }
  const double gain = drift[0] / drift[1];
  return {drift[0] <= 1e-8 && gain >= 12.0,
          "drift " + fmt("%.3e", drift[0]) + " (tol 1e-8), halving dt gains " + fmt("%.1f", gain) +
              "x (want >= 12)"};
}

// 4. the energy-derivative identity
Outcome acl_identity() {
  const Grid g(2.0 * pi, 64);
  const ISpec spec{4.0, 0.6, MultiplierShape::sharp};
  const WaveState s0 = state_of(synthesize_data(g, 0.6, 3.0, 1.0, 4, 0));
  std::vector<double> peak;
  for (double dt : {2e-3, 1e-3}) {
    SolverConfig cfg;
    cfg.dt = dt;
    const auto r = acl_residual(evolve(s0, 0.2, cfg), spec);
    peak.push_back(*std::max_element(r.begin(), r.end()));
  }
  const double order = std::log2(peak[0] / peak[1]);

  // every mode below N/3: the commutator vanishes and the residual is the
  // centered-difference drift of E(u)
  const Grid h(2.0 * pi, 16);
  const ISpec wide{24.0, 0.6, MultiplierShape::sharp};
  const WaveState b0 = state_of(synthesize_data(h, 0.6, 3.0, 1.0, 4, 1));
  SolverConfig cfg;
  cfg.dt = 1e-2;
  const Trajectory tr = evolve(b0, 0.5, cfg);
  const auto r = acl_residual(tr, wide);
  double mismatch = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double drift = std::abs(tr.energies[j + 2] - tr.energies[j]) / (2.0 * cfg.dt);
    mismatch = std::max(mismatch, std::abs(r[j] - drift));
  }
  return {order >= 1.8 && mismatch <= 1e-14,
          "residual order " + fmt("%.3f", order) + " (want >= 1.8), band-limited mismatch " +
              fmt("%.1e", mismatch) + " (tol 1e-14)"};
}

// 5. decay of the modified-energy increment in N
Outcome acl_decay() {
  const ExperimentConfig c = default_config(ExperimentKind::sweep_acl);
  std::string err;
  const SweepResult r = run_sweep_acl(c, &err);
  if (!err.empty()) return {false, "fit failed: " + err};
  const bool ok = r.raw.slope <= -1.5 && r.normalized.slope <= -1.5;
  return {ok, "raw slope " + fmt("%.3f", r.raw.slope) + " [" + fmt("%.3f", r.raw.ci_low) + ", " +
                  fmt("%.3f", r.raw.ci_high) + "], normalized slope " + fmt("%.3f", r.normalized.slope) +
                  " (want both <= -1.5)"};
}

// 6. comparability of the two hyperbolic weights
Outcome weight_lemma() {
  const RatioRange r = weight_comparison_range(100.0, 2001);
  return {r.min >= 2.0 / 3.0 && r.max <= 1.5,
          "ratio in [" + fmt("%.4f", r.min) + ", " + fmt("%.4f", r.max) + "] (want within [2/3, 3/2])"};
}

// 7. ||u||_{H^s0} <= ||Iu||_{H^(s0+1-s)} <= 2 N^(1-s) ||u||_{H^s0}
Outcome smoothing_sandwich() {
  const Grid g(2.0 * pi, 512);
  const double s = default_config(ExperimentKind::sweep_acl).ispec.s;
  int violations = 0;
  double tightest_left = 1e300, tightest_right = 1e300;
  for (int f = 0; f < 100; ++f) {
    CounterRng rng(77, static_cast<std::uint64_t>(f));
    const double decay = 0.5 + 2.0 * rng.uniform();
    const SpectralField u = random_field(g, decay, 0.0, 1.0, rng);
    for (double N : {4.0, 16.0, 64.0}) {
      const SpectralField Iu = apply_I(ISpec{N, s, MultiplierShape::sharp}, u);
      for (double s0 : {0.0, s}) {
        const double lhs = sobolev_norm(u, s0);
        const double mid = sobolev_norm(Iu, s0 + 1.0 - s);
        const double rhs = 2.0 * std::pow(N, 1.0 - s) * lhs;
        if (!(lhs <= mid) || !(mid <= rhs)) ++violations;
        tightest_left = std::min(tightest_left, mid / lhs);
        tightest_right = std::min(tightest_right, rhs / mid);
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in 600 cases; min mid/left " +
                               fmt("%.4f", tightest_left) + ", min right/mid " + fmt("%.4f", tightest_right)};
}

// 8. bilinear gain for frequency-separated packets
Outcome bilinear_gain() {
  const Grid g(16.0 * pi, 4096);
  const double delta = 0.4;
  std::vector<double> scaled, raw;
  for (double N2 : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    const Index n = auto_time_samples(dispersion_gamma(2.0 * N2), delta);
    const DyadicPiece f1 = wave_packet(g, delta, n, 12.0, 1.0, Band{8.0, 16.0}, g.length() / 2, delta / 2);
    const DyadicPiece f2 =
        wave_packet(g, delta, n, -1.5 * N2, 1.0, Band{N2, 2.0 * N2}, g.length() / 2, delta / 2);
    const double r = bilinear_ratio(f1, f2);
    scaled.push_back(r);
    raw.push_back(r / std::sqrt(N2));
  }
  const double spread = *std::max_element(scaled.begin(), scaled.end()) /
                        *std::min_element(scaled.begin(), scaled.end());
  bool monotone = true;
  for (std::size_t i = 1; i < raw.size(); ++i) monotone = monotone && raw[i] < raw[i - 1];
  std::string d = "N2^(1/2) ratio spread " + fmt("%.3f", spread) + " (want < 4); control without the factor";
  for (double r : raw) d += " " + fmt("%.4f", r);
  d += monotone ? " (strictly monotone)" : " (not monotone)";
  return {spread < 4.0 && monotone, d};
}

// 9. local theory ladder
Outcome local_theory() {
  const ContractionReport r = run_contraction(default_config(ExperimentKind::contraction));
  bool all = true;
  std::string d = "admissible delta";
  for (const auto& row : r.rows) {
    all = all && row.contracted;
    d += " " + fmt("%.4g", row.admissible_delta);
  }
  d += r.monotone ? " (decreasing)" : " (not decreasing)";
  d += std::string(all ? ", all contract at the rule delta" : ", some fail at the rule delta");
  d += ", picard vs evolve " + fmt("%.2e", r.evolve_agreement) + " (tol 1e-6)";
  return {all && r.rows.size() == 4 && r.monotone && r.evolve_agreement <= 1e-6, d};
}

// 10. polynomial growth bound
Outcome global_growth() {
  const ExperimentConfig c = default_config(ExperimentKind::growth);
  try {
    const GrowthRecord r = run_growth(c);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.times.size(); ++i) worst = std::max(worst, r.sup_norms[i] / r.bound_curve[i]);
    const bool ok = worst <= 1.0 + 1e-12 && r.N_used == growth_threshold(c.T, c.ispec.s) &&
                    std::abs(r.exponent - 0.5) < 1e-15;
    return {ok, std::to_string(r.times.size()) + " checkpoints, N = " + fmt("%g", r.N_used) +
                    ", max sup / bound " + fmt("%.4f", worst) + " (want <= 1), E(Iu) within 2x of start"};
  } catch (const MonitorError& e) {
    return {false, e.what()};
  }
}

// 11. fast paths against brute-force references
Outcome oracle_equivalence() {
  double cubic = 0.0, dft = 0.0;
  for (Index M : {16, 32, 64}) {
    const Grid g(2.0 * pi, M);
    const SpectralField u = oracle::smooth(g, static_cast<std::uint64_t>(M), 1.0);
    const Eigen::ArrayXcd want = oracle::triple_convolution(u);
    cubic = std::max(cubic, (dealiased_cubic(u).coeffs() - want).abs().maxCoeff() / want.abs().maxCoeff());
    const Eigen::ArrayXcd x = inverse_transform(u);
    const Eigen::ArrayXcd c = oracle::direct_dft(g, x);
    dft = std::max(dft, (forward_transform(g, x).coeffs() - c).abs().maxCoeff() / c.abs().maxCoeff());
  }
  const Grid g(2.0 * pi, 32);
  std::vector<SpectralField> fields;
  for (Index j = 0; j < 32; ++j) fields.push_back(oracle::smooth(g, 500 + static_cast<std::uint64_t>(j), 1.0));
  const SpaceTimeField f = sample_fields(fields, 0.8);
  Eigen::MatrixXcd samples(32, 32);
  for (Index j = 0; j < 32; ++j) samples.col(j) = inverse_transform(f.at_time(j)).matrix();
  const double want = oracle::xsb_direct(g, 0.8, samples, 0.6, 0.51);
  const double xsb = oracle::rel(xsb_norm(f, 0.6, 0.51), want);
  return {cubic <= 1e-10 && dft <= 1e-12 && xsb <= 1e-8,
          "cubic " + fmt("%.1e", cubic) + " (tol 1e-10), transform " + fmt("%.1e", dft) + " (tol 1e-12), xsb " +
              fmt("%.1e", xsb) + " (tol 1e-8)"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {"exact linear propagation", exact_linear},
      {"scheme order", scheme_order},
      {"energy conservation", energy_conservation},
      {"energy-derivative identity", acl_identity},
      {"almost-conservation decay", acl_decay},
      {"hyperbolic weight comparison", weight_lemma},
      {"smoothing sandwich", smoothing_sandwich},
      {"bilinear gain", bilinear_gain},
      {"local theory", local_theory},
      {"global growth shape", global_growth},
      {"oracle equivalences", oracle_equivalence},
  };

  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
