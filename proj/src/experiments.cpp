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

#include "bsq/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

CounterRng::CounterRng(std::uint64_t master, std::uint64_t key)
    : base_(mix(master + kGolden) ^ mix(key * kGolden + 0x632be59bd9b4e019ULL)) {}

std::uint64_t CounterRng::next() { return mix(base_ + kGolden * ++counter_); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SpectralField random_field(const Grid& grid, double decay, double reg, double norm, CounterRng& rng) {
  SpectralField u(grid);
  const Index M = grid.modes();
  for (Index k = 1; k < M / 2; ++k) {
    const double a = std::pow(bracket(grid.wavenumber(k)), -decay);
    const double th = 2.0 * M_PI * rng.uniform();
    u.coeffs()(k) = std::polar(a, th);
    u.coeffs()(M - k) = std::conj(u.coeffs()(k));
  }
  const double n = sobolev_norm(u, reg);
  if (n > 0.0) u.coeffs() *= norm / n;
  return u;
}

InitialData synthesize_data(const Grid& grid, double s, double slope, double amplitude,
                            std::uint64_t master, std::uint64_t stream) {
  CounterRng rng(master, stream);
  SpectralField phi = random_field(grid, slope, s, amplitude, rng);
  SpectralField psi = random_field(grid, slope - 1.0, s - 1.0, amplitude, rng);
  return {std::move(phi), std::move(psi)};
}

InitialData load_data(const Grid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("data: cannot read '" + path + "'");
  const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw PreconditionError("data: '" + path + "' is not a JSON object");
  auto read = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
      throw PreconditionError(std::string("data: missing array '") + key + "'");
    const auto& a = j.at(key);
    if (static_cast<Index>(a.size()) != grid.modes())
      throw ShapeError(std::string("data: '") + key + "' must have M entries");
    SpectralField f(grid);
    for (Index k = 0; k < grid.modes(); ++k) {
      const auto& e = a.at(static_cast<std::size_t>(k));
      if (!e.is_array() || e.size() != 2) throw PreconditionError("data: entries must be [re, im]");
      f.coeffs()(k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return f;
  };
  return {read("phi"), read("psi")};
}

InitialData initial_data(const ExperimentConfig& config, std::uint64_t stream) {
  const Grid grid(config.grid.L, config.grid.M);
  if (!config.data.file.empty()) return load_data(grid, config.data.file);
  return synthesize_data(grid, config.ispec.s, config.slope(), config.data.amplitude, config.data.seed,
                         stream);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("fit_line: size mismatch");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (x.size() < 2 || !(sxx > 0.0)) throw FitError("fit_line: need at least two distinct x values");
  return {sxy / sxx, my - sxy / sxx * mx};
}

namespace {

double row_value(const SweepRow& r, bool normalized) {
  return normalized ? r.normalized_increment : r.increment;
}

bool row_valid(const SweepRow& r, bool normalized) {
  const double v = row_value(r, normalized);
  return r.status == "ok" && std::isfinite(v) && v > 0.0;
}

LineFit fit_rows(const std::vector<const SweepRow*>& rows, bool normalized) {
  std::vector<double> x, y;
  for (const SweepRow* r : rows) {
    x.push_back(std::log2(r->N));
    y.push_back(std::log2(row_value(*r, normalized)));
  }
  return fit_line(x, y);
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double f = pos - static_cast<double>(i);
  return i + 1 < v.size() ? v[i] * (1.0 - f) + v[i + 1] * f : v[i];
}

}  // namespace

SlopeFit fit_sweep_slope(const std::vector<SweepRow>& rows, bool normalized, std::uint64_t seed,
                         int resamples) {
  std::vector<const SweepRow*> valid;
  std::set<double> ns;
  std::map<std::uint64_t, std::vector<const SweepRow*>> by_seed;
  for (const auto& r : rows) {
    if (!row_valid(r, normalized)) continue;
    valid.push_back(&r);
    ns.insert(r.N);
    by_seed[r.seed].push_back(&r);
  }
  if (ns.size() < 3) throw FitError("slope fit needs at least 3 valid N values");
  SlopeFit fit;
  fit.slope = fit_rows(valid, normalized).slope;
  if (std::abs(fit.slope) * std::log2(*ns.rbegin() / *ns.begin()) < 1.0)
    throw FitError("flat/no signal: increments do not change across the N range");

  std::vector<std::uint64_t> seeds;
  for (const auto& [k, v] : by_seed) seeds.push_back(k);
  std::vector<double> boot;
  CounterRng rng(seed, 0xb0075ULL + (normalized ? 1 : 0));
  for (int b = 0; b < resamples; ++b) {
    std::vector<const SweepRow*> pick;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(seeds.size()));
      const auto& v = by_seed[seeds[std::min(idx, seeds.size() - 1)]];
      pick.insert(pick.end(), v.begin(), v.end());
    }
    try {
      boot.push_back(fit_rows(pick, normalized).slope);
    } catch (const FitError&) {
    }
  }
  if (boot.empty()) {
    fit.ci_low = fit.ci_high = fit.slope;
  } else {
    fit.ci_low = percentile(boot, 0.025);
    fit.ci_high = percentile(boot, 0.975);
  }
  return fit;
}

SweepRow sweep_cell(const ExperimentConfig& config, const InitialData& data, std::uint64_t seed,
                    double N) {
  SweepRow row;
  row.seed = seed;
  row.N = N;
  const Grid& grid = data.phi.grid();
  const ISpec spec{N, config.ispec.s, config.ispec.shape};
  spec.validate();
  row.delta = config.delta > 0.0
                  ? config.delta
                  : local_delta(data.phi, data.psi, N, config.ispec.s, config.solver.kappa, config.solver.eps);
  const Index n = config.norms.time_samples > 0 ? config.norms.time_samples
                                                : auto_time_samples(grid.max_frequency(), row.delta);
  const int sub = config.solver.substeps;
  SolverConfig sc = config.solver_config();
  sc.dt = row.delta / static_cast<double>((n - 1) * sub);

  const Multiplier m = i_multiplier(grid, spec);
  const Multiplier dinv = compose(m, inverse_sqrt_laplacian(grid));
  Eigen::MatrixXcd iu(grid.modes(), n), iv(grid.modes(), n);
  double e0 = 0.0;
  double inc = 0.0;
  long count = 0;
  try {
    WaveState state(data.phi, apply_multiplier(derivative_multiplier(grid, 1), data.psi));
    evolve_observed(state, row.delta, sc, [&](const WaveState& st) {
      if (count % sub == 0) {
        const Index j = count / sub;
        iu.col(j) = apply_multiplier(m, st.u()).coeffs().matrix();
        iv.col(j) = apply_multiplier(dinv, st.ut()).coeffs().matrix();
        const double e = modified_energy(st, spec).E_Iu;
        if (j == 0) e0 = e;
        inc = std::max(inc, std::abs(e - e0));
      }
      ++count;
    });
  } catch (const NumericalError& e) {
    row.status = std::string("diverged: ") + e.what();
    row.increment = row.normalized_increment = kNaN;
    return row;
  }
  row.energy0 = e0;
  row.increment = inc;
  std::vector<Index> all(static_cast<std::size_t>(grid.modes()));
  for (Index k = 0; k < grid.modes(); ++k) all[k] = k;
  const double a = xsb_norm(SpaceTimeField(grid, row.delta, all, std::move(iu)), 1.0, config.norms.b);
  row.xsb_dt = xsb_norm(SpaceTimeField(grid, row.delta, all, std::move(iv)), 0.0, config.norms.b);
  row.xsb_cubed = a * a * a;
  const double den = row.xsb_cubed * row.xsb_dt;
  row.normalized_increment = den > 0.0 ? inc / den : kNaN;
  return row;
}

SweepResult run_sweep_acl(const ExperimentConfig& config, std::string* fit_error) {
  config.validate();
  if (config.ispec.N.size() < 4) throw PreconditionError("sweep_acl: need at least 4 N values");
  const Grid grid(config.grid.L, config.grid.M);
  for (std::size_t i = 0; i < config.ispec.N.size(); ++i) {
    const double n = config.ispec.N[i];
    if (n > grid.max_wavenumber() / 4.0)
      throw PreconditionError("sweep_acl: N above a quarter of the grid's largest wavenumber");
    if (i > 0 && std::abs(n / config.ispec.N[i - 1] - 2.0) > 1e-12)
      throw PreconditionError("sweep_acl: N list must be dyadic");
  }

  SweepResult result;
  result.config = config;
  std::vector<InitialData> data;
  for (int s = 0; s < config.data.seeds; ++s) data.push_back(initial_data(config, static_cast<std::uint64_t>(s)));

  struct Cell {
    std::uint64_t seed;
    double N;
  };
  std::vector<Cell> cells;
  for (int s = 0; s < config.data.seeds; ++s)
    for (double n : config.ispec.N) cells.push_back({static_cast<std::uint64_t>(s), n});
  result.rows.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      result.rows[i] = sweep_cell(config, data[cells[i].seed], cells[i].seed, cells[i].N);
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(result.rows.begin(), result.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return std::tie(a.seed, a.N) < std::tie(b.seed, b.N); });
  try {
    result.raw = fit_sweep_slope(result.rows, false, config.data.seed);
    result.normalized = fit_sweep_slope(result.rows, true, config.data.seed);
  } catch (const FitError& e) {
    result.raw = result.normalized = {kNaN, kNaN, kNaN};
    if (fit_error) *fit_error = e.what();
  }
  return result;
}

double growth_exponent(double s) {
  if (!(s > 2.0 / 3.0)) throw PreconditionError("growth_exponent: need s > 2/3");
  return (1.0 - s) / (6.0 * s - 4.0);
}

double growth_threshold(double T, double s) {
  if (!(s > 2.0 / 3.0)) throw PreconditionError("growth_threshold: need s > 2/3");
  if (!(T > 0.0)) throw PreconditionError("growth_threshold: need T > 0");
  return std::max(1.0, std::ceil(std::pow(T, 1.0 / (6.0 * s - 4.0)) - 1e-9));
}

namespace {

double growth_quantity(const WaveState& st, double s) {
  const double a = sobolev_norm(st.u(), s);
  const double b = sobolev_norm(apply_multiplier(inverse_sqrt_laplacian(st.grid()), st.ut()), s - 1.0);
  return a * a + b * b;
}

double state_delta(const WaveState& st, const ISpec& spec, double kappa, double eps) {
  const Multiplier m = i_multiplier(st.grid(), spec);
  const double size = sobolev_norm(apply_multiplier(m, st.u()), 1.0) +
                      sobolev_norm(apply_multiplier(compose(m, inverse_sqrt_laplacian(st.grid())), st.ut()), 0.0);
  return local_delta_from_size(size, kappa, eps);
}

}  // namespace

GrowthRecord run_growth(const ExperimentConfig& config) {
  config.validate();
  GrowthRecord rec;
  rec.config = config;
  const double s = config.ispec.s;
  rec.exponent = growth_exponent(s);
  rec.N_used = config.growth.N > 0.0 ? config.growth.N : growth_threshold(config.T, s);
  const ISpec spec{rec.N_used, s, config.ispec.shape};
  const InitialData data = initial_data(config, 0);
  const Grid& grid = data.phi.grid();
  WaveState state(data.phi, apply_multiplier(derivative_multiplier(grid, 1), data.psi));

  rec.delta = config.delta > 0.0 ? config.delta
                                 : local_delta(data.phi, data.psi, rec.N_used, s, config.solver.kappa,
                                               config.solver.eps);
  double delta = rec.delta;
  const double e0 = modified_energy(state, spec).E_Iu;
  double sup = growth_quantity(state, s);
  rec.times.push_back(0.0);
  rec.sup_norms.push_back(sup);
  rec.modified_energy.push_back(e0);

  double t = 0.0;
  while (t < config.T * (1.0 - 1e-12)) {
    const double window = std::min(delta, config.T - t);
    const long steps = std::max(1L, static_cast<long>(std::ceil(window / config.solver.dt - 1e-9)));
    SolverConfig sc = config.solver_config();
    sc.dt = window / static_cast<double>(steps);
    const Stepper stepper(grid, sc);
    const double t_begin = t;
    double e = e0;
    for (long k = 0; k < steps; ++k) {
      state = stepper.step(state, k);
      sup = std::max(sup, growth_quantity(state, s));
      e = modified_energy(state, spec).E_Iu;
      if (e > 2.0 * e0)
        throw MonitorError("E(Iu) more than doubled before the scheduled time", t_begin, t_begin + window);
    }
    t = t_begin + window;
    state = WaveState(state.u(), state.ut(), t);
    if (sup < rec.sup_norms.back()) throw std::logic_error("run_growth: running sup decreased");
    rec.times.push_back(t);
    rec.sup_norms.push_back(sup);
    rec.modified_energy.push_back(e);
    if (config.growth.adaptive_delta)
      delta = state_delta(state, spec, config.solver.kappa, config.solver.eps);
  }

  // C is calibrated on the checkpoints in [0, 1] (the first one beyond if
  // the run is shorter); later checkpoints are out of sample.
  rec.C = 0.0;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    rec.C = std::max(rec.C, rec.sup_norms[i] / std::pow(1.0 + rec.times[i], rec.exponent));
    if (rec.times[i] >= 1.0 - 1e-12) break;
  }
  for (double tt : rec.times) rec.bound_curve.push_back(rec.C * std::pow(1.0 + tt, rec.exponent));
  return rec;
}

namespace {

bool contracts(const SpectralField& phi, const SpectralField& psi, double delta, const SolverConfig& config,
               PicardResult* out = nullptr) {
  try {
    PicardResult r = picard_solve(phi, psi, delta, config);
    if (out) *out = std::move(r);
    return true;
  } catch (const ContractionFailure& e) {
    if (out) out->ratios = e.ratios();
    return false;
  }
}

double data_size(const SpectralField& phi, const SpectralField& psi) {
  return sobolev_norm(phi, 1.0) + sobolev_norm(psi, 0.0);
}

}  // namespace

double admissible_delta(const SpectralField& phi, const SpectralField& psi, const SolverConfig& config,
                        double lo, double hi, int steps) {
  if (!(lo > 0.0 && hi > lo)) throw PreconditionError("admissible_delta: need 0 < lo < hi");
  if (contracts(phi, psi, hi, config)) return hi;
  if (!contracts(phi, psi, lo, config)) return 0.0;
  for (int i = 0; i < steps; ++i) {
    const double mid = std::sqrt(lo * hi);
    (contracts(phi, psi, mid, config) ? lo : hi) = mid;
  }
  return lo;
}

ContractionReport run_contraction(const ExperimentConfig& config) {
  config.validate();
  ContractionReport rep;
  rep.config = config;
  const InitialData base = initial_data(config, 0);
  const double base_size = data_size(base.phi, base.psi);
  const SolverConfig sc = config.solver_config();

  for (int level = 0; level < config.contraction.levels; ++level) {
    ContractionRow row;
    row.size = config.contraction.base_size * std::ldexp(1.0, level);
    const double scale = base_size > 0.0 ? row.size / base_size : 0.0;
    const SpectralField phi = Complex(scale) * base.phi;
    const SpectralField psi = Complex(scale) * base.psi;
    try {
      row.rule_delta = local_delta_from_size(data_size(phi, psi), config.solver.kappa, config.solver.eps);
      PicardResult pr;
      row.contracted = contracts(phi, psi, row.rule_delta, sc, &pr);
      row.iterations = pr.iterations;
      row.ratios = pr.ratios;
      row.admissible_delta = admissible_delta(phi, psi, sc);
      if (level == 0 && row.admissible_delta > 0.0) {
        // Compare on a nontrivial window: half the admissible time.
        const double d = 0.5 * row.admissible_delta;
        PicardResult ap;
        if (contracts(phi, psi, d, sc, &ap)) {
          SolverConfig ec = sc;
          ec.dt = ap.trajectory.config.dt;
          const Trajectory ev =
              evolve(WaveState(phi, apply_multiplier(derivative_multiplier(phi.grid(), 1), psi)), d, ec);
          double diff = 0.0, scale_n = 0.0;
          const std::size_t n = std::min(ev.states.size(), ap.trajectory.states.size());
          for (std::size_t j = 0; j < n; ++j) {
            diff = std::max(diff, sobolev_norm(ev.states[j].u() - ap.trajectory.states[j].u(), 1.0));
            scale_n = std::max(scale_n, sobolev_norm(ev.states[j].u(), 1.0));
          }
          rep.evolve_agreement = scale_n > 0.0 ? diff / scale_n : 0.0;
          rep.agreement_delta = d;
        }
      }
    } catch (const Error& e) {
      row.status = e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  rep.monotone = rep.rows.size() >= 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].admissible_delta > rep.rows[i - 1].admissible_delta) rep.monotone = false;
  if (rep.monotone && !(rep.rows.back().admissible_delta < rep.rows.front().admissible_delta))
    rep.monotone = false;
  return rep;
}

NormReport run_norms(const ExperimentConfig& config) {
  config.validate();
  NormReport rep;
  rep.config = config;
  const InitialData d = initial_data(config, 0);
  const double s = config.ispec.s;
  const double b = config.norms.b;
  const double delta = config.delta > 0.0 ? config.delta
                                          : local_delta(d.phi, d.psi, config.ispec.N.front(), s,
                                                        config.solver.kappa, config.solver.eps);
  const SpaceTimeField f = free_evolution(d.phi, d.psi, delta, config.norms.time_samples);
  const double x = xsb_norm(f, s, b);
  const auto [fp, fm] = decompose_pm(f);
  const double xp = xpm_norm(fp, s, b, +1);
  const double xm = xpm_norm(fm, s, b, -1);
  rep.rows = {
      {"delta", delta},
      {"time_samples", static_cast<double>(f.time_samples())},
      {"xsb", x},
      {"xsb_xi_squared", xsb_norm(f, s, b, XsbWeight::xi_squared)},
      {"xplus", xp},
      {"xminus", xm},
      {"split_defect", std::abs(xp * xp + xm * xm - x * x) / (x * x)},
      {"strichartz_l4", strichartz_ratio(f, 4, b)},
      {"strichartz_l6", strichartz_ratio(f, 6, b)},
      {"linear_bound", linear_bound_ratio(d.phi, d.psi, s, delta, f.time_samples(), b)},
      {"cubic_bound", cubic_bound_ratio(f, s, b)},
  };
  return rep;
}

SimulationRecord simulate(const ExperimentConfig& config) {
  config.validate();
  SimulationRecord rec;
  rec.config = config;
  const InitialData d = initial_data(config, 0);
  const ISpec spec{config.ispec.N.front(), config.ispec.s, config.ispec.shape};
  const WaveState state(d.phi, apply_multiplier(derivative_multiplier(d.phi.grid(), 1), d.psi));
  const long steps = std::lround(config.T / config.solver.dt);
  const long stride = std::max(1L, steps / 1000);
  long k = 0;
  evolve_observed(state, config.T, config.solver_config(), [&](const WaveState& st) {
    if (k % stride == 0 || k == steps) rec.samples.push_back(modified_energy(st, spec));
    ++k;
  });
  return rec;
}

}  // namespace bsq
