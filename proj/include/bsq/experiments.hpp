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

// Experiment drivers: data synthesis, the almost-conservation N-sweep, the
// global growth tracker, the contraction ladder and norm reports.

#ifndef BSQ_EXPERIMENTS_HPP
#define BSQ_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bsq/bourgain.hpp"
#include "bsq/config.hpp"

namespace bsq {

/// Counter-based generator: the stream (master, key) is independent of the
/// order in which streams are drawn.
class CounterRng {
 public:
  CounterRng(std::uint64_t master, std::uint64_t key);
  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform();

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

struct InitialData {
  SpectralField phi;
  SpectralField psi;
};

/// Real random-phase field with |c_k| proportional to <xi_k>^(-decay), zero
/// mean and zero Nyquist mode, scaled to ||.||_{H^reg} = norm.
SpectralField random_field(const Grid& grid, double decay, double reg, double norm, CounterRng& rng);

/// phi in H^s with |phi_hat| ~ <xi>^(-slope) and psi in H^(s-1) with
/// |psi_hat| ~ <xi>^(1-slope), both of size `amplitude`. Depends only on
/// (master, stream).
InitialData synthesize_data(const Grid& grid, double s, double slope, double amplitude,
                            std::uint64_t master, std::uint64_t stream);

/// Reads {"phi": [[re, im], ...], "psi": [...]} in FFT order.
InitialData load_data(const Grid& grid, const std::string& path);

/// Synthetic data for seed index `stream` or the configured data file.
InitialData initial_data(const ExperimentConfig& config, std::uint64_t stream);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (x, y). Throws FitError for < 2 distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRow {
  std::uint64_t seed = 0;
  double N = 0.0;
  double delta = 0.0;
  double increment = 0.0;
  double normalized_increment = 0.0;
  /// ||Iu||_{X_{1,b}}^3 and ||(-Delta)^(-1/2) d_t Iu||_{X_{0,b}}.
  double xsb_cubed = 0.0;
  double xsb_dt = 0.0;
  double energy0 = 0.0;
  std::string status = "ok";
};

struct SlopeFit {
  double slope = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  SlopeFit raw;
  SlopeFit normalized;
};

/// Slope of log2(value) against log2(N) over rows with status "ok", with a
/// bootstrap interval over seeds. Throws FitError with fewer than 3 valid N,
/// or when the fitted change across the N range is under one octave
/// ("flat/no signal").
SlopeFit fit_sweep_slope(const std::vector<SweepRow>& rows, bool normalized, std::uint64_t seed,
                         int resamples = 200);

/// One (seed, N) cell of the sweep.
SweepRow sweep_cell(const ExperimentConfig& config, const InitialData& data, std::uint64_t seed,
                    double N);

/// Runs every (seed, N) cell; solver failures become rows with a status.
/// The fits are left at NaN when they throw FitError and fit_error is set.
SweepResult run_sweep_acl(const ExperimentConfig& config, std::string* fit_error = nullptr);

struct GrowthRecord {
  ExperimentConfig config;
  double N_used = 0.0;
  double delta = 0.0;
  double exponent = 0.0;
  double C = 0.0;
  std::vector<double> times;
  std::vector<double> sup_norms;
  std::vector<double> modified_energy;
  std::vector<double> bound_curve;
};

/// Exponent (1 - s) / (6s - 4) of the polynomial bound.
double growth_exponent(double s);
/// N = ceil(T^(1 / (6s - 4))).
double growth_threshold(double T, double s);

/// Iterated windows of length delta to time T. Throws MonitorError when
/// E(Iu) exceeds twice its value at the start of the run.
GrowthRecord run_growth(const ExperimentConfig& config);

struct ContractionRow {
  double size = 0.0;
  double rule_delta = 0.0;
  bool contracted = false;
  int iterations = 0;
  std::vector<double> ratios;
  double admissible_delta = 0.0;
  std::string status = "ok";
};

struct ContractionReport {
  ExperimentConfig config;
  std::vector<ContractionRow> rows;
  bool monotone = false;
  /// max_j ||picard - evolve||_{H^1} / max_j ||evolve||_{H^1} for the smallest
  /// size on [0, agreement_delta], half its admissible time.
  double evolve_agreement = 0.0;
  double agreement_delta = 0.0;
};

/// Largest delta in [lo, hi] at which picard_solve converges, by geometric
/// bisection; 0 when it fails at lo.
double admissible_delta(const SpectralField& phi, const SpectralField& psi, const SolverConfig& config,
                        double lo = 1e-4, double hi = 1.0, int steps = 8);

ContractionReport run_contraction(const ExperimentConfig& config);

struct NormRow {
  std::string name;
  double value = 0.0;
};

struct NormReport {
  ExperimentConfig config;
  std::vector<NormRow> rows;
};

/// Space-time norms and ratio probes of the free evolution of the data.
NormReport run_norms(const ExperimentConfig& config);

struct SimulationRecord {
  ExperimentConfig config;
  std::vector<EnergyReport> samples;
};

/// evolve with energy and modified energy (first N) sampled at <= 1001 times.
SimulationRecord simulate(const ExperimentConfig& config);

}  // namespace bsq

#endif  // BSQ_EXPERIMENTS_HPP
