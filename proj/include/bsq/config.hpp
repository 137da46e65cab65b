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

// Experiment configuration: a nested JSON document with `--set a.b=value`
// overrides. Missing keys take the defaults of the experiment kind.

#ifndef BSQ_CONFIG_HPP
#define BSQ_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/imethod.hpp"

namespace bsq {

inline constexpr const char* kToolVersion = "bsqlab 1.0.0";

enum class ExperimentKind { simulate, sweep_acl, growth, contraction, norms, verify };

const char* to_string(ExperimentKind kind);
/// Accepts both "sweep_acl" and "sweep-acl". Throws PreconditionError.
ExperimentKind parse_kind(const std::string& name);

struct GridSection {
  double L = 2.0 * M_PI;
  Index M = 256;
};

struct SolverSection {
  double dt = 1e-3;
  NonlinearSign sign = NonlinearSign::defocusing;
  double kappa = 0.25;
  double eps = 0.01;
  double tol_picard = 1e-10;
  int max_picard_iters = 60;
  /// Stepper substeps per stored time sample (sweep).
  int substeps = 4;
};

struct ISpecSection {
  double s = 0.75;
  std::vector<double> N{16.0};
  MultiplierShape shape = MultiplierShape::sharp;
};

struct DataSection {
  std::uint64_t seed = 1;
  int seeds = 1;
  /// Decay exponent of |phi_hat|; empty means s + 0.51.
  std::optional<double> spectral_slope;
  /// Target ||phi||_{H^s} (and ||psi||_{H^{s-1}}).
  double amplitude = 1.0;
  /// Explicit initial data (JSON with phi/psi coefficient arrays); empty for
  /// synthetic data.
  std::string file;
};

struct NormsSection {
  double b = 0.51;
  /// 0 selects the automatic count.
  Index time_samples = 0;
};

struct GrowthSection {
  /// Re-estimate delta from the current state at every window.
  bool adaptive_delta = false;
  /// 0 selects N = ceil(T^(1/(6s-4))).
  double N = 0.0;
};

struct ContractionSection {
  /// Data sizes are base_size * 2^k, k = 0..levels-1.
  double base_size = 0.5;
  int levels = 4;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::simulate;
  GridSection grid;
  SolverSection solver;
  ISpecSection ispec;
  DataSection data;
  NormsSection norms;
  GrowthSection growth;
  ContractionSection contraction;
  double T = 1.0;
  /// 0 selects local_delta.
  double delta = 0.0;
  std::string output = "out";
  int jobs = 1;

  /// Range checks; throws PreconditionError.
  void validate() const;
  /// Decay exponent actually used for synthetic data.
  double slope() const { return data.spectral_slope ? *data.spectral_slope : ispec.s + 0.51; }
  SolverConfig solver_config() const;
};

/// Defaults of an experiment kind.
ExperimentConfig default_config(ExperimentKind kind);

nlohmann::json to_json(const ExperimentConfig& config);
/// Missing keys fall back to default_config(kind); unknown keys are rejected.
ExperimentConfig from_json(const nlohmann::json& j);

/// "a.b.c=value"; the value is parsed as JSON when possible, else a string.
void apply_override(nlohmann::json& j, const std::string& assignment);

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// "inside theorem range" for 2/3 < s < 1, "exploratory" otherwise.
std::string regime_label(double s);

}  // namespace bsq

#endif  // BSQ_CONFIG_HPP
