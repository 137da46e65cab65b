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

// Self-check of the library invariants on a configured grid.

#ifndef BSQ_VERIFY_HPP
#define BSQ_VERIFY_HPP

#include <string>
#include <vector>

#include "bsq/config.hpp"

namespace bsq {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  ExperimentConfig config;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::vector<std::string> failures() const;
};

/// Runs every check on Grid(L, M, 0, dispersion). Checks never throw: a
/// precondition error becomes a failed row whose detail starts with
/// "precondition:".
VerifyReport run_verify(const ExperimentConfig& config, Dispersion dispersion = &dispersion_gamma);

}  // namespace bsq

#endif  // BSQ_VERIFY_HPP
