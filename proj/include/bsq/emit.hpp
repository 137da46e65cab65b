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

// Deterministic CSV / JSON output. Every file starts with a header block
// (tool version, seed, configuration); numbers use 17 significant digits.

#ifndef BSQ_EMIT_HPP
#define BSQ_EMIT_HPP

#include <string>
#include <vector>

#include "bsq/experiments.hpp"
#include "bsq/verify.hpp"

namespace bsq {

enum class Format { csv, json };

/// "%.17g".
std::string format_number(double v);

/// Each function creates the directory if needed, returns the written paths
/// and throws Error with the path on I/O failure.
std::vector<std::string> emit(const SweepResult& r, const std::string& dir, Format f = Format::csv,
                              const std::string& fit_error = {});
std::vector<std::string> emit(const GrowthRecord& r, const std::string& dir, Format f = Format::csv);
std::vector<std::string> emit(const ContractionReport& r, const std::string& dir, Format f = Format::csv);
std::vector<std::string> emit(const NormReport& r, const std::string& dir, Format f = Format::csv);
std::vector<std::string> emit(const SimulationRecord& r, const std::string& dir, Format f = Format::csv);
std::vector<std::string> emit(const VerifyReport& r, const std::string& dir, Format f = Format::csv);

}  // namespace bsq

#endif  // BSQ_EMIT_HPP
