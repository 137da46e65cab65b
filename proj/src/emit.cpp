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

#include "bsq/emit.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsq/errors.hpp"

namespace bsq {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string header(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# " << kToolVersion << "\n";
  os << "# seed: " << c.data.seed << "\n";
  os << "# config: " << to_json(c).dump() << "\n";
  return os.str();
}

json meta(const ExperimentConfig& c) {
  return {{"tool", kToolVersion}, {"seed", c.data.seed}, {"config", to_json(c)}};
}

std::string write(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error("write failed for '" + path + "'");
  return path;
}

// Row builder joining fields with commas.
class Line {
 public:
  Line& operator<<(double v) { return add(format_number(v)); }
  Line& operator<<(const std::string& v) { return add(v); }
  Line& operator<<(const char* v) { return add(v); }
  Line& operator<<(std::uint64_t v) { return add(std::to_string(v)); }
  Line& operator<<(int v) { return add(std::to_string(v)); }
  std::string str() const { return s_ + "\n"; }

 private:
  Line& add(const std::string& v) {
    if (!first_) s_ += ",";
    first_ = false;
    s_ += v;
    return *this;
  }
  std::string s_;
  bool first_ = true;
};

// CSV fields never contain commas or newlines.
std::string clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

json fit_json(const SlopeFit& f) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"slope", num(f.slope)}, {"ci_low", num(f.ci_low)}, {"ci_high", num(f.ci_high)}};
}

}  // namespace

std::vector<std::string> emit(const SweepResult& r, const std::string& dir, Format f,
                              const std::string& fit_error) {
  if (f == Format::json) {
    json j = meta(r.config);
    j["rows"] = json::array();
    for (const auto& row : r.rows)
      j["rows"].push_back({{"seed", row.seed}, {"N", row.N}, {"increment", row.increment},
                           {"normalized_increment", row.normalized_increment}, {"xsb_cubed", row.xsb_cubed},
                           {"xsb_dt", row.xsb_dt}, {"delta", row.delta}, {"energy0", row.energy0},
                           {"status", row.status}});
    j["fit_raw"] = fit_json(r.raw);
    j["fit_normalized"] = fit_json(r.normalized);
    if (!fit_error.empty()) j["fit_error"] = fit_error;
    return {write(dir, "sweep.json", json_text(j))};
  }
  std::string s = header(r.config);
  s += "seed,N,increment,normalized_increment,xsb_cubed,xsb_dt,delta,energy0,status\n";
  for (const auto& row : r.rows)
    s += (Line() << row.seed << row.N << row.increment << row.normalized_increment << row.xsb_cubed
                 << row.xsb_dt << row.delta << row.energy0 << clean(row.status))
             .str();
  s += (Line() << "# slope" << "raw" << r.raw.slope << r.raw.ci_low << r.raw.ci_high).str();
  s += (Line() << "# slope" << "normalized" << r.normalized.slope << r.normalized.ci_low
               << r.normalized.ci_high)
           .str();
  if (!fit_error.empty()) s += "# fit_error: " + clean(fit_error) + "\n";
  return {write(dir, "sweep.csv", s)};
}

std::vector<std::string> emit(const GrowthRecord& r, const std::string& dir, Format f) {
  if (f == Format::json) {
    json j = meta(r.config);
    j["N_used"] = r.N_used;
    j["delta"] = r.delta;
    j["exponent"] = r.exponent;
    j["C"] = r.C;
    j["times"] = r.times;
    j["sup_norms"] = r.sup_norms;
    j["modified_energy"] = r.modified_energy;
    j["bound_curve"] = r.bound_curve;
    return {write(dir, "growth.json", json_text(j))};
  }
  std::string g = header(r.config);
  g += (Line() << "# N_used" << r.N_used << "delta" << r.delta << "exponent" << r.exponent).str();
  g += "t,sup_norm,modified_energy\n";
  std::string b = header(r.config);
  b += (Line() << "# C" << r.C << "exponent" << r.exponent).str();
  b += "t,bound\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    g += (Line() << r.times[i] << r.sup_norms[i] << r.modified_energy[i]).str();
    b += (Line() << r.times[i] << r.bound_curve[i]).str();
  }
  return {write(dir, "growth.csv", g), write(dir, "bound_curve.csv", b)};
}

std::vector<std::string> emit(const ContractionReport& r, const std::string& dir, Format f) {
  if (f == Format::json) {
    json j = meta(r.config);
    j["monotone"] = r.monotone;
    j["evolve_agreement"] = r.evolve_agreement;
    j["agreement_delta"] = r.agreement_delta;
    j["rows"] = json::array();
    for (const auto& row : r.rows)
      j["rows"].push_back({{"size", row.size}, {"rule_delta", row.rule_delta}, {"contracted", row.contracted},
                           {"iterations", row.iterations}, {"ratios", row.ratios},
                           {"admissible_delta", row.admissible_delta}, {"status", row.status}});
    return {write(dir, "contraction.json", json_text(j))};
  }
  std::string s = header(r.config);
  s += (Line() << "# monotone" << (r.monotone ? "true" : "false") << "evolve_agreement"
               << r.evolve_agreement << "agreement_delta" << r.agreement_delta)
           .str();
  s += "size,rule_delta,contracted,iterations,admissible_delta,mean_ratio,status\n";
  for (const auto& row : r.rows) {
    double mean = 0.0;
    for (double q : row.ratios) mean += q;
    mean = row.ratios.empty() ? 0.0 : mean / static_cast<double>(row.ratios.size());
    s += (Line() << row.size << row.rule_delta << (row.contracted ? "true" : "false") << row.iterations
                 << row.admissible_delta << mean << clean(row.status))
             .str();
  }
  return {write(dir, "contraction.csv", s)};
}

std::vector<std::string> emit(const NormReport& r, const std::string& dir, Format f) {
  if (f == Format::json) {
    json j = meta(r.config);
    for (const auto& row : r.rows) j["norms"][row.name] = row.value;
    return {write(dir, "norms.json", json_text(j))};
  }
  std::string s = header(r.config);
  s += "name,value\n";
  for (const auto& row : r.rows) s += (Line() << row.name << row.value).str();
  return {write(dir, "norms.csv", s)};
}

std::vector<std::string> emit(const SimulationRecord& r, const std::string& dir, Format f) {
  if (f == Format::json) {
    json j = meta(r.config);
    j["samples"] = json::array();
    for (const auto& e : r.samples)
      j["samples"].push_back({{"t", e.t}, {"E_u", e.E_u}, {"E_Iu", e.E_Iu}, {"h1", e.parts.h1},
                              {"kinetic", e.parts.kinetic}, {"quartic", e.parts.quartic}});
    return {write(dir, "energies.json", json_text(j))};
  }
  std::string s = header(r.config);
  s += "t,E_u,E_Iu,h1,kinetic,quartic\n";
  for (const auto& e : r.samples)
    s += (Line() << e.t << e.E_u << e.E_Iu << e.parts.h1 << e.parts.kinetic << e.parts.quartic).str();
  return {write(dir, "energies.csv", s)};
}

std::vector<std::string> emit(const VerifyReport& r, const std::string& dir, Format f) {
  if (f == Format::json) {
    json j = meta(r.config);
    j["passed"] = r.passed();
    j["checks"] = json::array();
    for (const auto& c : r.checks)
      j["checks"].push_back({{"module", c.module}, {"name", c.name}, {"passed", c.passed},
                             {"measured", std::isfinite(c.measured) ? json(c.measured) : json(nullptr)},
                             {"threshold", c.threshold}, {"detail", c.detail}});
    return {write(dir, "verify.json", json_text(j))};
  }
  std::string s = header(r.config);
  s += "module,name,passed,measured,threshold,detail\n";
  for (const auto& c : r.checks)
    s += (Line() << c.module << c.name << (c.passed ? "true" : "false") << c.measured << c.threshold
                 << clean(c.detail))
             .str();
  return {write(dir, "verify.csv", s)};
}

}  // namespace bsq
