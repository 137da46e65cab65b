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

#include "bsq/config.hpp"

#include <fstream>
#include <sstream>

#include "bsq/errors.hpp"

namespace bsq {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::sweep_acl: return "sweep_acl";
    case ExperimentKind::growth: return "growth";
    case ExperimentKind::contraction: return "contraction";
    case ExperimentKind::norms: return "norms";
    case ExperimentKind::verify: return "verify";
  }
  return "?";
}

ExperimentKind parse_kind(const std::string& name) {
  std::string n = name;
  for (char& c : n)
    if (c == '-') c = '_';
  for (auto k : {ExperimentKind::simulate, ExperimentKind::sweep_acl, ExperimentKind::growth,
                 ExperimentKind::contraction, ExperimentKind::norms, ExperimentKind::verify})
    if (n == to_string(k)) return k;
  throw PreconditionError("unknown experiment kind '" + name + "'");
}

namespace {

const char* sign_name(NonlinearSign s) {
  switch (s) {
    case NonlinearSign::defocusing: return "defocusing";
    case NonlinearSign::focusing: return "focusing";
    case NonlinearSign::off: return "off";
  }
  return "?";
}

NonlinearSign parse_sign(const std::string& s) {
  if (s == "defocusing") return NonlinearSign::defocusing;
  if (s == "focusing") return NonlinearSign::focusing;
  if (s == "off") return NonlinearSign::off;
  throw PreconditionError("solver.sign must be defocusing, focusing or off");
}

MultiplierShape parse_shape(const std::string& s) {
  if (s == "sharp") return MultiplierShape::sharp;
  if (s == "smooth") return MultiplierShape::smooth;
  throw PreconditionError("ispec.shape must be sharp or smooth");
}

// Reads key from a section object into `out` when present; rejects unknown keys.
class Reader {
 public:
  Reader(const json& j, const std::string& where) : j_(j), where_(where) {
    if (!j_.is_object()) throw PreconditionError(where_ + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.push_back(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw PreconditionError(where_ + "." + key + ": " + e.what());
    }
  }

  const json* section(const char* key) {
    seen_.push_back(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        throw PreconditionError(where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::vector<std::string> seen_;
};

}  // namespace

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig c;
  c.dt = solver.dt;
  c.sign = solver.sign;
  c.tol_picard = solver.tol_picard;
  c.max_picard_iters = solver.max_picard_iters;
  return c;
}

std::string regime_label(double s) {
  return s > 2.0 / 3.0 && s < 1.0 ? "inside theorem range" : "exploratory";
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw PreconditionError("config: " + m); };
  if (!(grid.L > 0.0)) fail("grid.L must be > 0");
  if (grid.M < 4 || grid.M % 2 != 0) fail("grid.M must be even and >= 4");
  if (!(solver.dt > 0.0)) fail("solver.dt must be > 0");
  if (!(solver.kappa > 0.0)) fail("solver.kappa must be > 0");
  if (!(solver.eps >= 0.0 && solver.eps <= 0.1)) fail("solver.eps must lie in [0, 0.1]");
  if (!(solver.tol_picard > 0.0 && solver.tol_picard <= 1e-2)) fail("solver.tol_picard must lie in (0, 1e-2]");
  if (solver.max_picard_iters < 2) fail("solver.max_picard_iters must be >= 2");
  if (solver.substeps < 1) fail("solver.substeps must be >= 1");
  if (!(ispec.s > 0.0 && ispec.s <= 1.0)) fail("ispec.s must lie in (0, 1]");
  if (kind == ExperimentKind::growth && !(ispec.s > 2.0 / 3.0 && ispec.s < 1.0))
    fail("growth needs 2/3 < ispec.s < 1");
  if (ispec.N.empty()) fail("ispec.N must not be empty");
  for (double n : ispec.N)
    if (!(n >= 1.0)) fail("ispec.N entries must be >= 1");
  if (data.seeds < 1) fail("data.seeds must be >= 1");
  if (!(data.amplitude >= 0.0)) fail("data.amplitude must be >= 0");
  if (!(norms.b >= 0.0 && norms.b <= 1.0)) fail("norms.b must lie in [0, 1]");
  if (norms.time_samples != 0 && norms.time_samples < 16) fail("norms.time_samples must be 0 or >= 16");
  if (!(growth.N >= 0.0)) fail("growth.N must be >= 0");
  if (!(contraction.base_size > 0.0)) fail("contraction.base_size must be > 0");
  if (contraction.levels < 2) fail("contraction.levels must be >= 2");
  if (!(T >= 0.0)) fail("T must be >= 0");
  if (!(delta >= 0.0 && delta <= 1.0)) fail("delta must lie in [0, 1]");
  if (jobs < 1) fail("jobs must be >= 1");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::simulate:
      c.grid.M = 256;
      c.T = 1.0;
      break;
    case ExperimentKind::sweep_acl:
      c.grid.M = 4096;
      c.ispec.N = {16, 32, 64, 128, 256, 512};
      c.data.seeds = 8;
      break;
    case ExperimentKind::growth:
      c.grid.M = 256;
      c.solver.dt = 1e-4;
      c.T = 10.0;
      c.data.amplitude = 1.0;
      break;
    case ExperimentKind::contraction:
      c.grid.M = 32;
      c.ispec.N = {16};
      c.data.spectral_slope = 3.0;
      c.contraction.base_size = 16.0;
      break;
    case ExperimentKind::norms:
      c.grid.M = 64;
      c.delta = 0.5;
      break;
    case ExperimentKind::verify:
      c.grid.M = 32;
      break;
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["grid"] = {{"L", c.grid.L}, {"M", c.grid.M}};
  j["solver"] = {{"dt", c.solver.dt},
                 {"sign", sign_name(c.solver.sign)},
                 {"kappa", c.solver.kappa},
                 {"eps", c.solver.eps},
                 {"tol_picard", c.solver.tol_picard},
                 {"max_picard_iters", c.solver.max_picard_iters},
                 {"substeps", c.solver.substeps}};
  j["ispec"] = {{"s", c.ispec.s},
                {"N", c.ispec.N},
                {"shape", c.ispec.shape == MultiplierShape::sharp ? "sharp" : "smooth"}};
  j["data"] = {{"seed", c.data.seed},
               {"seeds", c.data.seeds},
               {"spectral_slope", c.data.spectral_slope ? json(*c.data.spectral_slope) : json(nullptr)},
               {"amplitude", c.data.amplitude},
               {"file", c.data.file}};
  j["norms"] = {{"b", c.norms.b}, {"time_samples", c.norms.time_samples}};
  j["growth"] = {{"adaptive_delta", c.growth.adaptive_delta}, {"N", c.growth.N}};
  j["contraction"] = {{"base_size", c.contraction.base_size}, {"levels", c.contraction.levels}};
  j["T"] = c.T;
  j["delta"] = c.delta;
  j["output"] = c.output;
  j["jobs"] = c.jobs;
  return j;
}

ExperimentConfig from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("config: expected a JSON object");
  ExperimentKind kind = ExperimentKind::simulate;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw PreconditionError("config: kind must be a string");
    kind = parse_kind(j.at("kind").get<std::string>());
  }
  ExperimentConfig c = default_config(kind);
  Reader top(j, "config");
  std::string kind_name;
  top.get("kind", kind_name);
  if (const json* g = top.section("grid")) {
    Reader r(*g, "grid");
    r.get("L", c.grid.L);
    r.get("M", c.grid.M);
    r.finish();
  }
  if (const json* s = top.section("solver")) {
    Reader r(*s, "solver");
    r.get("dt", c.solver.dt);
    std::string sign = sign_name(c.solver.sign);
    r.get("sign", sign);
    c.solver.sign = parse_sign(sign);
    r.get("kappa", c.solver.kappa);
    r.get("eps", c.solver.eps);
    r.get("tol_picard", c.solver.tol_picard);
    r.get("max_picard_iters", c.solver.max_picard_iters);
    r.get("substeps", c.solver.substeps);
    r.finish();
  }
  if (const json* s = top.section("ispec")) {
    Reader r(*s, "ispec");
    r.get("s", c.ispec.s);
    if (s->contains("N") && s->at("N").is_number()) {
      c.ispec.N = {s->at("N").get<double>()};
      double dummy = 0.0;
      r.get("N", dummy);
    } else {
      r.get("N", c.ispec.N);
    }
    std::string shape = c.ispec.shape == MultiplierShape::sharp ? "sharp" : "smooth";
    r.get("shape", shape);
    c.ispec.shape = parse_shape(shape);
    r.finish();
  }
  if (const json* s = top.section("data")) {
    Reader r(*s, "data");
    r.get("seed", c.data.seed);
    r.get("seeds", c.data.seeds);
    if (s->contains("spectral_slope")) {
      const json& v = s->at("spectral_slope");
      if (v.is_null()) {
        c.data.spectral_slope.reset();
      } else if (v.is_number()) {
        c.data.spectral_slope = v.get<double>();
      } else {
        throw PreconditionError("data.spectral_slope must be a number or null");
      }
    }
    r.section("spectral_slope");
    r.get("amplitude", c.data.amplitude);
    r.get("file", c.data.file);
    r.finish();
  }
  if (const json* s = top.section("norms")) {
    Reader r(*s, "norms");
    r.get("b", c.norms.b);
    r.get("time_samples", c.norms.time_samples);
    r.finish();
  }
  if (const json* s = top.section("growth")) {
    Reader r(*s, "growth");
    r.get("adaptive_delta", c.growth.adaptive_delta);
    r.get("N", c.growth.N);
    r.finish();
  }
  if (const json* s = top.section("contraction")) {
    Reader r(*s, "contraction");
    r.get("base_size", c.contraction.base_size);
    r.get("levels", c.contraction.levels);
    r.finish();
  }
  top.get("T", c.T);
  top.get("delta", c.delta);
  top.get("output", c.output);
  top.get("jobs", c.jobs);
  top.finish();
  c.validate();
  return c;
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw PreconditionError("override '" + assignment + "' is not of the form key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw PreconditionError("override '" + assignment + "' has an empty key");
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  json j = text.empty() ? json::object() : json::parse(text, nullptr, false);
  if (j.is_discarded()) throw PreconditionError("config: not valid JSON");
  for (const auto& o : overrides) apply_override(j, o);
  return from_json(j);
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace bsq
