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

// Command-line front end.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "bsq/emit.hpp"
#include "bsq/errors.hpp"
#include "bsq/experiments.hpp"
#include "bsq/verify.hpp"

namespace {

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  int seeds = 0;
  int jobs = 0;
  std::string format = "csv";
};

bsq::ExperimentConfig build_config(bsq::ExperimentKind kind, const Options& o) {
  std::vector<std::string> sets;
  sets.push_back(std::string("kind=\"") + bsq::to_string(kind) + "\"");
  sets.insert(sets.end(), o.sets.begin(), o.sets.end());
  if (!o.out.empty()) sets.push_back("output=\"" + o.out + "\"");
  if (o.seeds > 0) sets.push_back("data.seeds=" + std::to_string(o.seeds));
  if (o.jobs > 0) sets.push_back("jobs=" + std::to_string(o.jobs));
  return o.config.empty() ? bsq::parse_config("{}", sets) : bsq::load_config(o.config, sets);
}

void report(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::cout << "wrote " << p << "\n";
}

int run(bsq::ExperimentKind kind, const Options& o) {
  const bsq::ExperimentConfig c = build_config(kind, o);
  const bsq::Format fmt = o.format == "json" ? bsq::Format::json : bsq::Format::csv;
  switch (kind) {
    case bsq::ExperimentKind::simulate:
      report(bsq::emit(bsq::simulate(c), c.output, fmt));
      return 0;
    case bsq::ExperimentKind::sweep_acl: {
      std::string fit_error;
      const bsq::SweepResult r = bsq::run_sweep_acl(c, &fit_error);
      report(bsq::emit(r, c.output, fmt, fit_error));
      if (!fit_error.empty()) {
        std::cerr << "slope fit: " << fit_error << "\n";
      } else {
        std::cout << "slope raw " << bsq::format_number(r.raw.slope) << ", normalized "
                  << bsq::format_number(r.normalized.slope) << "\n";
      }
      return 0;
    }
    case bsq::ExperimentKind::growth:
      report(bsq::emit(bsq::run_growth(c), c.output, fmt));
      return 0;
    case bsq::ExperimentKind::contraction: {
      const bsq::ContractionReport r = bsq::run_contraction(c);
      report(bsq::emit(r, c.output, fmt));
      std::cout << "monotone " << (r.monotone ? "yes" : "no") << "\n";
      return 0;
    }
    case bsq::ExperimentKind::norms:
      report(bsq::emit(bsq::run_norms(c), c.output, fmt));
      return 0;
    case bsq::ExperimentKind::verify: {
      const bsq::VerifyReport r = bsq::run_verify(c);
      report(bsq::emit(r, c.output, fmt));
      for (const auto& f : r.failures()) std::cerr << "FAIL " << f << "\n";
      return r.passed() ? 0 : 4;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral lab for the cubic Boussinesq equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bsq::kToolVersion);
  Options o;
  const std::vector<std::pair<const char*, bsq::ExperimentKind>> commands = {
      {"simulate", bsq::ExperimentKind::simulate},       {"sweep-acl", bsq::ExperimentKind::sweep_acl},
      {"growth", bsq::ExperimentKind::growth},           {"contraction", bsq::ExperimentKind::contraction},
      {"norms", bsq::ExperimentKind::norms},             {"verify", bsq::ExperimentKind::verify}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, kind] : commands) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", o.sets, "override a key, e.g. --set grid.M=512")->take_all();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--seeds", o.seeds, "number of data seeds");
    sub->add_option("--jobs", o.jobs, "worker threads");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    subs.push_back(sub);
  }
  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return run(commands[i].second, o);
    } catch (const bsq::PreconditionError& e) {
      std::cerr << "precondition error: " << e.what() << "\n";
      return 2;
    } catch (const bsq::NumericalError& e) {
      std::cerr << "numerical error: " << e.what() << "\n";
      return 3;
    } catch (const bsq::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
