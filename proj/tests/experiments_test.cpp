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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bsq/emit.hpp"
#include "bsq/errors.hpp"
#include "bsq/experiments.hpp"
#include "bsq/verify.hpp"
#include "oracles.hpp"

using namespace bsq;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bsqlab_test_" + name);
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BSQLAB_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("counter RNG streams") {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
  }
  CounterRng u(1, 1);
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    mean += v / 10000;
  }
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("random fields are real, mean-zero and normalized") {
  const Grid g(5.0, 64);
  CounterRng rng(3, 9);
  const SpectralField f = random_field(g, 2.0, 0.7, 1.5, rng);
  CHECK(f.coeffs()(0) == Complex(0.0));
  CHECK(f.coeffs()(g.modes() / 2) == Complex(0.0));
  for (Index k = 1; k < g.modes() / 2; ++k) {
    CHECK(std::abs(f.at(k) - std::conj(f.at(-k))) < 1e-15);
    const double bracket = std::sqrt(1.0 + std::pow(g.wavenumber(g.slot(k)), 2));
    CHECK(std::abs(f.at(k)) * std::pow(bracket, 2.0) ==
          doctest::Approx(std::abs(f.at(1)) * std::pow(std::sqrt(1.0 + std::pow(g.wavenumber(1), 2)), 2.0)));
  }
  CHECK(sobolev_norm(f, 0.7) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(inverse_transform(f).imag().abs().maxCoeff() < 1e-14);
}

TEST_CASE("synthetic data sizes and determinism") {
  const Grid g(2.0 * pi, 128);
  const InitialData d = synthesize_data(g, 0.6, 1.11, 0.8, 5, 2);
  CHECK(sobolev_norm(d.phi, 0.6) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(sobolev_norm(d.psi, -0.4) == doctest::Approx(0.8).epsilon(1e-14));
  const InitialData e = synthesize_data(g, 0.6, 1.11, 0.8, 5, 2);
  CHECK((d.phi.coeffs() - e.phi.coeffs()).abs().maxCoeff() == 0.0);
  const InitialData f = synthesize_data(g, 0.6, 1.11, 0.8, 5, 3);
  CHECK((d.phi.coeffs() - f.phi.coeffs()).abs().maxCoeff() > 0.0);
}

TEST_CASE("data files round trip") {
  const Grid g(2.0 * pi, 16);
  const InitialData d = synthesize_data(g, 0.6, 2.0, 1.0, 1, 1);
  const fs::path dir = scratch("data");
  fs::create_directories(dir);
  nlohmann::json j;
  for (const char* key : {"phi", "psi"}) {
    const SpectralField& f = std::string(key) == "phi" ? d.phi : d.psi;
    for (Index k = 0; k < g.modes(); ++k) j[key].push_back({f.coeffs()(k).real(), f.coeffs()(k).imag()});
  }
  std::ofstream(dir / "d.json") << j.dump();
  const InitialData back = load_data(g, (dir / "d.json").string());
  CHECK((back.phi.coeffs() - d.phi.coeffs()).abs().maxCoeff() == 0.0);
  CHECK((back.psi.coeffs() - d.psi.coeffs()).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(load_data(Grid(2.0 * pi, 32), (dir / "d.json").string()), PreconditionError);
  CHECK_THROWS_AS(load_data(g, (dir / "missing.json").string()), Error);
}

TEST_CASE("line and slope fits") {
  const LineFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line({1, 1, 1}, {1, 2, 3}), FitError);

  std::vector<SweepRow> rows;
  CounterRng rng(11, 0);
  for (std::uint64_t seed = 1; seed <= 6; ++seed)
    for (double N : {16.0, 32.0, 64.0, 128.0}) {
      SweepRow r;
      r.seed = seed;
      r.N = N;
      r.increment = std::pow(N, -1.7) * (1.0 + 0.1 * (rng.uniform() - 0.5));
      r.normalized_increment = std::pow(N, -2.5);
      rows.push_back(r);
    }
  const SlopeFit raw = fit_sweep_slope(rows, false, 1);
  CHECK(raw.slope == doctest::Approx(-1.7).epsilon(0.02));
  CHECK(raw.ci_low <= raw.slope);
  CHECK(raw.ci_high >= raw.slope);
  CHECK(fit_sweep_slope(rows, true, 1).slope == doctest::Approx(-2.5));

  std::vector<SweepRow> flat = rows;
  for (auto& r : flat) r.increment = 1e-3;
  CHECK_THROWS_AS(fit_sweep_slope(flat, false, 1), FitError);
  std::vector<SweepRow> two(rows.begin(), rows.begin() + 2);
  CHECK_THROWS_AS(fit_sweep_slope(two, false, 1), FitError);
  rows[0].status = "divergence";
  rows[0].increment = std::nan("");
  CHECK_NOTHROW(fit_sweep_slope(rows, false, 1));
}

TEST_CASE("growth bound exponents") {
  CHECK(growth_exponent(0.9) == doctest::Approx(0.1 / 1.4));
  CHECK(growth_threshold(10.0, 0.9) == 6.0);
  CHECK_THROWS_AS(growth_exponent(0.6), PreconditionError);
}

TEST_CASE("configuration parsing") {
  for (auto kind : {ExperimentKind::simulate, ExperimentKind::sweep_acl, ExperimentKind::growth,
                    ExperimentKind::contraction, ExperimentKind::norms, ExperimentKind::verify}) {
    const ExperimentConfig c = default_config(kind);
    CHECK_NOTHROW(c.validate());
    CHECK(parse_kind(to_string(kind)) == kind);
    CHECK(to_json(from_json(to_json(c))) == to_json(c));
  }
  CHECK(parse_kind("sweep-acl") == ExperimentKind::sweep_acl);
  CHECK_THROWS_AS(parse_kind("bogus"), PreconditionError);

  const ExperimentConfig c = parse_config(R"({"kind": "norms", "grid": {"M": 128}})",
                                          {"ispec.N=32", "ispec.s=0.8", "data.spectral_slope=2.5"});
  CHECK(c.kind == ExperimentKind::norms);
  CHECK(c.grid.M == 128);
  CHECK(c.ispec.N == std::vector<double>{32.0});
  CHECK(c.slope() == 2.5);
  CHECK(parse_config("{}", {"ispec.N=[4,8]"}).ispec.N.size() == 2);
  CHECK(parse_config("{}", {"ispec.s=0.7"}).slope() == doctest::Approx(1.21));
  CHECK_THROWS_AS(parse_config(R"({"grid": {"modes": 4}})"), PreconditionError);
  CHECK_THROWS_AS(parse_config("{}", {"ispec.s=1.2"}), PreconditionError);
  CHECK_THROWS_AS(parse_config("{}", {"grid.M=6", "grid.L=-1"}), PreconditionError);
  CHECK_THROWS_AS(parse_config("{not json"), PreconditionError);
  CHECK(regime_label(0.9) != regime_label(0.5));
}

TEST_CASE("emitted files are deterministic and carry provenance headers") {
  ExperimentConfig c = default_config(ExperimentKind::norms);
  c.grid.M = 32;
  const NormReport r = run_norms(c);
  const fs::path a = scratch("emit_a"), b = scratch("emit_b");
  const auto pa = emit(r, a.string());
  const auto pb = emit(r, b.string());
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) CHECK(slurp(pa[i]) == slurp(pb[i]));
  const std::string text = slurp(pa.front());
  CHECK(text.rfind(std::string("# ") + kToolVersion + "\n# seed: 1\n# config: {", 0) == 0);
  const auto pj = emit(r, a.string(), Format::json);
  const nlohmann::json j = nlohmann::json::parse(slurp(pj.front()));
  CHECK(j.contains("config"));
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("verify passes by default and catches a wrong dispersion relation") {
  const ExperimentConfig c = default_config(ExperimentKind::verify);
  const VerifyReport ok = run_verify(c);
  for (const auto& f : ok.failures()) MESSAGE(f);
  CHECK(ok.passed());
  auto wrong = [](double xi) { return xi * xi; };
  const VerifyReport bad = run_verify(c, wrong);
  CHECK(!bad.passed());
  const auto fails = bad.failures();
  CHECK(std::find(fails.begin(), fails.end(), "propagators/plane_wave_closed_form") != fails.end());

  ExperimentConfig tiny = c;
  tiny.grid.M = 4;
  CHECK(!run_verify(tiny).passed());
}

TEST_CASE("sweep without modification has no signal") {
  ExperimentConfig c = default_config(ExperimentKind::sweep_acl);
  c.grid.M = 64;
  c.ispec.s = 1.0;
  c.ispec.N = {1.0, 2.0, 4.0, 8.0};
  c.data.seeds = 1;
  std::string err;
  const SweepResult r = run_sweep_acl(c, &err);
  CHECK(r.rows.size() == 4);
  CHECK(!err.empty());
  CHECK(std::isnan(r.raw.slope));
  c.ispec.N = {1.0, 3.0, 4.0, 8.0};
  CHECK_THROWS_AS(run_sweep_acl(c), PreconditionError);
}

TEST_CASE("command-line exit codes") {
  const std::string out = scratch("cli").string();
  CHECK(run_cli("verify --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "verify.csv"));
  CHECK(run_cli("verify --format json --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "verify.json"));
  CHECK(run_cli("verify --set grid.M=4 --out " + out) == 4);
  CHECK(run_cli("verify --set grid.M=5 --out " + out) == 2);
  CHECK(run_cli("norms --set no.such.key=1 --out " + out) == 2);
  CHECK(run_cli("simulate --set grid.M=16 solver.sign=\\\"focusing\\\" data.amplitude=50 "
                "solver.dt=0.05 T=50 --out " + out) == 3);
  CHECK(run_cli("contraction --out " + out) == 0);
  CHECK(run_cli("bogus") != 0);
}
