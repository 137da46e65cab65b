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

#include <numbers>

#include "bsq/errors.hpp"
#include "bsq/spectral.hpp"
#include "oracles.hpp"

using namespace bsq;
using std::numbers::pi;

namespace {

Eigen::ArrayXcd random_samples(Index n, std::uint64_t key) {
  CounterRng rng(99, key);
  Eigen::ArrayXcd s(n);
  for (Index j = 0; j < n; ++j) s(j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return s;
}

}  // namespace

TEST_CASE("grid lattice bookkeeping") {
  const Grid g(2.0 * pi, 8);
  CHECK(g.padded_modes() == 16);
  CHECK(g.lattice_index(3) == 3);
  CHECK(g.lattice_index(4) == -4);
  CHECK(g.lattice_index(7) == -1);
  for (Index k = -4; k < 4; ++k) CHECK(g.lattice_index(g.slot(k)) == k);
  CHECK(g.wavenumber(g.slot(-3)) == doctest::Approx(-3.0));
  CHECK(g.max_wavenumber() == doctest::Approx(4.0));
  CHECK_THROWS_AS(g.slot(4), ShapeError);
  CHECK(g.frequencies()(g.slot(2)) == doctest::Approx(std::sqrt(4.0 + 16.0)));
}

TEST_CASE("grid rejects bad shapes") {
  CHECK_THROWS_AS(Grid(2.0 * pi, 7), ShapeError);
  CHECK_THROWS_AS(Grid(2.0 * pi, 2), ShapeError);
  CHECK_THROWS_AS(Grid(-1.0, 8), ShapeError);
  CHECK_THROWS_AS(Grid(1.0, 8, 10), ShapeError);
  CHECK_THROWS_AS(Grid(1.0, 8, 0, nullptr), ShapeError);
  CHECK_THROWS_AS(dispersion_gamma(std::nan("")), DomainError);
}

TEST_CASE("forward transform matches the direct discrete Fourier sum") {
  for (Index M : {8, 16, 64}) {
    const Grid g(3.0, M);
    for (Index n : {M, 2 * M, 3 * M}) {
      const Eigen::ArrayXcd s = random_samples(n, static_cast<std::uint64_t>(M + n));
      const Eigen::ArrayXcd got = forward_transform(g, s).coeffs();
      const Eigen::ArrayXcd want = oracle::direct_dft(g, s);
      CHECK((got - want).abs().maxCoeff() <= 1e-12 * want.abs().maxCoeff());
    }
  }
}

TEST_CASE("inverse transform round trip and padded samples") {
  const Grid g(5.0, 32);
  const SpectralField u = forward_transform(g, random_samples(32, 1));
  const SpectralField v = forward_transform(g, inverse_transform(u));
  CHECK((v.coeffs() - u.coeffs()).abs().maxCoeff() < 1e-13);
  const Eigen::ArrayXcd p = padded_samples(u, 96);
  for (Index j : {0, 7, 50}) {
    const double x = g.length() * static_cast<double>(j) / 96.0;
    CHECK(std::abs(p(j) - oracle::evaluate(u, x)) < 1e-12);
  }
  CHECK_THROWS_AS(padded_samples(u, 16), ShapeError);
}

TEST_CASE("dealiased cubic matches the triple convolution") {
  for (Index M : {8, 32, 64}) {
    const Grid g(2.0 * pi, M);
    const SpectralField u = forward_transform(g, random_samples(M, 10 + static_cast<std::uint64_t>(M)));
    const Eigen::ArrayXcd want = oracle::triple_convolution(u);
    const Eigen::ArrayXcd got = dealiased_cubic(u).coeffs();
    CHECK((got - want).abs().maxCoeff() <= 1e-10 * want.abs().maxCoeff());
  }
}

TEST_CASE("norms of cos x") {
  const Grid g(2.0 * pi, 16);
  SpectralField u(g);
  u.at(1) = u.at(-1) = pi;  // cos x
  CHECK(sobolev_norm(u, 0.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(sobolev_norm(u, 1.0) == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-14));
  CHECK(lebesgue_norm(u, 2) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(std::pow(lebesgue_norm(u, 4), 4) == doctest::Approx(3.0 * pi / 4.0).epsilon(1e-13));
  CHECK(std::pow(lebesgue_norm(u, 6), 6) == doctest::Approx(5.0 * pi / 8.0).epsilon(1e-13));
  CHECK_THROWS_AS(lebesgue_norm(u, 3), DomainError);
}

TEST_CASE("Parseval and Lebesgue norms against quadrature") {
  const Grid g(4.0, 32);
  for (std::uint64_t key = 0; key < 5; ++key) {
    const SpectralField u = forward_transform(g, random_samples(32, 100 + key));
    CHECK(oracle::rel(lebesgue_norm(u, 2), sobolev_norm(u, 0.0)) < 1e-13);
    const double q4 = oracle::periodic_integral(g.length(), 200, [&](double x) {
      return std::pow(std::norm(oracle::evaluate(u, x)), 2);
    });
    CHECK(oracle::rel(std::pow(lebesgue_norm(u, 4), 4), q4) < 1e-11);
  }
}

TEST_CASE("inner product is the real L2 pairing") {
  const Grid g(2.0 * pi, 16);
  SpectralField a(g), b(g);
  a.at(1) = a.at(-1) = pi;           // cos x
  b.at(1) = Complex(0.0, -pi);       // sin x
  b.at(-1) = Complex(0.0, pi);
  CHECK(std::abs(inner_product(a, b)) < 1e-14);
  CHECK(inner_product(a, a) == doctest::Approx(pi));
}

TEST_CASE("multipliers") {
  const Grid g(2.0 * pi, 16);
  const Multiplier d2 = derivative_multiplier(g, 2);
  const Multiplier d1 = derivative_multiplier(g, 1);
  const Multiplier c = compose(d1, d1);
  CHECK((c.values - d2.values).abs().maxCoeff() < 1e-14);
  CHECK(d2.values(g.slot(3)).real() == doctest::Approx(-9.0));
  CHECK(derivative_multiplier(g, 0).values.isApproxToConstant(1.0));
  CHECK_THROWS_AS(derivative_multiplier(g, -1), DomainError);
  const Multiplier inv = inverse_sqrt_laplacian(g);
  CHECK(inv.values(0) == Complex(0.0));
  CHECK(inv.values(g.slot(-4)).real() == doctest::Approx(0.25));
  const Multiplier br = bracket_multiplier(g, 0.5);
  CHECK(br.values(g.slot(2)).real() == doctest::Approx(std::pow(5.0, 0.25)));
  CHECK_THROWS_AS(apply_multiplier(d1, SpectralField(Grid(2.0 * pi, 8))), ShapeError);
}

TEST_CASE("field arithmetic keeps grids apart") {
  const Grid g(1.0, 8), h(2.0, 8);
  SpectralField a(g), b(h);
  CHECK_THROWS_AS(a += b, ShapeError);
  a.at(1) = 2.0;
  const SpectralField c = Complex(3.0) * a - a;
  CHECK(c.at(1) == Complex(4.0));
}
