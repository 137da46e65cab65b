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

#include "bsq/spectral.hpp"

#include <numbers>

#include "bsq/errors.hpp"
#include "fft.hpp"

namespace bsq {

double dispersion_gamma(double xi) {
  if (!std::isfinite(xi)) throw DomainError("dispersion_gamma: non-finite wavenumber");
  // |xi| sqrt(1 + xi^2) == sqrt(xi^2 + xi^4) without overflowing xi^4.
  return std::abs(xi) * std::sqrt(1.0 + xi * xi);
}

Grid::Grid(double length, Index modes, Index padded_modes, Dispersion dispersion)
    : length_(length),
      modes_(modes),
      padded_(padded_modes == 0 ? 2 * modes : padded_modes),
      dispersion_(dispersion) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw ShapeError("Grid: length must be positive and finite");
  if (modes < 4 || modes % 2 != 0)
    throw ShapeError("Grid: modes must be an even integer >= 4 (got " +
                     std::to_string(modes) + ")");
  if (padded_ < 2 * modes_ || padded_ % 2 != 0)
    throw ShapeError("Grid: padded_modes must be even and >= 2 * modes");
  if (dispersion_ == nullptr) throw ShapeError("Grid: null dispersion relation");

  auto tables = std::make_shared<Tables>();
  tables->xi.resize(modes_);
  tables->omega.resize(modes_);
  const double dk = 2.0 * std::numbers::pi / length_;
  for (Index j = 0; j < modes_; ++j) {
    tables->xi(j) = dk * static_cast<double>(lattice_index(j));
    tables->omega(j) = dispersion_(tables->xi(j));
  }
  tables_ = std::move(tables);
}

Index Grid::slot(Index k) const {
  if (k < -modes_ / 2 || k >= modes_ / 2)
    throw ShapeError("Grid: lattice index " + std::to_string(k) + " outside band");
  return k >= 0 ? k : k + modes_;
}

double Grid::max_wavenumber() const {
  return std::numbers::pi * static_cast<double>(modes_) / length_;
}

Eigen::ArrayXd Grid::points() const {
  return Eigen::ArrayXd::LinSpaced(modes_, 0.0, spacing() * static_cast<double>(modes_ - 1));
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw ShapeError(std::string(where) + ": grid mismatch");
}

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(Eigen::ArrayXcd::Zero(grid.modes())) {}

SpectralField::SpectralField(const Grid& grid, Eigen::ArrayXcd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.modes())
    throw ShapeError("SpectralField: expected " + std::to_string(grid_.modes()) +
                     " coefficients, got " + std::to_string(coeffs_.size()));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField +=");
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField -=");
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex scale, SpectralField a) { return a *= scale; }

Multiplier identity_multiplier(const Grid& grid) {
  return {grid, Eigen::ArrayXcd::Ones(grid.modes()), "1"};
}

Multiplier derivative_multiplier(const Grid& grid, int order) {
  if (order < 0) throw DomainError("derivative_multiplier: order must be >= 0");
  const Eigen::ArrayXcd ixi = Complex(0.0, 1.0) * grid.wavenumbers().cast<Complex>();
  Eigen::ArrayXcd v = Eigen::ArrayXcd::Ones(grid.modes());
  for (int n = 0; n < order; ++n) v *= ixi;
  return {grid, std::move(v), "(i xi)^" + std::to_string(order)};
}

Multiplier bracket_multiplier(const Grid& grid, double s) {
  Eigen::ArrayXd v = (1.0 + grid.wavenumbers().square()).pow(0.5 * s);
  return {grid, v.cast<Complex>(), "<xi>^" + std::to_string(s)};
}

Multiplier abs_power_multiplier(const Grid& grid, double p) {
  Eigen::ArrayXd v = grid.wavenumbers().abs().pow(p);
  if (p < 0.0) v(0) = 0.0;
  return {grid, v.cast<Complex>(), "|xi|^" + std::to_string(p)};
}

Multiplier inverse_sqrt_laplacian(const Grid& grid) {
  Multiplier m = abs_power_multiplier(grid, -1.0);
  m.label = "(-Delta)^(-1/2)";
  return m;
}

Multiplier compose(const Multiplier& a, const Multiplier& b) {
  require_same_grid(a.grid, b.grid, "compose");
  return {a.grid, a.values * b.values, a.label + " * " + b.label};
}

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& u) {
  require_same_grid(m.grid, u.grid(), "apply_multiplier");
  return SpectralField(u.grid(), m.values * u.coeffs());
}

namespace {

// Spectral coefficients laid out on an n-point FFT buffer.
Eigen::ArrayXcd spread(const SpectralField& u, Index n) {
  const Grid& g = u.grid();
  const Index m = g.modes();
  Eigen::ArrayXcd buf = Eigen::ArrayXcd::Zero(n);
  buf.head(m / 2) = u.coeffs().head(m / 2);
  buf.tail(m / 2) = u.coeffs().tail(m / 2);
  return buf;
}

}  // namespace

Eigen::ArrayXcd padded_samples(const SpectralField& u, Index n) {
  const Grid& g = u.grid();
  if (n < g.modes() || n % 2 != 0)
    throw ShapeError("padded_samples: sample count must be even and >= M");
  Eigen::ArrayXcd buf = spread(u, n);
  Eigen::ArrayXcd out(n);
  detail::fft_backward(out.data(), buf.data(), n);
  out /= g.length();
  return out;
}

Eigen::ArrayXcd inverse_transform(const SpectralField& u) {
  return padded_samples(u, u.grid().modes());
}

SpectralField forward_transform(const Grid& grid, const Eigen::ArrayXcd& samples) {
  const Index n = samples.size();
  const Index m = grid.modes();
  if (n < m || n % 2 != 0)
    throw ShapeError("forward_transform: expected " + std::to_string(m) +
                     " (or an even count >= M) samples, got " + std::to_string(n));
  Eigen::ArrayXcd spec(n);
  detail::fft_forward(spec.data(), samples.data(), n);
  const double scale = grid.length() / static_cast<double>(n);
  Eigen::ArrayXcd c(m);
  c.head(m / 2) = spec.head(m / 2) * scale;
  c.tail(m / 2) = spec.tail(m / 2) * scale;
  return SpectralField(grid, std::move(c));
}

SpectralField dealiased_cubic(const SpectralField& u) {
  const Grid& g = u.grid();
  if (g.padded_modes() < 2 * g.modes())
    throw ShapeError("dealiased_cubic: padded grid must have P >= 2M");
  Eigen::ArrayXcd w = padded_samples(u, g.padded_modes());
  w *= w.abs2();
  return forward_transform(g, w);
}

double sobolev_norm(const SpectralField& u, double s) {
  const Grid& g = u.grid();
  const Eigen::ArrayXd weight = (1.0 + g.wavenumbers().square()).pow(s);
  return std::sqrt((weight * u.coeffs().abs2()).sum() / g.length());
}

double lebesgue_norm(const SpectralField& u, int p) {
  const Grid& g = u.grid();
  Index n = 0;
  switch (p) {
    case 2: n = g.modes(); break;
    case 4: n = 2 * g.modes(); break;
    // |u|^6 reaches 3M in frequency; the next power-of-two multiple is alias-free.
    case 6: n = 4 * g.modes(); break;
    default: throw DomainError("lebesgue_norm: p must be 2, 4 or 6");
  }
  const Eigen::ArrayXd a = padded_samples(u, n).abs2();
  const double h = g.length() / static_cast<double>(n);
  const double integral = h * a.pow(p / 2).sum();
  return std::pow(integral, 1.0 / p);
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  return (a.coeffs().conjugate() * b.coeffs()).real().sum() / a.grid().length();
}

}  // namespace bsq
