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

// Periodic grids, Fourier fields and single-time norms.
//
// Fourier coefficients use the continuum normalization
//
//     c_k = (L / M) * sum_j u(x_j) exp(-i xi_k x_j)  ~  int u(x) exp(-i xi_k x) dx,
//
// so that ||u||_{L^2}^2 = (1 / L) * sum_k |c_k|^2. Coefficients are stored in
// FFT order: storage slot j holds lattice index k = j for j < M/2 and
// k = j - M otherwise.

#ifndef BSQ_SPECTRAL_HPP
#define BSQ_SPECTRAL_HPP

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <memory>
#include <string>

namespace bsq {

using Index = Eigen::Index;
using Complex = std::complex<double>;

/// Dispersion relation of the linear flow, xi -> omega(xi).
using Dispersion = double (*)(double);

/// gamma(xi) = sqrt(xi^2 + xi^4). Throws DomainError on non-finite input.
double dispersion_gamma(double xi);

/// Japanese bracket <a> = (1 + a^2)^(1/2).
inline double bracket(double a) { return std::sqrt(1.0 + a * a); }

class Grid {
 public:
  /// padded_modes = 0 selects the default 2 * modes.
  Grid(double length, Index modes, Index padded_modes = 0,
       Dispersion dispersion = &dispersion_gamma);

  double length() const { return length_; }
  Index modes() const { return modes_; }
  Index padded_modes() const { return padded_; }
  Dispersion dispersion() const { return dispersion_; }

  /// Lattice index k of storage slot j.
  Index lattice_index(Index slot) const {
    return slot < modes_ / 2 ? slot : slot - modes_;
  }
  /// Storage slot of lattice index k, -M/2 <= k < M/2.
  Index slot(Index k) const;

  double wavenumber(Index slot) const { return tables_->xi(slot); }
  const Eigen::ArrayXd& wavenumbers() const { return tables_->xi; }
  /// Dispersion evaluated on the lattice.
  const Eigen::ArrayXd& frequencies() const { return tables_->omega; }
  double max_wavenumber() const;
  double max_frequency() const { return tables_->omega.maxCoeff(); }
  double spacing() const { return length_ / static_cast<double>(modes_); }
  Eigen::ArrayXd points() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.length_ == b.length_ && a.modes_ == b.modes_ &&
           a.padded_ == b.padded_ && a.dispersion_ == b.dispersion_;
  }

 private:
  struct Tables {
    Eigen::ArrayXd xi;
    Eigen::ArrayXd omega;
  };

  double length_;
  Index modes_;
  Index padded_;
  Dispersion dispersion_;
  std::shared_ptr<const Tables> tables_;
};

class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, Eigen::ArrayXcd coeffs);

  const Grid& grid() const { return grid_; }
  const Eigen::ArrayXcd& coeffs() const { return coeffs_; }
  Eigen::ArrayXcd& coeffs() { return coeffs_; }

  /// Coefficient at lattice index k.
  Complex at(Index k) const { return coeffs_(grid_.slot(k)); }
  Complex& at(Index k) { return coeffs_(grid_.slot(k)); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale) {
    coeffs_ *= scale;
    return *this;
  }

 private:
  Grid grid_;
  Eigen::ArrayXcd coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex scale, SpectralField a);

/// Throws ShapeError unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

struct Multiplier {
  Grid grid;
  Eigen::ArrayXcd values;
  std::string label;
};

Multiplier identity_multiplier(const Grid& grid);
/// (i xi)^order.
Multiplier derivative_multiplier(const Grid& grid, int order = 1);
/// <xi>^s.
Multiplier bracket_multiplier(const Grid& grid, double s);
/// |xi|^p, with the value at xi = 0 set to 0 (p < 0) or 0^p (p >= 0).
Multiplier abs_power_multiplier(const Grid& grid, double p);
/// (-Delta)^(-1/2): |xi|^-1 with the zero mode mapped to 0.
Multiplier inverse_sqrt_laplacian(const Grid& grid);
/// Pointwise product of two multipliers on one grid.
Multiplier compose(const Multiplier& a, const Multiplier& b);

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& u);

/// Samples at x_j = j L / n for n = M, or any even n >= M (padded products;
/// coefficients outside the retained band are discarded).
SpectralField forward_transform(const Grid& grid, const Eigen::ArrayXcd& samples);
/// Samples at the M grid points.
Eigen::ArrayXcd inverse_transform(const SpectralField& u);
/// Samples of the band-limited interpolant at n >= M equispaced points.
Eigen::ArrayXcd padded_samples(const SpectralField& u, Index n);

/// Retained-band coefficients of |u|^2 u, zero-padded to P points.
SpectralField dealiased_cubic(const SpectralField& u);

/// (sum_k <xi_k>^{2s} |c_k|^2 / L)^{1/2}.
double sobolev_norm(const SpectralField& u, double s);
/// (int |u|^p dx)^{1/p} for p in {2, 4, 6}, exact for band-limited u.
double lebesgue_norm(const SpectralField& u, int p);
/// Re int conj(a) b dx.
double inner_product(const SpectralField& a, const SpectralField& b);

}  // namespace bsq

#endif  // BSQ_SPECTRAL_HPP
