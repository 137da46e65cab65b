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

// Discrete space-time norms on [0, delta] x torus: X_{s,b}, the X+/- pieces,
// mixed Lebesgue norms, and ratio probes for the linear, bilinear and cubic
// estimates.
//
// A SpaceTimeField samples a function at t_j = j delta / (T_n - 1). The time
// transform treats the windowed samples as one period of length T_n dt, so
// tau lives on the lattice 2 pi m / (T_n dt) and
//
//     F(xi, tau) = dt * sum_j w(t_j) c_xi(t_j) exp(-i tau t_j),
//     ||f||_{X_{s,b}}^2 = sum <|tau| - gamma(xi)>^{2b} <xi>^{2s} |F|^2 / (L T_n dt).

#ifndef BSQ_BOURGAIN_HPP
#define BSQ_BOURGAIN_HPP

#include <utility>
#include <vector>

#include "bsq/spectral.hpp"

namespace bsq {

enum class Window { taper, none };

/// sin^2 ramps on [0, delta/4] and [3 delta/4, delta], 1 in between.
double window_value(double t, double delta);

/// Smallest power of two >= max(16, 4 omega_max delta / (2 pi)).
Index auto_time_samples(double max_frequency, double delta);

class SpaceTimeField {
 public:
  /// values(r, j) is the Fourier coefficient of slot support[r] at time t_j.
  /// Throws ShapeError on inconsistent sizes and PreconditionError when
  /// T_n < 16 or delta <= 0.
  SpaceTimeField(const Grid& grid, double delta, std::vector<Index> support,
                 Eigen::MatrixXcd values, Window window = Window::taper);

  /// Zero field on the whole lattice.
  static SpaceTimeField zeros(const Grid& grid, double delta, Index time_samples);

  const Grid& grid() const { return grid_; }
  double delta() const { return delta_; }
  Index time_samples() const { return values_.cols(); }
  double time_step() const { return delta_ / static_cast<double>(values_.cols() - 1); }
  double time(Index j) const { return time_step() * static_cast<double>(j); }
  const std::vector<Index>& support() const { return support_; }
  const Eigen::MatrixXcd& values() const { return values_; }
  Eigen::MatrixXcd& values() { return values_; }
  Window window() const { return window_; }
  double window_weight(Index j) const;

  /// Unwindowed spatial field at t_j.
  SpectralField at_time(Index j) const;
  /// Largest |xi| in the support (0 for an empty support).
  double max_wavenumber() const;

  SpaceTimeField& operator*=(Complex scale) {
    values_ *= scale;
    return *this;
  }

 private:
  Grid grid_;
  double delta_;
  std::vector<Index> support_;
  Eigen::MatrixXcd values_;
  Window window_;
};

SpaceTimeField operator*(Complex scale, SpaceTimeField f);

/// Slots where any of the fields has a coefficient above `floor` in modulus.
std::vector<Index> active_slots(const std::vector<SpectralField>& fields, double floor = 0.0);

/// Samples fields[j] at t_j = j delta / (n - 1), restricted to `support`
/// (all slots when empty).
SpaceTimeField sample_fields(const std::vector<SpectralField>& fields, double delta,
                             std::vector<Index> support = {});

/// Free evolution V_c(t) phi + V_s(t) psi_x on [0, delta]. time_samples = 0
/// picks auto_time_samples for the active modes of the data.
SpaceTimeField free_evolution(const SpectralField& phi, const SpectralField& psi, double delta,
                              Index time_samples = 0);

struct Band {
  double lower = 0.0;
  double upper = 0.0;
};

/// A field whose spatial spectrum lies in lower <= |xi| < upper.
struct DyadicPiece {
  SpaceTimeField base;
  Band band;
};

/// Restricts the support to the annulus; exact in the discrete setting.
DyadicPiece project(const SpaceTimeField& f, Band band);

/// Free wave packet with coefficients
///     exp(-(xi - center)^2 / (2 width^2)) exp(-i xi x0 - i omega(xi) (t - t0))
/// on the lattice points of the band. It focuses at x = x0 at time t0 and
/// travels with group velocity omega'(xi) near xi = center.
DyadicPiece wave_packet(const Grid& grid, double delta, Index time_samples, double center,
                        double width, Band band, double x0, double t0);

enum class XsbWeight { gamma, xi_squared };

/// Windowed X_{s,b} norm. b in [0, 1].
double xsb_norm(const SpaceTimeField& f, double s, double b, XsbWeight weight = XsbWeight::gamma);

/// X+ (sign > 0, weight <tau - gamma>) or X- (sign < 0, weight <tau + gamma>).
double xpm_norm(const SpaceTimeField& f, double s, double b, int sign);

/// Splits the windowed field by the sign of tau (tau = 0 goes to the + piece).
/// The pieces carry the window already and have Window::none.
std::pair<SpaceTimeField, SpaceTimeField> decompose_pm(const SpaceTimeField& f);

/// (int over the middle half of [0, delta] and the torus of |f|^p)^(1/p),
/// p in {2, 4, 6}; exact in x, rectangle rule in t.
double spacetime_lebesgue_norm(const SpaceTimeField& f, int p);

/// ||f1 f2||_{L^2} over the middle half of [0, delta].
double product_norm(const SpaceTimeField& f1, const SpaceTimeField& f2);

/// ||f||_{L^p(middle)} / ||f||_{X_{0,b}}. Throws DomainError on zero input.
double strichartz_ratio(const SpaceTimeField& f, int p, double b = 0.51);

/// N2^(1/2) ||f1 f2||_{L^2} / (||f1||_{X_{0,b}} ||f2||_{X_{0,b}}), N2 = band2.lower.
/// Requires band1.lower <= band2.lower.
double bilinear_ratio(const DyadicPiece& f1, const DyadicPiece& f2, double b = 0.51);

/// ||(D^(1/2) f1) f2||_{L^2} / (||f1||_{X_{0,b}} ||f2||_{X_{0,b}}). Requires
/// band2.lower >= 2 band1.upper, which gives |xi1| <= min |xi1 -/+ xi2|.
double halfderiv_bilinear_ratio(const DyadicPiece& f1, const DyadicPiece& f2, double b = 0.51);

/// ||f||^2 f||_{X_{s,0}} / ||f||_{X_{s,b}}^3.
double cubic_bound_ratio(const SpaceTimeField& f, double s, double b = 0.51);

/// ||free evolution||_{X_{s,b}} / (||phi||_{H^s} + ||psi||_{H^(s-1)}).
double linear_bound_ratio(const SpectralField& phi, const SpectralField& psi, double s,
                          double delta = 1.0, Index time_samples = 0, double b = 0.51);

/// (1 + |x - y|) / (1 + |x - omega(sqrt(y))|), comparing <|tau| - xi^2> with
/// <|tau| - omega(xi)> at x = |tau|, y = xi^2. For omega = gamma the
/// denominator is 1 + |x - sqrt(y^2 + y)|.
double weight_comparison(double x, double y, Dispersion dispersion = &dispersion_gamma);

struct RatioRange {
  double min = 0.0;
  double max = 0.0;
};

/// Extremes of weight_comparison over a points x points grid of [0, extent]^2.
RatioRange weight_comparison_range(double extent = 100.0, Index points = 2001,
                                   Dispersion dispersion = &dispersion_gamma);

}  // namespace bsq

#endif  // BSQ_BOURGAIN_HPP
