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

// Brute-force reference computations used by the tests. None of these use
// an FFT.

#ifndef BSQ_TESTS_ORACLES_HPP
#define BSQ_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>

#include "bsq/bourgain.hpp"
#include "bsq/experiments.hpp"

namespace oracle {

using bsq::Complex;
using bsq::Index;

/// c_k = (L / n) sum_j u_j exp(-i xi_k x_j) for the M retained lattice
/// indices, in FFT order.
inline Eigen::ArrayXcd direct_dft(const bsq::Grid& g, const Eigen::ArrayXcd& samples) {
  const Index n = samples.size();
  const double L = g.length();
  Eigen::ArrayXcd c = Eigen::ArrayXcd::Zero(g.modes());
  for (Index slot = 0; slot < g.modes(); ++slot) {
    const double xi = g.wavenumber(slot);
    Complex acc = 0.0;
    for (Index j = 0; j < n; ++j)
      acc += samples(j) * std::polar(1.0, -xi * L * static_cast<double>(j) / static_cast<double>(n));
    c(slot) = acc * L / static_cast<double>(n);
  }
  return c;
}

/// u(x) = (1 / L) sum_k c_k exp(i xi_k x), evaluated directly.
inline Complex evaluate(const bsq::SpectralField& u, double x) {
  const bsq::Grid& g = u.grid();
  Complex acc = 0.0;
  for (Index k = 0; k < g.modes(); ++k) acc += u.coeffs()(k) * std::polar(1.0, g.wavenumber(k) * x);
  return acc / g.length();
}

/// Retained coefficients of |u|^2 u by triple convolution:
/// (1 / L^2) sum_{a - b + c = k} c_a conj(c_b) c_c.
inline Eigen::ArrayXcd triple_convolution(const bsq::SpectralField& u) {
  const bsq::Grid& g = u.grid();
  const Index M = g.modes();
  const double L = g.length();
  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(M);
  for (Index a = -M / 2; a < M / 2; ++a)
    for (Index b = -M / 2; b < M / 2; ++b) {
      const Complex ab = u.at(a) * std::conj(u.at(b));
      if (ab == 0.0) continue;
      for (Index c = -M / 2; c < M / 2; ++c) {
        const Index k = a - b + c;
        if (k >= -M / 2 && k < M / 2) out(g.slot(k)) += ab * u.at(c) / (L * L);
      }
    }
  return out;
}

/// Midpoint-rule integral of f over [0, L] with n points (exact for
/// trigonometric polynomials of degree < n).
inline double periodic_integral(double L, int n, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += f(L * (j + 0.5) / n);
  return acc * L / n;
}

/// Windowed X_{s,b} norm from physical samples u(x_i, t_j) (rows x, columns t)
/// by a direct double sum over (x, t) for every (xi, tau) bin.
inline double xsb_direct(const bsq::Grid& g, double delta, const Eigen::MatrixXcd& samples, double s,
                         double b) {
  const Index M = samples.rows();
  const Index n = samples.cols();
  const double L = g.length();
  const double dx = L / static_cast<double>(M);
  const double dt = delta / static_cast<double>(n - 1);
  const double period = dt * static_cast<double>(n);
  double sum = 0.0;
  for (Index k = -M / 2; k < M / 2; ++k) {
    const double xi = 2.0 * M_PI * static_cast<double>(k) / L;
    for (Index m = -n / 2; m < n / 2; ++m) {
      const double tau = 2.0 * M_PI * static_cast<double>(m) / period;
      Complex F = 0.0;
      for (Index i = 0; i < M; ++i)
        for (Index j = 0; j < n; ++j) {
          const double x = dx * static_cast<double>(i);
          const double t = dt * static_cast<double>(j);
          F += samples(i, j) * bsq::window_value(t, delta) * std::polar(1.0, -(xi * x + tau * t));
        }
      F *= dx * dt;
      const double w = std::abs(tau) - bsq::dispersion_gamma(xi);
      sum += std::pow(1.0 + w * w, b) * std::pow(1.0 + xi * xi, s) * std::norm(F);
    }
  }
  return std::sqrt(sum / (L * period));
}

/// Relative difference |a - b| / |b|.
inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Smooth real random field with coefficients decaying like <xi>^-decay.
inline bsq::SpectralField smooth(const bsq::Grid& g, std::uint64_t key, double decay = 3.0,
                                 double h1 = 0.5) {
  bsq::CounterRng rng(2024, key);
  return bsq::random_field(g, decay, 1.0, h1, rng);
}

/// Mean-zero state with u_t = psi_x.
inline bsq::WaveState state_from(const bsq::SpectralField& phi, const bsq::SpectralField& psi) {
  return bsq::WaveState(phi, bsq::apply_multiplier(bsq::derivative_multiplier(phi.grid(), 1), psi));
}

}  // namespace oracle

#endif  // BSQ_TESTS_ORACLES_HPP
