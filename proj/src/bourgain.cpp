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

#include "bsq/bourgain.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/errors.hpp"
#include "fft.hpp"

namespace bsq {

double window_value(double t, double delta) {
  const double q = 0.25 * delta;
  if (t <= 0.0 || t >= delta) return 0.0;
  if (t < q) return std::pow(std::sin(0.5 * M_PI * t / q), 2);
  if (t > delta - q) return std::pow(std::sin(0.5 * M_PI * (delta - t) / q), 2);
  return 1.0;
}

Index auto_time_samples(double max_frequency, double delta) {
  const double need = std::max(16.0, 4.0 * max_frequency * delta / (2.0 * M_PI));
  Index n = 16;
  while (static_cast<double>(n) < need) n *= 2;
  return n;
}

SpaceTimeField::SpaceTimeField(const Grid& grid, double delta, std::vector<Index> support,
                               Eigen::MatrixXcd values, Window window)
    : grid_(grid), delta_(delta), support_(std::move(support)), values_(std::move(values)),
      window_(window) {
  if (!(delta_ > 0.0) || !std::isfinite(delta_))
    throw PreconditionError("SpaceTimeField: delta must be > 0");
  if (values_.cols() < 16) throw PreconditionError("SpaceTimeField: need at least 16 time samples");
  if (static_cast<Index>(support_.size()) != values_.rows())
    throw ShapeError("SpaceTimeField: support size does not match value rows");
  for (Index k : support_)
    if (k < 0 || k >= grid_.modes()) throw ShapeError("SpaceTimeField: support slot out of range");
}

SpaceTimeField SpaceTimeField::zeros(const Grid& grid, double delta, Index time_samples) {
  std::vector<Index> all(static_cast<std::size_t>(grid.modes()));
  for (Index k = 0; k < grid.modes(); ++k) all[k] = k;
  return SpaceTimeField(grid, delta, std::move(all),
                        Eigen::MatrixXcd::Zero(grid.modes(), time_samples));
}

double SpaceTimeField::window_weight(Index j) const {
  return window_ == Window::none ? 1.0 : window_value(time(j), delta_);
}

SpectralField SpaceTimeField::at_time(Index j) const {
  SpectralField u(grid_);
  for (std::size_t r = 0; r < support_.size(); ++r) u.coeffs()(support_[r]) = values_(r, j);
  return u;
}

double SpaceTimeField::max_wavenumber() const {
  double m = 0.0;
  for (Index k : support_) m = std::max(m, std::abs(grid_.wavenumber(k)));
  return m;
}

SpaceTimeField operator*(Complex scale, SpaceTimeField f) { return f *= scale; }

std::vector<Index> active_slots(const std::vector<SpectralField>& fields, double floor) {
  if (fields.empty()) return {};
  const Grid& g = fields.front().grid();
  std::vector<Index> out;
  for (Index k = 0; k < g.modes(); ++k) {
    for (const auto& f : fields) {
      require_same_grid(g, f.grid(), "active_slots");
      if (std::abs(f.coeffs()(k)) > floor) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

SpaceTimeField sample_fields(const std::vector<SpectralField>& fields, double delta,
                             std::vector<Index> support) {
  if (fields.size() < 16) throw PreconditionError("sample_fields: need at least 16 time samples");
  const Grid& g = fields.front().grid();
  if (support.empty())
    for (Index k = 0; k < g.modes(); ++k) support.push_back(k);
  Eigen::MatrixXcd v(static_cast<Index>(support.size()), static_cast<Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    require_same_grid(g, fields[j].grid(), "sample_fields");
    for (std::size_t r = 0; r < support.size(); ++r) v(r, j) = fields[j].coeffs()(support[r]);
  }
  return SpaceTimeField(g, delta, std::move(support), std::move(v));
}

SpaceTimeField free_evolution(const SpectralField& phi, const SpectralField& psi, double delta,
                              Index time_samples) {
  require_same_grid(phi.grid(), psi.grid(), "free_evolution");
  const Grid& g = phi.grid();
  const SpectralField psi_x = apply_multiplier(derivative_multiplier(g, 1), psi);
  std::vector<Index> support = active_slots({phi, psi_x});
  double wmax = 0.0;
  for (Index k : support) wmax = std::max(wmax, g.frequencies()(k));
  const Index n = time_samples > 0 ? time_samples : auto_time_samples(wmax, delta);
  const double dt = delta / static_cast<double>(n - 1);
  Eigen::MatrixXcd v(static_cast<Index>(support.size()), n);
  for (std::size_t r = 0; r < support.size(); ++r) {
    const Index k = support[r];
    const double w = g.frequencies()(k);
    for (Index j = 0; j < n; ++j) {
      const double t = dt * static_cast<double>(j);
      const double vs = w > 0.0 ? std::sin(w * t) / w : t;
      v(r, j) = std::cos(w * t) * phi.coeffs()(k) + vs * psi_x.coeffs()(k);
    }
  }
  return SpaceTimeField(g, delta, std::move(support), std::move(v));
}

DyadicPiece project(const SpaceTimeField& f, Band band) {
  if (!(band.lower >= 0.0 && band.upper > band.lower))
    throw PreconditionError("project: band must satisfy 0 <= lower < upper");
  std::vector<Index> keep;
  std::vector<Index> rows;
  for (std::size_t r = 0; r < f.support().size(); ++r) {
    const double a = std::abs(f.grid().wavenumber(f.support()[r]));
    if (a >= band.lower && a < band.upper) {
      keep.push_back(f.support()[r]);
      rows.push_back(static_cast<Index>(r));
    }
  }
  Eigen::MatrixXcd v(static_cast<Index>(rows.size()), f.time_samples());
  for (std::size_t i = 0; i < rows.size(); ++i) v.row(i) = f.values().row(rows[i]);
  return {SpaceTimeField(f.grid(), f.delta(), std::move(keep), std::move(v), f.window()), band};
}

DyadicPiece wave_packet(const Grid& grid, double delta, Index time_samples, double center,
                        double width, Band band, double x0, double t0) {
  if (!(width > 0.0)) throw PreconditionError("wave_packet: width must be > 0");
  if (!(band.lower >= 0.0 && band.upper > band.lower))
    throw PreconditionError("wave_packet: band must satisfy 0 <= lower < upper");
  std::vector<Index> support;
  for (Index k = 0; k < grid.modes(); ++k) {
    const double a = std::abs(grid.wavenumber(k));
    if (a >= band.lower && a < band.upper) support.push_back(k);
  }
  const double dt = delta / static_cast<double>(time_samples - 1);
  Eigen::MatrixXcd v(static_cast<Index>(support.size()), time_samples);
  for (std::size_t r = 0; r < support.size(); ++r) {
    const double xi = grid.wavenumber(support[r]);
    const double w = grid.frequencies()(support[r]);
    const double amp = std::exp(-0.5 * std::pow((xi - center) / width, 2));
    for (Index j = 0; j < time_samples; ++j)
      v(r, j) = std::polar(amp, -xi * x0 - w * (dt * static_cast<double>(j) - t0));
  }
  return {SpaceTimeField(grid, delta, std::move(support), std::move(v)), band};
}

namespace {

// Time frequency of FFT slot m.
double tau(Index m, Index n, double period) {
  const Index k = m < n / 2 ? m : m - n;
  return 2.0 * M_PI * static_cast<double>(k) / period;
}

// Windowed samples of one row transformed in time (without the dt factor).
void row_spectrum(const SpaceTimeField& f, Index r, Eigen::ArrayXcd& in, Eigen::ArrayXcd& out) {
  const Index n = f.time_samples();
  in.resize(n);
  out.resize(n);
  for (Index j = 0; j < n; ++j) in(j) = f.values()(r, j) * f.window_weight(j);
  detail::fft_forward(out.data(), in.data(), n);
}

template <class Weight>
double weighted_norm(const SpaceTimeField& f, double s, double b, Weight weight) {
  if (!(b >= 0.0 && b <= 1.0)) throw PreconditionError("xsb_norm: b must lie in [0, 1]");
  const Index n = f.time_samples();
  const double dt = f.time_step();
  const double period = dt * static_cast<double>(n);
  Eigen::ArrayXcd in, out;
  double sum = 0.0;
  for (Index r = 0; r < static_cast<Index>(f.support().size()); ++r) {
    const Index slot = f.support()[r];
    const double xi = f.grid().wavenumber(slot);
    const double sx = std::pow(bracket(xi), 2.0 * s);
    row_spectrum(f, r, in, out);
    double row = 0.0;
    for (Index m = 0; m < n; ++m) {
      const double w = weight(tau(m, n, period), slot);
      row += std::pow(1.0 + w * w, b) * std::norm(out(m));
    }
    sum += sx * row;
  }
  return std::sqrt(sum * dt * dt / (f.grid().length() * period));
}

void require_compatible(const SpaceTimeField& a, const SpaceTimeField& b, const char* where) {
  require_same_grid(a.grid(), b.grid(), where);
  if (a.delta() != b.delta() || a.time_samples() != b.time_samples())
    throw ShapeError(std::string(where) + ": time grids differ");
}

Index max_lattice(const SpaceTimeField& f) {
  Index m = 0;
  for (Index k : f.support()) m = std::max(m, std::abs(f.grid().lattice_index(k)));
  return m;
}

// Points for exact quadrature of a trigonometric polynomial of the given
// degree: a multiple of M exceeding it.
Index quadrature_points(const Grid& g, Index degree) {
  Index n = g.modes();
  while (n <= degree) n += g.modes();
  return n;
}

bool in_middle(const SpaceTimeField& f, Index j) {
  const double t = f.time(j);
  const double tol = 1e-12 * f.delta();
  return t >= 0.25 * f.delta() - tol && t <= 0.75 * f.delta() + tol;
}

double l2_norm_sq_rows(const SpaceTimeField& f) {
  return f.values().squaredNorm();
}

}  // namespace

double xsb_norm(const SpaceTimeField& f, double s, double b, XsbWeight weight) {
  const Grid& g = f.grid();
  if (weight == XsbWeight::gamma)
    return weighted_norm(f, s, b, [&](double t, Index k) { return std::abs(t) - g.frequencies()(k); });
  return weighted_norm(f, s, b, [&](double t, Index k) {
    const double xi = g.wavenumber(k);
    return std::abs(t) - xi * xi;
  });
}

double xpm_norm(const SpaceTimeField& f, double s, double b, int sign) {
  if (sign == 0) throw PreconditionError("xpm_norm: sign must be nonzero");
  const Grid& g = f.grid();
  const double sg = sign > 0 ? -1.0 : 1.0;
  return weighted_norm(f, s, b, [&](double t, Index k) { return t + sg * g.frequencies()(k); });
}

std::pair<SpaceTimeField, SpaceTimeField> decompose_pm(const SpaceTimeField& f) {
  const Index n = f.time_samples();
  const Index rows = static_cast<Index>(f.support().size());
  Eigen::MatrixXcd plus(rows, n), minus(rows, n);
  Eigen::ArrayXcd in, out, back(n), masked(n);
  for (Index r = 0; r < rows; ++r) {
    row_spectrum(f, r, in, out);
    masked = out;
    masked.tail(n / 2).setZero();
    detail::fft_backward(back.data(), masked.data(), n);
    plus.row(r) = back.matrix().transpose() / static_cast<double>(n);
    minus.row(r) = in.matrix().transpose() - plus.row(r);
  }
  return {SpaceTimeField(f.grid(), f.delta(), f.support(), std::move(plus), Window::none),
          SpaceTimeField(f.grid(), f.delta(), f.support(), std::move(minus), Window::none)};
}

double spacetime_lebesgue_norm(const SpaceTimeField& f, int p) {
  if (p != 2 && p != 4 && p != 6) throw PreconditionError("spacetime_lebesgue_norm: p must be 2, 4 or 6");
  const Index P = quadrature_points(f.grid(), p * max_lattice(f));
  const double dx = f.grid().length() / static_cast<double>(P);
  double sum = 0.0;
  for (Index j = 0; j < f.time_samples(); ++j) {
    if (!in_middle(f, j)) continue;
    const Eigen::ArrayXcd v = padded_samples(f.at_time(j), P);
    const Eigen::ArrayXd a = v.abs2();
    sum += (p == 2 ? a : p == 4 ? (a * a).eval() : (a * a * a).eval()).sum() * dx;
  }
  return std::pow(sum * f.time_step(), 1.0 / p);
}

double product_norm(const SpaceTimeField& f1, const SpaceTimeField& f2) {
  require_compatible(f1, f2, "product_norm");
  const Index P = quadrature_points(f1.grid(), 2 * (max_lattice(f1) + max_lattice(f2)));
  const double dx = f1.grid().length() / static_cast<double>(P);
  double sum = 0.0;
  for (Index j = 0; j < f1.time_samples(); ++j) {
    if (!in_middle(f1, j)) continue;
    const Eigen::ArrayXcd v = padded_samples(f1.at_time(j), P) * padded_samples(f2.at_time(j), P);
    sum += v.abs2().sum() * dx;
  }
  return std::sqrt(sum * f1.time_step());
}

double strichartz_ratio(const SpaceTimeField& f, int p, double b) {
  if (l2_norm_sq_rows(f) == 0.0) throw DomainError("strichartz_ratio: zero input");
  return spacetime_lebesgue_norm(f, p) / xsb_norm(f, 0.0, b);
}

namespace {

double bilinear_core(const SpaceTimeField& f1, const SpaceTimeField& f2, double b, const char* where) {
  const double num = product_norm(f1, f2);
  if (num == 0.0) return 0.0;
  const double den = xsb_norm(f1, 0.0, b) * xsb_norm(f2, 0.0, b);
  if (!(den > 0.0)) throw DomainError(std::string(where) + ": zero denominator");
  return num / den;
}

void require_band(const DyadicPiece& f) {
  for (Index k : f.base.support()) {
    const double a = std::abs(f.base.grid().wavenumber(k));
    if (a < f.band.lower || a >= f.band.upper)
      throw PreconditionError("dyadic piece has support outside its band");
  }
}

}  // namespace

double bilinear_ratio(const DyadicPiece& f1, const DyadicPiece& f2, double b) {
  if (f1.band.lower > f2.band.lower)
    throw PreconditionError("bilinear_ratio: need band1.lower <= band2.lower");
  require_band(f1);
  require_band(f2);
  return std::sqrt(f2.band.lower) * bilinear_core(f1.base, f2.base, b, "bilinear_ratio");
}

double halfderiv_bilinear_ratio(const DyadicPiece& f1, const DyadicPiece& f2, double b) {
  if (f2.band.lower < 2.0 * f1.band.upper)
    throw PreconditionError(
        "halfderiv_bilinear_ratio: bands not separated (need band2.lower >= 2 band1.upper)");
  require_band(f1);
  require_band(f2);
  SpaceTimeField d = f1.base;
  for (std::size_t r = 0; r < d.support().size(); ++r)
    d.values().row(r) *= std::sqrt(std::abs(d.grid().wavenumber(d.support()[r])));
  const double num = product_norm(d, f2.base);
  if (num == 0.0) return 0.0;
  const double den = xsb_norm(f1.base, 0.0, b) * xsb_norm(f2.base, 0.0, b);
  if (!(den > 0.0)) throw DomainError("halfderiv_bilinear_ratio: zero denominator");
  return num / den;
}

double cubic_bound_ratio(const SpaceTimeField& f, double s, double b) {
  if (!(s >= 0.0)) throw PreconditionError("cubic_bound_ratio: s must be >= 0");
  if (l2_norm_sq_rows(f) == 0.0) throw DomainError("cubic_bound_ratio: zero input");
  const Grid& g = f.grid();
  std::vector<Index> all(static_cast<std::size_t>(g.modes()));
  for (Index k = 0; k < g.modes(); ++k) all[k] = k;
  Eigen::MatrixXcd v(g.modes(), f.time_samples());
  for (Index j = 0; j < f.time_samples(); ++j)
    v.col(j) = dealiased_cubic(f.at_time(j)).coeffs().matrix();
  const SpaceTimeField cubic(g, f.delta(), std::move(all), std::move(v), f.window());
  const double den = xsb_norm(f, s, b);
  return xsb_norm(cubic, s, 0.0) / (den * den * den);
}

double linear_bound_ratio(const SpectralField& phi, const SpectralField& psi, double s,
                          double delta, Index time_samples, double b) {
  const double data = sobolev_norm(phi, s) + sobolev_norm(psi, s - 1.0);
  if (data == 0.0) throw DomainError("linear_bound_ratio: zero data");
  return xsb_norm(free_evolution(phi, psi, delta, time_samples), s, b) / data;
}

double weight_comparison(double x, double y, Dispersion dispersion) {
  return (1.0 + std::abs(x - y)) / (1.0 + std::abs(x - dispersion(std::sqrt(y))));
}

RatioRange weight_comparison_range(double extent, Index points, Dispersion dispersion) {
  if (points < 2) throw PreconditionError("weight_comparison_range: need >= 2 points");
  RatioRange r{1.0, 1.0};
  const double h = extent / static_cast<double>(points - 1);
  for (Index i = 0; i < points; ++i) {
    for (Index j = 0; j < points; ++j) {
      const double q = weight_comparison(h * static_cast<double>(i), h * static_cast<double>(j), dispersion);
      r.min = std::min(r.min, q);
      r.max = std::max(r.max, q);
    }
  }
  return r;
}

}  // namespace bsq
