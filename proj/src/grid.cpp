#include "afd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "afd/errors.hpp"
#include "fft_plan.hpp"

namespace afd {

namespace {

using cplx = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> half_spectrum(const GridFunction& f) {
  const auto& plan = f.grid().fft();
  std::vector<cplx> out(plan.half_size());
  plan.forward(f.values().data(), out.data());
  return out;
}

// `half` holds unnormalized r2c output; consumed.
GridFunction synthesize(const Grid& grid, std::vector<cplx> half) {
  std::vector<double> out(grid.size());
  grid.fft().inverse(half.data(), out.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (double& v : out) v *= scale;
  return GridFunction(grid, std::move(out));
}

// Applies a Fourier multiplier m(k) for k = 0..n/2.
template <class Multiplier>
GridFunction apply_multiplier(const GridFunction& f, Multiplier&& m) {
  auto half = half_spectrum(f);
  for (std::size_t k = 0; k < half.size(); ++k) half[k] *= m(static_cast<int>(k));
  return synthesize(f.grid(), std::move(half));
}

cplx ik_power(int k, int order, int nyquist) {
  if (order % 2 == 1 && k == nyquist) return 0.0;
  const double kk = static_cast<double>(k);
  switch (order) {
    case 1: return {0.0, kk};
    case 2: return {-kk * kk, 0.0};
    case 3: return {0.0, -kk * kk * kk};
    default: return {kk * kk * kk * kk, 0.0};
  }
}

}  // namespace

Grid::Grid(std::size_t n) : n_(n) {
  if (n < 8 || !is_power_of_two(n)) {
    throw InvalidArgument("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  plan_ = detail::FftPlan::get(n);
}

std::vector<double> Grid::points() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("grid function has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("grid function value is not finite");
  }
}

GridFunction GridFunction::constant(const Grid& grid, double c) {
  return GridFunction(grid, std::vector<double>(grid.size(), c));
}

SpectrumField::SpectrumField(Grid grid, std::vector<cplx> coefficients)
    : grid_(std::move(grid)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != grid_.size()) {
    throw InvalidArgument("spectrum size does not match grid");
  }
}

cplx SpectrumField::coefficient(int k) const {
  if (k < grid_.min_wavenumber() || k > grid_.max_wavenumber()) {
    throw InvalidArgument("wavenumber " + std::to_string(k) + " not represented");
  }
  const auto n = static_cast<int>(grid_.size());
  return coefficients_[static_cast<std::size_t>(k >= 0 ? k : k + n)];
}

SpectrumField to_spectrum(const GridFunction& f) {
  const std::size_t n = f.size();
  const auto half = half_spectrum(f);
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<cplx> full(n);
  for (std::size_t k = 0; k <= n / 2; ++k) full[k] = half[k] * scale;
  for (std::size_t k = 1; k < n / 2; ++k) full[n - k] = std::conj(full[k]);
  return SpectrumField(f.grid(), std::move(full));
}

GridFunction from_spectrum(const SpectrumField& s) {
  const std::size_t n = s.grid().size();
  const auto c = s.data();
  // Hermitian part, so the synthesis is real even for a non-Hermitian input.
  std::vector<cplx> half(n / 2 + 1);
  half[0] = c[0].real();
  half[n / 2] = c[n / 2].real();
  for (std::size_t k = 1; k < n / 2; ++k) half[k] = 0.5 * (c[k] + std::conj(c[n - k]));
  std::vector<double> out(n);
  s.grid().fft().inverse(half.data(), out.data());
  return GridFunction(s.grid(), std::move(out));
}

GridFunction derivative(const GridFunction& f, int order) {
  if (order < 1 || order > 4) {
    throw InvalidArgument("derivative order must be in 1..4, got " + std::to_string(order));
  }
  const int nyquist = f.grid().max_wavenumber();
  return apply_multiplier(f, [&](int k) { return ik_power(k, order, nyquist); });
}

std::pair<GridFunction, GridFunction> first_and_second_derivative(const GridFunction& f) {
  const int nyquist = f.grid().max_wavenumber();
  const auto half = half_spectrum(f);
  auto d1 = half;
  auto d2 = half;
  for (std::size_t i = 0; i < half.size(); ++i) {
    const int k = static_cast<int>(i);
    d1[i] *= ik_power(k, 1, nyquist);
    d2[i] *= ik_power(k, 2, nyquist);
  }
  return {synthesize(f.grid(), std::move(d1)), synthesize(f.grid(), std::move(d2))};
}

GridFunction fd_derivative(const GridFunction& f) {
  const std::size_t n = f.size();
  const double inv = 1.0 / (2.0 * f.grid().dx());
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = (f[(j + 1) % n] - f[(j + n - 1) % n]) * inv;
  }
  return GridFunction(f.grid(), std::move(out));
}

double quadrature(const GridFunction& f) {
  const auto v = f.values();
  return f.grid().dx() * std::accumulate(v.begin(), v.end(), 0.0);
}

double mean(const GridFunction& f) { return quadrature(f) / kTwoPi; }

double norm_l1(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += std::abs(v);
  return f.grid().dx() * s;
}

double norm_l2(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(f.grid().dx() * s);
}

double norm_linf(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double min_value(const GridFunction& f) { return *std::ranges::min_element(f.values()); }

double max_value(const GridFunction& f) { return *std::ranges::max_element(f.values()); }

double w11_seminorm(const GridFunction& f) { return norm_l1(derivative(f, 1)); }

double wiener_norm(const GridFunction& f, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("Wiener exponent must be a finite value >= 0");
  }
  const auto s = to_spectrum(f);
  double sum = 0.0;
  for (int k = f.grid().min_wavenumber(); k <= f.grid().max_wavenumber(); ++k) {
    sum += std::pow(std::abs(static_cast<double>(k)), alpha) * std::abs(s.coefficient(k));
  }
  return sum;
}

GridFunction heat_mollify(const GridFunction& f, double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("mollification time must be finite and >= 0");
  }
  if (kappa == 0.0) return f;
  return apply_multiplier(f, [&](int k) {
    const double kk = static_cast<double>(k);
    return cplx(std::exp(-kappa * kk * kk), 0.0);
  });
}

GridFunction hilbert(const GridFunction& f) {
  const int nyquist = f.grid().max_wavenumber();
  return apply_multiplier(f, [&](int k) -> cplx {
    if (k == 0 || k == nyquist) return 0.0;
    return {0.0, -1.0};
  });
}

}  // namespace afd
