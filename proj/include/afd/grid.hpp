#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace afd {

namespace detail {
class FftPlan;
}

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/**
 * Uniform periodic grid on the circle [0, 2*pi).
 *
 * x_j = 2*pi*j/n for j = 0..n-1, with n a power of two, n >= 8. Grids are
 * cheap value types; all grids with the same n share one FFT plan.
 */
class Grid {
 public:
  explicit Grid(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return kTwoPi; }
  double dx() const noexcept { return kTwoPi / static_cast<double>(n_); }
  double point(std::size_t j) const noexcept { return dx() * static_cast<double>(j); }
  std::vector<double> points() const;

  // Represented wavenumbers are -n/2+1 .. n/2.
  int min_wavenumber() const noexcept { return -static_cast<int>(n_ / 2) + 1; }
  int max_wavenumber() const noexcept { return static_cast<int>(n_ / 2); }

  const detail::FftPlan& fft() const noexcept { return *plan_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.n_ == b.n_; }

 private:
  std::size_t n_;
  std::shared_ptr<const detail::FftPlan> plan_;
};

// Real samples of a periodic function. Every value is finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction constant(const Grid& grid, double c);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.point(j));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/**
 * Fourier coefficients of a grid function,
 *   c(k) = (1/2pi) * integral u(x) exp(-ikx) dx,
 * realized as (1/n) * DFT. Storage is in FFT order (k = 0, 1, .., n/2,
 * -n/2+1, .., -1).
 */
class SpectrumField {
 public:
  SpectrumField(Grid grid, std::vector<std::complex<double>> coefficients);

  const Grid& grid() const noexcept { return grid_; }
  // Throws InvalidArgument for k outside [-n/2+1, n/2].
  std::complex<double> coefficient(int k) const;
  std::span<const std::complex<double>> data() const noexcept { return coefficients_; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coefficients_;
};

SpectrumField to_spectrum(const GridFunction& f);

// Real part of the trigonometric synthesis sum_k c(k) exp(ikx_j). Exact
// inverse of to_spectrum.
GridFunction from_spectrum(const SpectrumField& s);

// Spectral derivative of order 1..4: c(k) -> (ik)^order c(k). The Nyquist
// mode is dropped for odd orders.
GridFunction derivative(const GridFunction& f, int order);

// First and second spectral derivatives from a single forward transform.
std::pair<GridFunction, GridFunction> first_and_second_derivative(const GridFunction& f);

// Second-order central difference with periodic wraparound. Test oracle only.
GridFunction fd_derivative(const GridFunction& f);

// Periodic trapezoid rule, dx * sum(values).
double quadrature(const GridFunction& f);
double mean(const GridFunction& f);

double norm_l1(const GridFunction& f);
double norm_l2(const GridFunction& f);
double norm_linf(const GridFunction& f);
double min_value(const GridFunction& f);
double max_value(const GridFunction& f);

// integral |f'| dx
double w11_seminorm(const GridFunction& f);

// sum_k |k|^alpha |c(k)| over the represented wavenumbers; 0^0 = 1.
double wiener_norm(const GridFunction& f, double alpha);

// Periodic heat semigroup: c(k) -> exp(-kappa k^2) c(k). kappa = 0 is the
// identity.
GridFunction heat_mollify(const GridFunction& f, double kappa);

// Periodic Hilbert transform, c(k) -> -i sign(k) c(k), i.e. the conjugate
// function: H(cos) = sin. Constants and the Nyquist mode map to zero.
GridFunction hilbert(const GridFunction& f);

}  // namespace afd
