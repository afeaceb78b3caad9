#pragma once

#include <complex>
#include <cstddef>
#include <memory>

#include <fftw3.h>

namespace afd::detail {

// Real <-> half-complex FFTW plans for one transform length. Plans are
// created under a global lock; execution uses the new-array interface and is
// safe to call concurrently.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::size_t half_size() const noexcept { return n_ / 2 + 1; }

  // Unnormalized forward DFT of n reals into n/2+1 coefficients.
  void forward(const double* in, std::complex<double>* out) const;
  // Unnormalized inverse; destroys `in`.
  void inverse(std::complex<double>* in, double* out) const;

  static std::shared_ptr<const FftPlan> get(std::size_t n);

 private:
  std::size_t n_;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

}  // namespace afd::detail
