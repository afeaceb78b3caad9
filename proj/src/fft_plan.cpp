#include "fft_plan.hpp"

#include <map>
#include <mutex>

namespace afd::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  const int len = static_cast<int>(n);
  double* re = fftw_alloc_real(n);
  fftw_complex* co = fftw_alloc_complex(n / 2 + 1);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  r2c_ = fftw_plan_dft_r2c_1d(len, re, co, flags);
  c2r_ = fftw_plan_dft_c2r_1d(len, co, re, flags);
  fftw_free(re);
  fftw_free(co);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(r2c_);
  fftw_destroy_plan(c2r_);
}

void FftPlan::forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(r2c_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void FftPlan::inverse(std::complex<double>* in, double* out) const {
  fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in), out);
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t n) {
  // The mutex must outlive the cache: cached plans lock it on destruction.
  auto& mutex = planner_mutex();
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FftPlan>(n);
  cache.emplace(n, plan);
  return plan;
}

}  // namespace afd::detail
