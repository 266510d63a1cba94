#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace optconv::detail {
namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

PlanPair plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto* real_buf = fftw_alloc_real(n);
  auto* cplx_buf = fftw_alloc_complex(n / 2 + 1);
  const int size = static_cast<int>(n);
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_1d(size, real_buf, cplx_buf, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_c2r_1d(size, cplx_buf, real_buf, FFTW_ESTIMATE);
  fftw_free(real_buf);
  fftw_free(cplx_buf);
  if (p.forward == nullptr || p.backward == nullptr) throw std::runtime_error("fftw planning failed");
  cache.emplace(n, p);
  return p;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<std::complex<double>> forward_coeffs(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const auto plans = plans_for(n);
  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(n / 2 + 1));
  std::copy(samples.begin(), samples.end(), in.get());
  fftw_execute_dft_r2c(plans.forward, in.get(), out.get());

  std::vector<std::complex<double>> c(n / 2 + 1);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = {out.get()[j][0] * scale, out.get()[j][1] * scale};
  return c;
}

std::vector<double> synthesize(std::span<const std::complex<double>> coeffs, std::size_t n) {
  if (coeffs.empty()) return std::vector<double>(n, 0.0);
  if (coeffs.size() > n / 2) throw std::logic_error("synthesize: order must be below Nyquist");
  const auto plans = plans_for(n);
  std::unique_ptr<fftw_complex, FftwFree> in(fftw_alloc_complex(n / 2 + 1));
  std::unique_ptr<double, FftwFree> out(fftw_alloc_real(n));
  for (std::size_t j = 0; j <= n / 2; ++j) {
    in.get()[j][0] = 0.0;
    in.get()[j][1] = 0.0;
  }
  // c2r computes sum_j X_j e^{+2 pi i jk/N} over the Hermitian-extended spectrum.
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    in.get()[j][0] = coeffs[j].real();
    in.get()[j][1] = coeffs[j].imag();
  }
  in.get()[0][1] = 0.0;
  fftw_execute_dft_c2r(plans.backward, in.get(), out.get());
  return std::vector<double>(out.get(), out.get() + n);
}

}  // namespace optconv::detail
