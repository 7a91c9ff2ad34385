#include "core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <stdexcept>

namespace spn {

Cfft3::Cfft3(int n) : n_(n) {
  const std::size_t total = std::size_t(n) * n * n;
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(total));
  if (!buf_) throw std::bad_alloc();
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  plan_fwd_ = fftw_plan_dft_3d(n, n, n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_3d(n, n, n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("fftw plan failure");
}

Cfft3::~Cfft3() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

void Cfft3::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void Cfft3::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

Rfft3::Rfft3(int m) : m_(m) {
  rbuf_ = fftw_alloc_real(real_size());
  sbuf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(spec_size()));
  if (!rbuf_ || !sbuf_) throw std::bad_alloc();
  auto* s = reinterpret_cast<fftw_complex*>(sbuf_);
  plan_fwd_ = fftw_plan_dft_r2c_3d(m, m, m, rbuf_, s, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_c2r_3d(m, m, m, s, rbuf_, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("fftw plan failure");
}

Rfft3::~Rfft3() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(rbuf_);
  fftw_free(sbuf_);
}

void Rfft3::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void Rfft3::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

Cfft3& cfft_for(int n) {
  static std::map<int, std::unique_ptr<Cfft3>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Cfft3>(n);
  return *slot;
}

Rfft3& rfft_for(int m) {
  static std::map<int, std::unique_ptr<Rfft3>> cache;
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<Rfft3>(m);
  return *slot;
}

}  // namespace spn
