// Thin RAII layer over FFTW double-precision plans, one engine per grid size.
// Plans use FFTW_ESTIMATE so results are reproducible run to run.
#pragma once

#include <complex>
#include <vector>

namespace spn {

// In-place complex cube transforms on n^3 points.
class Cfft3 {
 public:
  explicit Cfft3(int n);
  ~Cfft3();
  Cfft3(const Cfft3&) = delete;
  Cfft3& operator=(const Cfft3&) = delete;

  int n() const { return n_; }
  std::complex<double>* buffer() { return buf_; }
  void forward();   // unnormalized
  void backward();  // unnormalized; caller divides by n^3

 private:
  int n_;
  std::complex<double>* buf_;
  void* plan_fwd_;
  void* plan_bwd_;
};

// Real-to-complex transforms on an m^3 cube (used by the padded free-space
// convolution). Spectral layout is m*m*(m/2+1), FFTW halfcomplex order.
class Rfft3 {
 public:
  explicit Rfft3(int m);
  ~Rfft3();
  Rfft3(const Rfft3&) = delete;
  Rfft3& operator=(const Rfft3&) = delete;

  int m() const { return m_; }
  std::size_t real_size() const { return std::size_t(m_) * m_ * m_; }
  std::size_t spec_size() const { return std::size_t(m_) * m_ * (m_ / 2 + 1); }
  double* real_buffer() { return rbuf_; }
  std::complex<double>* spec_buffer() { return sbuf_; }
  void forward();   // real -> spectral, unnormalized
  void backward();  // spectral -> real, unnormalized (destroys spec buffer)

 private:
  int m_;
  double* rbuf_;
  std::complex<double>* sbuf_;
  void* plan_fwd_;
  void* plan_bwd_;
};

// Cached engines keyed by size. Single-threaded use.
Cfft3& cfft_for(int n);
Rfft3& rfft_for(int m);

}  // namespace spn
