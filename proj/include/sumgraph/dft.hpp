#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sumgraph {

using cplx = std::complex<double>;

/// Exact-length discrete Fourier transform
///   X[k] = sum_j x[j] exp(sign * 2*pi*i * j*k / n)
/// for any n >= 1. Powers of two use an iterative radix-2 FFT, every other
/// length goes through Bluestein's chirp-z reduction onto a power-of-two
/// convolution. A plan is immutable and may be shared between threads.
class DftPlan {
 public:
  DftPlan(std::size_t n, int sign);

  std::size_t size() const noexcept { return n_; }
  std::vector<cplx> operator()(std::span<const cplx> input) const;

 private:
  std::size_t n_;
  int sign_;
  std::size_t m_ = 0;  // padded power-of-two length (Bluestein only)
  std::vector<cplx> chirp_;
  std::vector<cplx> kernel_fft_;
  std::vector<cplx> twiddles_;  // for the power-of-two length in use
};

/// Reference O(n^2) transform with the same convention; used by tests.
std::vector<cplx> naive_dft(std::span<const cplx> input, int sign);

}  // namespace sumgraph
