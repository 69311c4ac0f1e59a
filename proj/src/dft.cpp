#include "sumgraph/dft.hpp"

#include <cmath>
#include <numbers>

#include "sumgraph/error.hpp"

namespace sumgraph {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> make_twiddles(std::size_t m, int sign) {
  std::vector<cplx> w(m / 2);
  for (std::size_t k = 0; k < m / 2; ++k) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    w[k] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

// In-place radix-2 transform; twiddles are exp(sign*2*pi*i*k/m), k < m/2.
void fft_pow2(std::vector<cplx>& a, const std::vector<cplx>& twiddles) {
  const std::size_t m = a.size();
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t step = m / len;
    for (std::size_t i = 0; i < m; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * twiddles[k * step];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

DftPlan::DftPlan(std::size_t n, int sign) : n_(n), sign_(sign >= 0 ? 1 : -1) {
  if (n == 0) throw Error(Errc::BadParameter, "transform length must be positive");
  if (is_pow2(n)) {
    twiddles_ = make_twiddles(n, sign_);
    return;
  }
  m_ = 1;
  while (m_ < 2 * n - 1) m_ <<= 1;
  chirp_.resize(n);
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t jj = static_cast<std::uint64_t>(j) * j % two_n;
    const double angle = sign_ * std::numbers::pi * static_cast<double>(jj) / static_cast<double>(n);
    chirp_[j] = {std::cos(angle), std::sin(angle)};
  }
  // Padded transforms always use sign -1; the inverse is taken by conjugation.
  twiddles_ = make_twiddles(m_, -1);
  kernel_fft_.assign(m_, cplx{});
  kernel_fft_[0] = std::conj(chirp_[0]);
  for (std::size_t j = 1; j < n; ++j) {
    kernel_fft_[j] = std::conj(chirp_[j]);
    kernel_fft_[m_ - j] = std::conj(chirp_[j]);
  }
  fft_pow2(kernel_fft_, twiddles_);
}

std::vector<cplx> DftPlan::operator()(std::span<const cplx> input) const {
  if (input.size() != n_) throw Error(Errc::BadParameter, "input length does not match the plan");
  if (m_ == 0) {
    std::vector<cplx> a(input.begin(), input.end());
    fft_pow2(a, twiddles_);
    return a;
  }
  std::vector<cplx> a(m_, cplx{});
  for (std::size_t j = 0; j < n_; ++j) a[j] = input[j] * chirp_[j];
  fft_pow2(a, twiddles_);
  for (std::size_t k = 0; k < m_; ++k) a[k] = std::conj(a[k] * kernel_fft_[k]);
  fft_pow2(a, twiddles_);  // conj(F(conj(.))) = m * inverse transform
  const double scale = 1.0 / static_cast<double>(m_);
  std::vector<cplx> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = std::conj(a[k]) * scale * chirp_[k];
  return out;
}

std::vector<cplx> naive_dft(std::span<const cplx> input, int sign) {
  const std::size_t n = input.size();
  std::vector<cplx> out(n);
  const int s = sign >= 0 ? 1 : -1;
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t e = static_cast<std::uint64_t>(j) * k % n;
      const double angle = s * 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
      acc += input[j] * cplx{std::cos(angle), std::sin(angle)};
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace sumgraph
