#include "sumgraph/dft.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace sumgraph;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Dft, MatchesNaiveForAllSmallLengths) {
  for (std::size_t n = 1; n <= 70; ++n) {
    for (int sign : {+1, -1}) {
      const auto x = random_vector(n, n * 7 + (sign > 0));
      const auto fast = DftPlan(n, sign)(x);
      const auto slow = naive_dft(x, sign);
      ASSERT_LE(max_diff(fast, slow), 1e-11 * static_cast<double>(n)) << "n=" << n << " sign=" << sign;
    }
  }
}

TEST(Dft, MatchesNaiveAtFieldPrimes) {
  for (std::size_t n : {127U, 251U, 601U, 1009U, 1019U, 1024U, 1117U}) {
    const auto x = random_vector(n, n);
    EXPECT_LE(max_diff(DftPlan(n, +1)(x), naive_dft(x, +1)), 1e-9) << n;
  }
}

TEST(Dft, NaiveConventionOnDelta) {
  // x = delta_1: X[k] = exp(sign 2 pi i k / n).
  const std::size_t n = 7;
  std::vector<cplx> x(n, 0.0);
  x[1] = 1.0;
  const auto out = naive_dft(x, +1);
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_NEAR(std::abs(out[k] - std::polar(1.0, 2 * std::numbers::pi * k / n)), 0.0, 1e-14);
  }
}

TEST(Dft, InverseRoundTrip) {
  for (std::size_t n : {12U, 97U, 256U, 1117U}) {
    const auto x = random_vector(n, 3);
    auto y = DftPlan(n, -1)(DftPlan(n, +1)(x));
    for (auto& v : y) v /= static_cast<double>(n);
    EXPECT_LE(max_diff(x, y), 1e-12) << n;
  }
}

TEST(Dft, RejectsWrongLength) {
  const DftPlan plan(8, 1);
  std::vector<cplx> x(7);
  EXPECT_THROW(plan(x), std::exception);
}
