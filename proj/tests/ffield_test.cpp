#include "sumgraph/ffield.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sumgraph/error.hpp"

using namespace sumgraph;

namespace {

// Schoolbook product of coefficient vectors reduced by a monic modulus.
std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  const std::size_t n = mod.size() - 1;
  std::vector<std::uint64_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t k = 2 * n - 1; k >= n; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * mod[i]) % p;
  }
  return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n)};
}

struct FieldCase {
  std::uint32_t p, n;
};

const std::vector<FieldCase> kSmallFields = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2},
                                             {2, 4}, {5, 2}, {3, 3}, {2, 5}, {2, 6}, {7, 2}};

}  // namespace

TEST(MakeField, PrimeFieldUsesIdentityModulus) {
  const auto f = make_field(5);
  EXPECT_EQ(f.size(), 5U);
  EXPECT_EQ(f.degree(), 1U);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{0, 1}));
}

TEST(MakeField, F4ModulusIsTheOnlyIrreducibleQuadratic) {
  const auto f = make_field(2, 2);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(MakeField, SmallestIrreducibleIsChosen) {
  // Over F_3 the monic quadratics X^2 + c1 X + c0 ordered by c0 + 3 c1: X^2+1 is the first irreducible.
  EXPECT_EQ(make_field(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  // Over F_2 cubics: X^3+X+1 precedes X^3+X^2+1.
  EXPECT_EQ(make_field(2, 3).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
}

TEST(MakeField, RejectsBadInput) {
  try {
    make_field(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CompositeModulus);
  }
  try {
    make_field(2, 21);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SizeExceeded);
  }
  EXPECT_THROW(make_field(5, 0), Error);
  EXPECT_NO_THROW(make_field(2, 20));
}

TEST(MakeField, ModulusHasNoRootsAndIsDeterministic) {
  for (auto [p, n] : kSmallFields) {
    const auto f = make_field(p, n);
    EXPECT_EQ(f.modulus(), make_field(p, n).modulus());
    if (n < 2) continue;
    const auto& m = f.modulus();
    for (std::uint32_t x = 0; x < p; ++x) {
      std::uint64_t v = 0;
      for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % p;
      EXPECT_NE(v, 0U) << "root " << x << " of modulus for " << p << "^" << n;
    }
  }
}

TEST(Arithmetic, SpecExamples) {
  const auto f5 = make_field(5);
  EXPECT_EQ(f5.inv(2), 3U);
  const auto f4 = make_field(2, 2);
  for (Elem g = 1; g < 4; ++g) EXPECT_EQ(f4.pow(g, 3), 1U);
  for (auto [p, n] : kSmallFields) {
    const auto f = make_field(p, n);
    for (Elem x = 0; x < f.size(); ++x) EXPECT_EQ(f.mul(x, 1), x);
  }
}

TEST(Arithmetic, MultiplicationMatchesPolynomialProduct) {
  for (auto [p, n] : kSmallFields) {
    const auto f = make_field(p, n);
    for (Elem x = 0; x < f.size(); ++x) {
      for (Elem y = 0; y < f.size(); ++y) {
        const auto expected = poly_mulmod(f.coefficients(x), f.coefficients(y), f.modulus(), p);
        ASSERT_EQ(f.mul(x, y), f.from_coefficients(expected)) << p << "^" << n << ": " << x << "*" << y;
      }
    }
  }
}

TEST(Arithmetic, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(2024);
  for (auto [p, n] : std::vector<FieldCase>{{2, 10}, {3, 7}, {5, 4}, {7, 3}, {1117, 1}, {1019, 2}, {2, 20}}) {
    const auto f = make_field(p, n);
    std::uniform_int_distribution<Elem> pick(0, f.size() - 1);
    for (int i = 0; i < 2000; ++i) {
      const Elem x = pick(rng), y = pick(rng), z = pick(rng);
      EXPECT_EQ(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
      EXPECT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
      EXPECT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
      EXPECT_EQ(f.add(x, f.neg(x)), 0U);
      EXPECT_EQ(f.sub(x, y), f.add(x, f.neg(y)));
      if (x != 0) EXPECT_EQ(f.mul(x, f.inv(x)), 1U);
    }
  }
}

TEST(Arithmetic, ZeroInverseAndFieldMismatch) {
  const auto f = make_field(7);
  try {
    f.inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroInverse);
  }
  const FieldElement a(make_field(7), 3), b(make_field(11), 3);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldMismatch);
  }
  EXPECT_THROW((void)(a * b), Error);
  EXPECT_THROW(FieldElement(f, 0).inverse(), Error);
}

TEST(FieldElementType, OperatorsAgreeWithRawCodes) {
  const auto f = make_field(3, 2);
  for (Elem x = 0; x < 9; ++x) {
    for (Elem y = 1; y < 9; ++y) {
      const FieldElement a(f, x), b(f, y);
      EXPECT_EQ((a + b).code(), f.add(x, y));
      EXPECT_EQ((a - b).code(), f.sub(x, y));
      EXPECT_EQ((a * b).code(), f.mul(x, y));
      EXPECT_EQ((a / b).code(), f.mul(x, f.inv(y)));
      EXPECT_EQ((-a).code(), f.neg(x));
      EXPECT_EQ(pow(b, 4).code(), f.pow(y, 4));
      EXPECT_EQ(inv(b) * b, FieldElement(f, 1));
    }
  }
}

TEST(Trace, SpecExamples) {
  for (auto [p, n] : kSmallFields) {
    const auto f = make_field(p, n);
    EXPECT_EQ(f.trace(1), n % p);
    EXPECT_EQ(f.trace(0), 0U);
  }
  const auto f4 = make_field(2, 2);
  EXPECT_EQ(f4.trace(2), 1U);  // g
  EXPECT_EQ(f4.trace(3), 1U);  // g + 1
}

TEST(Trace, EqualsFrobeniusSumAndIsInvariant) {
  for (auto [p, n] : kSmallFields) {
    const auto f = make_field(p, n);
    for (Elem x = 0; x < f.size(); ++x) {
      Elem sum = 0, frob = x;
      for (std::uint32_t i = 0; i < n; ++i) {
        sum = f.add(sum, frob);
        frob = f.pow(frob, p);
      }
      ASSERT_LT(sum, p) << "Frobenius sum must land in the prime field";
      EXPECT_EQ(f.trace(x), sum);
      EXPECT_EQ(f.trace(f.pow(x, p)), f.trace(x));
      for (Elem y = 0; y < f.size(); y += 3) EXPECT_EQ(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % p);
    }
  }
}

TEST(Psi, SpecExamples) {
  const auto f5 = make_field(5);
  EXPECT_NEAR(std::abs(f5.psi(0) - std::complex<double>(1, 0)), 0.0, 1e-15);
  const auto e = std::polar(1.0, 2 * std::numbers::pi / 5);
  EXPECT_NEAR(std::abs(f5.psi(1) - e), 0.0, 1e-12);
}

TEST(Psi, IsAdditiveAndUnimodular) {
  for (auto [p, n] : kSmallFields) {
    const auto f = make_field(p, n);
    for (Elem x = 0; x < f.size(); ++x) {
      EXPECT_NEAR(std::abs(f.psi(x)), 1.0, 1e-12);
      for (Elem y = 0; y < f.size(); y += 5) {
        EXPECT_NEAR(std::abs(f.psi(f.add(x, y)) - f.psi(x) * f.psi(y)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Psi, CharacterOrthogonalityUpTo1024) {
  for (std::uint32_t q = 2; q <= 1024; ++q) {
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t v = q, n = 0;
    while (v % p == 0) {
      v /= p;
      ++n;
    }
    if (v != 1) continue;
    const auto f = make_field(p, n);
    // Exhaustive in a for q <= 64; a in {1, 2} above.
    const Elem a_limit = q <= 64 ? q : 3;
    for (Elem a = 1; a < a_limit; ++a) {
      std::complex<double> s{};
      for (Elem x = 0; x < q; ++x) s += f.psi(f.mul(a, x));
      ASSERT_LE(std::abs(s), 1e-9) << "q=" << q << " a=" << a;
    }
  }
}

TEST(Legendre, SpecExamples) {
  const auto f7 = make_field(7);
  EXPECT_EQ(f7.legendre(0), 0);
  EXPECT_EQ(f7.legendre(3), -1);
  EXPECT_EQ(f7.legendre(2), 1);
  try {
    make_field(3, 2).legendre(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPrimeField);
  }
}

TEST(Legendre, MatchesSquaresAndIsMultiplicative) {
  for (std::uint32_t p : {3U, 5U, 7U, 11U, 13U, 31U, 127U}) {
    const auto f = make_field(p);
    std::vector<int> square(p, -1);
    square[0] = 0;
    for (Elem y = 1; y < p; ++y) square[f.mul(y, y)] = 1;
    for (Elem x = 0; x < p; ++x) {
      EXPECT_EQ(f.legendre(x), square[x]);
      for (Elem y = 1; y < p; ++y) {
        if (x != 0) EXPECT_EQ(f.legendre(f.mul(x, y)), f.legendre(x) * f.legendre(y));
      }
    }
  }
}

TEST(Enumerate, OrderAndLength) {
  const auto f3 = enumerate_elements(make_field(3));
  ASSERT_EQ(f3.size(), 3U);
  for (Elem i = 0; i < 3; ++i) EXPECT_EQ(f3[i].code(), i);
  const auto f4 = make_field(2, 2);
  const auto e4 = enumerate_elements(f4);
  ASSERT_EQ(e4.size(), 4U);
  EXPECT_EQ(f4.coefficients(e4[2].code()), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(f4.coefficients(e4[3].code()), (std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(enumerate_elements(make_field(5, 3)).size(), 125U);
}

TEST(IntEmbedding, RoundTrip) {
  const auto f = make_field(101);
  EXPECT_EQ(int_embedding(FieldElement(f, 0)), 0);
  EXPECT_EQ(int_embedding(FieldElement(f, 100)), 100);
  for (std::int64_t v = 0; v < 101; ++v) EXPECT_EQ(int_embedding(element_from_int(f, v)), v);
  EXPECT_THROW(int_embedding(FieldElement(make_field(2, 2), 1)), Error);
}
