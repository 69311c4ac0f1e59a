#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace sumgraph {

/// Integer encoding of a field element: sum of c_i p^i over the power-basis
/// coefficients (c_0 least significant). For prime fields this is the usual
/// representative in [0, p).
using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t value);

namespace detail {
struct FieldTables;
}

/// The finite field F_q, q = p^n, with a fixed monic irreducible modulus.
///
/// Cheap to copy: all lookup tables are shared and immutable. Elements are
/// passed around as raw `Elem` codes in hot loops; `FieldElement` is the
/// checked value type for everything else.
class FiniteField {
 public:
  std::uint32_t characteristic() const noexcept;
  std::uint32_t degree() const noexcept;
  std::uint32_t size() const noexcept;
  bool is_prime_field() const noexcept { return degree() == 1; }

  /// Monic modulus coefficients c_0..c_n. For n = 1 this is X, i.e. {0, 1}.
  const std::vector<std::uint32_t>& modulus() const noexcept;

  Elem add(Elem x, Elem y) const noexcept;
  Elem sub(Elem x, Elem y) const noexcept;
  Elem neg(Elem x) const noexcept;
  Elem mul(Elem x, Elem y) const noexcept;
  Elem pow(Elem x, std::uint64_t e) const noexcept;
  /// x^(q-2); throws ZeroInverse on 0.
  Elem inv(Elem x) const;
  /// Multiplication by a small integer (repeated addition in the prime subfield).
  Elem scale(Elem x, std::uint64_t k) const noexcept;

  /// Absolute trace to F_p, returned as an integer in [0, p).
  std::uint32_t trace(Elem x) const noexcept;
  /// e(trace(x)/p).
  std::complex<double> psi(Elem x) const noexcept;
  /// e(k/p) for k in [0, p).
  std::complex<double> root_of_unity(std::uint32_t k) const noexcept;
  /// Legendre symbol; prime fields only (throws NotPrimeField otherwise).
  int legendre(Elem x) const;

  std::vector<std::uint32_t> coefficients(Elem x) const;
  Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

  bool contains(Elem x) const noexcept { return x < size(); }

  friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept;

 private:
  friend FiniteField make_field(std::int64_t p, std::int64_t n);
  explicit FiniteField(std::shared_ptr<const detail::FieldTables> tables);

  std::shared_ptr<const detail::FieldTables> t_;
};

/// Builds F_{p^n} using the lexicographically smallest monic irreducible
/// modulus of degree n. Throws CompositeModulus, SizeExceeded or BadParameter.
FiniteField make_field(std::int64_t p, std::int64_t n = 1);

/// A field element bound to its field. Mixed-field arithmetic throws
/// FieldMismatch.
class FieldElement {
 public:
  FieldElement(FiniteField field, Elem code);

  const FiniteField& field() const noexcept { return field_; }
  Elem code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  friend bool operator==(const FieldElement& x, const FieldElement& y) noexcept {
    return x.code_ == y.code_ && x.field_ == y.field_;
  }

 private:
  FiniteField field_;
  Elem code_;
};

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement neg(const FieldElement& x);
FieldElement inv(const FieldElement& x);
FieldElement pow(const FieldElement& x, std::uint64_t e);

std::uint32_t trace(const FieldElement& x);
std::complex<double> psi(const FieldElement& x);
int legendre(const FieldElement& x);

/// All q elements in coefficient-lexicographic order: 0, 1, ...
std::vector<FieldElement> enumerate_elements(const FiniteField& field);

/// Identification of F_p with {0, ..., p-1}; prime fields only.
std::int64_t int_embedding(const FieldElement& x);
FieldElement element_from_int(const FiniteField& field, std::int64_t value);

}  // namespace sumgraph
