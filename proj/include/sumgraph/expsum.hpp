#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sumgraph/ffield.hpp"

namespace sumgraph {

using SumValue = std::complex<double>;

// Literal O(q) evaluations. psi is the field's trace character e(Tr(.)/p).

/// K(a,b) = sum over x != 0 of psi(a x + b / x).
SumValue kloosterman(const FiniteField& field, Elem a, Elem b);
/// B(a,b) = sum over all x of psi(a x + b x^3).
SumValue birch(const FiniteField& field, Elem a, Elem b);
/// T(a,b) = sum over x != 0 of (x/p) psi(a x + b / x); prime fields only.
SumValue salie(const FiniteField& field, Elem a, Elem b);
/// Sum of psi(a x + b / x) over integer representatives 1 <= x <= floor(t(p-1)).
SumValue partial_kloosterman(const FiniteField& field, Elem a, Elem b, double t);

/// Elementary evaluation of T(a,b) for p = 3 mod 4, (a,b) != (0,0):
///   ab = 0:            (c/p) i sqrt(p) with c the non-zero index (quadratic Gauss sum),
///   (ab/p) = -1:       0,
///   ab = y^2 != 0:     2 i sqrt(p) (b/p) cos(4 pi y / p).
SumValue salie_closed_form(const FiniteField& field, Elem a, Elem b);

SumValue kloosterman(const FieldElement& a, const FieldElement& b);
SumValue birch(const FieldElement& a, const FieldElement& b);
SumValue salie(const FieldElement& a, const FieldElement& b);
SumValue salie_closed_form(const FieldElement& a, const FieldElement& b);
SumValue partial_kloosterman(const FieldElement& a, const FieldElement& b, double t);

enum class SumKind { Kloosterman, Birch, Salie, PartialKloosterman };

/// All q^2 values of one exponential sum, stored in reduced form where a
/// symmetry allows it:
///   Kloosterman: K(a,b) = K(ab,1) for ab != 0, one column of q values;
///   Salie:       T(a,b) = (b/p) T(ab,1) for b != 0, T(a,0) = (a/p) T(0,1);
///   Birch:       B(a, r alpha^3) = B(a/alpha, r), one row per cube class r;
///   Partial:     no symmetry, dense q x q.
/// Prime fields are filled by length-p transforms; extension fields by
/// literal summation.
class SumTable {
 public:
  const FiniteField& field() const noexcept { return field_; }
  SumKind kind() const noexcept { return kind_; }
  double t() const noexcept { return t_; }

  SumValue at(Elem a, Elem b) const;

  /// K(m,1) or T(m,1) for m in [0, q); empty for the other kinds.
  std::span<const SumValue> column() const noexcept { return column_; }
  std::size_t class_count() const noexcept { return rows_.size(); }

 private:
  friend SumTable kloosterman_table(const FiniteField&);
  friend SumTable birch_table(const FiniteField&);
  friend SumTable salie_table(const FiniteField&);
  friend SumTable partial_kloosterman_table(const FiniteField&, double);

  SumTable(FiniteField field, SumKind kind, double t) : field_(std::move(field)), kind_(kind), t_(t) {}

  FiniteField field_;
  SumKind kind_;
  double t_;
  std::vector<SumValue> column_;
  std::vector<int> legendre_;
  std::vector<std::vector<SumValue>> rows_;  // Birch: rows_[0] is b = 0
  std::vector<std::uint32_t> row_of_b_;
  std::vector<Elem> alpha_inv_;
  std::vector<SumValue> dense_;
};

SumTable kloosterman_table(const FiniteField& field);
SumTable birch_table(const FiniteField& field);
SumTable salie_table(const FiniteField& field);
SumTable partial_kloosterman_table(const FiniteField& field, double t);

/// max |value| over (a,b) != (0,0).
double max_nontrivial_abs(const SumTable& table);

}  // namespace sumgraph
