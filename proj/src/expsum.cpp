#include "sumgraph/expsum.hpp"

#include <cmath>
#include <numbers>

#include "sumgraph/dft.hpp"
#include "sumgraph/error.hpp"
#include "sumgraph/sidon.hpp"

namespace sumgraph {

namespace {

void require_prime(const FiniteField& field) {
  if (!field.is_prime_field()) throw Error(Errc::NotPrimeField, "operation needs a prime field");
}

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "operands from different fields");
}

std::vector<Elem> inverse_table(const FiniteField& field) {
  std::vector<Elem> inv(field.size(), 0);
  for (Elem x = 1; x < field.size(); ++x) inv[x] = field.inv(x);
  return inv;
}

}  // namespace

SumValue kloosterman(const FiniteField& field, Elem a, Elem b) {
  SumValue acc{};
  for (Elem x = 1; x < field.size(); ++x) {
    acc += field.psi(field.add(field.mul(a, x), field.mul(b, field.inv(x))));
  }
  return acc;
}

SumValue birch(const FiniteField& field, Elem a, Elem b) {
  SumValue acc{};
  for (Elem x = 0; x < field.size(); ++x) {
    acc += field.psi(field.add(field.mul(a, x), field.mul(b, field.pow(x, 3))));
  }
  return acc;
}

SumValue salie(const FiniteField& field, Elem a, Elem b) {
  require_prime(field);
  SumValue acc{};
  for (Elem x = 1; x < field.size(); ++x) {
    acc += static_cast<double>(field.legendre(x)) * field.psi(field.add(field.mul(a, x), field.mul(b, field.inv(x))));
  }
  return acc;
}

SumValue partial_kloosterman(const FiniteField& field, Elem a, Elem b, double t) {
  require_prime(field);
  const auto top = kt_range(field.characteristic(), t);
  SumValue acc{};
  for (std::int64_t i = 1; i <= top; ++i) {
    const auto x = static_cast<Elem>(i);
    acc += field.psi(field.add(field.mul(a, x), field.mul(b, field.inv(x))));
  }
  return acc;
}

SumValue salie_closed_form(const FiniteField& field, Elem a, Elem b) {
  require_prime(field);
  const std::uint32_t p = field.characteristic();
  if (p % 4 != 3) throw Error(Errc::BadCongruence, "closed form needs p = 3 mod 4");
  if (a == 0 && b == 0) throw Error(Errc::BadParameter, "closed form needs (a,b) != (0,0)");
  const double root_p = std::sqrt(static_cast<double>(p));
  if (a == 0 || b == 0) {
    const int sign = field.legendre(a == 0 ? b : a);
    return {0.0, sign * root_p};
  }
  const Elem m = field.mul(a, b);
  if (field.legendre(m) == -1) return {0.0, 0.0};
  Elem y = 1;
  while (field.mul(y, y) != m) ++y;
  const double c = std::cos(4.0 * std::numbers::pi * static_cast<double>(y) / p);
  return {0.0, 2.0 * root_p * field.legendre(b) * c};
}

SumValue kloosterman(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return kloosterman(a.field(), a.code(), b.code());
}
SumValue birch(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return birch(a.field(), a.code(), b.code());
}
SumValue salie(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return salie(a.field(), a.code(), b.code());
}
SumValue salie_closed_form(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return salie_closed_form(a.field(), a.code(), b.code());
}
SumValue partial_kloosterman(const FieldElement& a, const FieldElement& b, double t) {
  require_same(a, b);
  return partial_kloosterman(a.field(), a.code(), b.code(), t);
}

SumValue SumTable::at(Elem a, Elem b) const {
  const std::uint32_t q = field_.size();
  switch (kind_) {
    case SumKind::Kloosterman:
      if (a == 0 && b == 0) return {static_cast<double>(q - 1), 0.0};
      if (a == 0 || b == 0) return {-1.0, 0.0};
      return column_[field_.mul(a, b)];
    case SumKind::Salie:
      if (b == 0) return static_cast<double>(legendre_[a]) * column_[0];
      return static_cast<double>(legendre_[b]) * column_[field_.mul(a, b)];
    case SumKind::Birch: {
      if (b == 0) return rows_[0][a];
      return rows_[row_of_b_[b]][field_.mul(a, alpha_inv_[b])];
    }
    case SumKind::PartialKloosterman:
      return dense_[std::size_t{a} * q + b];
  }
  return {};
}

SumTable kloosterman_table(const FiniteField& field) {
  SumTable table(field, SumKind::Kloosterman, 1.0);
  const std::uint32_t q = field.size();
  const auto inv = inverse_table(field);
  if (field.is_prime_field()) {
    std::vector<SumValue> f(q, SumValue{});
    for (Elem x = 1; x < q; ++x) f[x] = field.psi(inv[x]);
    table.column_ = DftPlan(q, +1)(f);
  } else {
    table.column_.assign(q, SumValue{});
    for (Elem m = 0; m < q; ++m) {
      SumValue acc{};
      for (Elem x = 1; x < q; ++x) acc += field.psi(field.add(field.mul(m, x), inv[x]));
      table.column_[m] = acc;
    }
  }
  return table;
}

SumTable salie_table(const FiniteField& field) {
  require_prime(field);
  SumTable table(field, SumKind::Salie, 1.0);
  const std::uint32_t q = field.size();
  const auto inv = inverse_table(field);
  table.legendre_.resize(q);
  for (Elem x = 0; x < q; ++x) table.legendre_[x] = field.legendre(x);
  std::vector<SumValue> f(q, SumValue{});
  for (Elem x = 1; x < q; ++x) f[x] = static_cast<double>(table.legendre_[x]) * field.psi(inv[x]);
  table.column_ = DftPlan(q, +1)(f);
  return table;
}

SumTable birch_table(const FiniteField& field) {
  SumTable table(field, SumKind::Birch, 1.0);
  const std::uint32_t q = field.size();

  // Partition b != 0 into classes r * (cubes); record alpha^{-1} with b = r alpha^3.
  table.row_of_b_.assign(q, 0);
  table.alpha_inv_.assign(q, 0);
  std::vector<Elem> reps;
  std::vector<char> seen(q, 0);
  for (Elem b = 1; b < q; ++b) {
    if (seen[b]) continue;
    reps.push_back(b);
    const auto row = static_cast<std::uint32_t>(reps.size());
    for (Elem alpha = 1; alpha < q; ++alpha) {
      const Elem image = field.mul(b, field.pow(alpha, 3));
      if (seen[image]) continue;
      seen[image] = 1;
      table.row_of_b_[image] = row;
      table.alpha_inv_[image] = field.inv(alpha);
    }
  }

  table.rows_.assign(reps.size() + 1, std::vector<SumValue>(q, SumValue{}));
  table.rows_[0][0] = {static_cast<double>(q), 0.0};  // B(a,0) = 0 for a != 0

  std::vector<Elem> cubes(q);
  for (Elem x = 0; x < q; ++x) cubes[x] = field.pow(x, 3);

  if (field.is_prime_field()) {
    const DftPlan plan(q, +1);
    std::vector<SumValue> f(q);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (Elem x = 0; x < q; ++x) f[x] = field.psi(field.mul(reps[i], cubes[x]));
      table.rows_[i + 1] = plan(f);
    }
  } else {
    const std::uint32_t p = field.characteristic();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::vector<std::uint32_t> cube_trace(q);
      for (Elem x = 0; x < q; ++x) cube_trace[x] = field.trace(field.mul(reps[i], cubes[x]));
      for (Elem a = 0; a < q; ++a) {
        SumValue acc{};
        for (Elem x = 0; x < q; ++x) {
          acc += field.root_of_unity((field.trace(field.mul(a, x)) + cube_trace[x]) % p);
        }
        table.rows_[i + 1][a] = acc;
      }
    }
  }
  return table;
}

SumTable partial_kloosterman_table(const FiniteField& field, double t) {
  require_prime(field);
  SumTable table(field, SumKind::PartialKloosterman, t);
  const std::uint32_t q = field.size();
  const auto top = static_cast<Elem>(kt_range(q, t));
  const auto inv = inverse_table(field);
  table.dense_.assign(std::size_t{q} * q, SumValue{});
  const DftPlan plan(q, +1);
  std::vector<SumValue> f(q);
  for (Elem b = 0; b < q; ++b) {
    std::fill(f.begin(), f.end(), SumValue{});
    for (Elem x = 1; x <= top; ++x) f[x] = field.psi(field.mul(b, inv[x]));
    const auto row = plan(f);
    for (Elem a = 0; a < q; ++a) table.dense_[std::size_t{a} * q + b] = row[a];
  }
  return table;
}

double max_nontrivial_abs(const SumTable& table) {
  const std::uint32_t q = table.field().size();
  double best = 0.0;
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      best = std::max(best, std::abs(table.at(a, b)));
    }
  }
  return best;
}

}  // namespace sumgraph
