#include "sumgraph/ffield.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sumgraph/error.hpp"

namespace sumgraph {

namespace detail {

struct FieldTables {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  // Extension fields only: discrete log / antilog against a generator.
  // exp has length 2(q-1) so that log x + log y needs no reduction.
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;
  std::vector<std::uint32_t> trace;  // extension fields only
  std::vector<std::complex<double>> roots;
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian coefficients

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over F_p; b must be non-zero after trimming.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_rem(std::move(prod), f, p);
}

Poly digits(std::uint64_t code, std::uint32_t p, std::uint32_t len) {
  Poly d(len, 0);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return d;
}

std::uint32_t encode(const Poly& d, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return static_cast<std::uint32_t>(code);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = digits(low, p, d);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t n) {
  if (n == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  for (std::uint64_t low = 0; low < count; ++low) {
    Poly f = digits(low, p, n);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw Error(Errc::BadParameter, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

Poly poly_pow(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

void build_extension_tables(detail::FieldTables& t) {
  const std::uint32_t q = t.q;
  const auto factors = prime_factors(q - 1);
  Poly generator;
  for (std::uint32_t c = 2; c < q; ++c) {
    Poly g = digits(c, t.p, t.n);
    trim(g);
    bool primitive = true;
    for (auto r : factors) {
      Poly h = poly_pow(g, (q - 1) / r, t.modulus, t.p);
      if (h.size() == 1 && h[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }

  t.exp.assign(2 * (q - 1), 0);
  t.log.assign(q, 0);
  Poly cur{1};
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    Poly padded = cur;
    padded.resize(t.n, 0);
    const std::uint32_t code = encode(padded, t.p);
    t.exp[i] = code;
    t.exp[i + q - 1] = code;
    t.log[code] = i;
    cur = poly_mulmod(cur, generator, t.modulus, t.p);
  }
}

}  // namespace

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

FiniteField::FiniteField(std::shared_ptr<const detail::FieldTables> tables) : t_(std::move(tables)) {}

std::uint32_t FiniteField::characteristic() const noexcept { return t_->p; }
std::uint32_t FiniteField::degree() const noexcept { return t_->n; }
std::uint32_t FiniteField::size() const noexcept { return t_->q; }
const std::vector<std::uint32_t>& FiniteField::modulus() const noexcept { return t_->modulus; }

Elem FiniteField::add(Elem x, Elem y) const noexcept {
  const std::uint32_t p = t_->p;
  if (t_->n == 1) {
    const std::uint32_t s = x + y;
    return s >= p ? s - p : s;
  }
  if (p == 2) return x ^ y;
  Elem out = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < t_->n; ++i) {
    std::uint32_t d = x % p + y % p;
    if (d >= p) d -= p;
    out += d * place;
    place *= p;
    x /= p;
    y /= p;
  }
  return out;
}

Elem FiniteField::neg(Elem x) const noexcept {
  const std::uint32_t p = t_->p;
  if (t_->n == 1) return x == 0 ? 0 : p - x;
  if (p == 2) return x;
  Elem out = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < t_->n; ++i) {
    const std::uint32_t d = x % p;
    out += (d == 0 ? 0 : p - d) * place;
    place *= p;
    x /= p;
  }
  return out;
}

Elem FiniteField::sub(Elem x, Elem y) const noexcept { return add(x, neg(y)); }

Elem FiniteField::mul(Elem x, Elem y) const noexcept {
  if (t_->n == 1) return static_cast<Elem>(std::uint64_t{x} * y % t_->p);
  if (x == 0 || y == 0) return 0;
  return t_->exp[t_->log[x] + t_->log[y]];
}

Elem FiniteField::pow(Elem x, std::uint64_t e) const noexcept {
  Elem result = 1;
  Elem base = x;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem FiniteField::inv(Elem x) const {
  if (x == 0) throw Error(Errc::ZeroInverse, "inverse of zero");
  return pow(x, t_->q - 2);
}

Elem FiniteField::scale(Elem x, std::uint64_t k) const noexcept {
  return mul(x, static_cast<Elem>(k % t_->p));
}

std::uint32_t FiniteField::trace(Elem x) const noexcept {
  if (t_->n == 1) return x;
  return t_->trace[x];
}

std::complex<double> FiniteField::psi(Elem x) const noexcept { return t_->roots[trace(x)]; }

std::complex<double> FiniteField::root_of_unity(std::uint32_t k) const noexcept { return t_->roots[k % t_->p]; }

int FiniteField::legendre(Elem x) const {
  if (t_->n != 1) throw Error(Errc::NotPrimeField, "Legendre symbol needs a prime field");
  if (x == 0) return 0;
  if (t_->p == 2) return 1;
  const Elem r = pow(x, (t_->p - 1) / 2);
  return r == 1 ? 1 : -1;
}

std::vector<std::uint32_t> FiniteField::coefficients(Elem x) const { return digits(x, t_->p, t_->n); }

Elem FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != t_->n) throw Error(Errc::BadParameter, "coefficient count must equal the degree");
  Poly d(coeffs.begin(), coeffs.end());
  for (auto& c : d) c %= t_->p;
  return encode(d, t_->p);
}

bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
  return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->n == b.t_->n);
}

FiniteField make_field(std::int64_t p, std::int64_t n) {
  if (n < 1) throw Error(Errc::BadParameter, "extension degree must be >= 1");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(Errc::CompositeModulus, std::to_string(p) + " is not prime");
  }
  std::uint64_t q = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxFieldSize) throw Error(Errc::SizeExceeded, "field size exceeds 2^20");
  }

  auto t = std::make_shared<detail::FieldTables>();
  t->p = static_cast<std::uint32_t>(p);
  t->n = static_cast<std::uint32_t>(n);
  t->q = static_cast<std::uint32_t>(q);
  t->modulus = smallest_irreducible(t->p, t->n);

  t->roots.resize(t->p);
  for (std::uint32_t k = 0; k < t->p; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / t->p;
    t->roots[k] = {std::cos(angle), std::sin(angle)};
  }
  t->roots[0] = {1.0, 0.0};

  if (t->n > 1) {
    build_extension_tables(*t);
    // Trace is F_p-linear: tabulate it on the power basis X^j, then extend.
    std::vector<std::uint32_t> basis_trace(t->n);
    for (std::uint32_t j = 0; j < t->n; ++j) {
      Poly xj(t->n, 0);
      xj[j] = 1;
      Poly acc(t->n, 0);
      Poly cur = xj;
      trim(cur);
      for (std::uint32_t i = 0; i < t->n; ++i) {
        Poly padded = cur;
        padded.resize(t->n, 0);
        for (std::uint32_t k = 0; k < t->n; ++k) acc[k] = (acc[k] + padded[k]) % t->p;
        cur = poly_pow(cur, t->p, t->modulus, t->p);
      }
      basis_trace[j] = acc[0];
    }
    t->trace.resize(t->q);
    for (std::uint32_t x = 0; x < t->q; ++x) {
      std::uint64_t s = 0;
      std::uint32_t c = x;
      for (std::uint32_t j = 0; j < t->n; ++j) {
        s += std::uint64_t{c % t->p} * basis_trace[j];
        c /= t->p;
      }
      t->trace[x] = static_cast<std::uint32_t>(s % t->p);
    }
  }
  return FiniteField(std::move(t));
}

FieldElement::FieldElement(FiniteField field, Elem code) : field_(std::move(field)), code_(code) {
  if (!field_.contains(code_)) throw Error(Errc::BadParameter, "element code out of range");
}

namespace {
void require_same(const FieldElement& x, const FieldElement& y) {
  if (!(x.field() == y.field())) throw Error(Errc::FieldMismatch, "operands from different fields");
}
}  // namespace

FieldElement FieldElement::operator-() const { return {field_, field_.neg(code_)}; }
FieldElement FieldElement::inverse() const { return {field_, field_.inv(code_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(code_, e)}; }

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field_, x.field_.add(x.code_, y.code_)};
}
FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field_, x.field_.sub(x.code_, y.code_)};
}
FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field_, x.field_.mul(x.code_, y.code_)};
}
FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field_, x.field_.mul(x.code_, x.field_.inv(y.code_))};
}

FieldElement add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement mul(const FieldElement& x, const FieldElement& y) { return x * y; }
FieldElement neg(const FieldElement& x) { return -x; }
FieldElement inv(const FieldElement& x) { return x.inverse(); }
FieldElement pow(const FieldElement& x, std::uint64_t e) { return x.pow(e); }

std::uint32_t trace(const FieldElement& x) { return x.field().trace(x.code()); }
std::complex<double> psi(const FieldElement& x) { return x.field().psi(x.code()); }
int legendre(const FieldElement& x) { return x.field().legendre(x.code()); }

std::vector<FieldElement> enumerate_elements(const FiniteField& field) {
  std::vector<FieldElement> out;
  out.reserve(field.size());
  for (Elem x = 0; x < field.size(); ++x) out.emplace_back(field, x);
  return out;
}

std::int64_t int_embedding(const FieldElement& x) {
  if (!x.field().is_prime_field()) throw Error(Errc::NotPrimeField, "integer embedding needs a prime field");
  return x.code();
}

FieldElement element_from_int(const FiniteField& field, std::int64_t value) {
  if (!field.is_prime_field()) throw Error(Errc::NotPrimeField, "integer embedding needs a prime field");
  const std::int64_t p = field.characteristic();
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return {field, static_cast<Elem>(r)};
}

}  // namespace sumgraph
