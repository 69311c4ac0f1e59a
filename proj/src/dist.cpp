#include "sumgraph/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <thread>

#include "sumgraph/error.hpp"
#include "sumgraph/expsum.hpp"
#include "sumgraph/rng.hpp"

#ifndef SUMGRAPH_VERSION
#define SUMGRAPH_VERSION "dev"
#endif

namespace sumgraph {

namespace {

constexpr double kPi = std::numbers::pi;

// Adaptive Simpson on [a, b] given f(a), f(m), f(b).
double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Rejection from the uniform envelope; one engine output per attempt, split
// into two 32-bit uniforms.
double semicircle_draw(Rng& rng) {
  for (;;) {
    const std::uint64_t w = rng.next();
    const double x = 4.0 * static_cast<double>(w >> 32) * 0x1.0p-32 - 2.0;
    const double u = static_cast<double>(w & 0xffffffffU) * 0x1.0p-32;
    if (u * u <= 1.0 - 0.25 * x * x) return x;
  }
}

// Runs fn(block) for every block of Rng::kBlock draws; blocks are independent.
void for_each_block(std::uint64_t n, const std::function<void(std::uint64_t)>& fn) {
  const std::uint64_t blocks = (n + Rng::kBlock - 1) / Rng::kBlock;
  const std::uint64_t workers = std::min<std::uint64_t>(std::max(1U, std::thread::hardware_concurrency()), blocks);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t b = w; b < blocks; b += workers) fn(b);
    });
  }
}

EmpiricalMeasure sample_with(std::uint64_t n, std::uint64_t seed, const std::function<double(Rng&)>& draw) {
  if (n == 0) throw Error(Errc::BadParameter, "sample size must be positive");
  std::vector<double> values(n);
  for_each_block(n, [&](std::uint64_t block) {
    Rng rng = Rng::substream(seed, block);
    const std::uint64_t end = std::min(n, (block + 1) * Rng::kBlock);
    for (std::uint64_t i = block * Rng::kBlock; i < end; ++i) values[i] = draw(rng);
  });
  return EmpiricalMeasure::from_samples(std::move(values));
}

}  // namespace

// ---- EmpiricalMeasure ----

EmpiricalMeasure EmpiricalMeasure::from_samples(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  EmpiricalMeasure m;
  for (double v : values) {
    if (!m.atoms_.empty() && m.atoms_.back().value == v) {
      ++m.atoms_.back().count;
    } else {
      m.atoms_.push_back({v, 1});
    }
  }
  m.total_ = values.size();
  return m;
}

EmpiricalMeasure EmpiricalMeasure::from_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  EmpiricalMeasure m;
  for (const auto& a : atoms) {
    if (a.count == 0) continue;
    if (!m.atoms_.empty() && m.atoms_.back().value == a.value) {
      m.atoms_.back().count += a.count;
    } else {
      m.atoms_.push_back(a);
    }
    m.total_ += a.count;
  }
  return m;
}

double EmpiricalMeasure::cdf(double x) const {
  if (total_ == 0) return 0.0;
  std::uint64_t c = 0;
  for (const auto& a : atoms_) {
    if (a.value > x) break;
    c += a.count;
  }
  return static_cast<double>(c) / static_cast<double>(total_);
}

double EmpiricalMeasure::mean() const { return moment(*this, 1); }

EmpiricalMeasure EmpiricalMeasure::scaled(double factor) const {
  std::vector<Atom> atoms(atoms_.begin(), atoms_.end());
  for (auto& a : atoms) a.value *= factor;
  return from_atoms(std::move(atoms));
}

// ---- analytic laws ----

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(0.5 * x) / kPi;
}

double semicircle_density(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(1.0 - 0.25 * x * x) / kPi;
}

double kesten_mckay_density(double d, double x) {
  if (!(d >= 2.0)) throw Error(Errc::BadParameter, "Kesten-McKay needs d >= 2");
  if (!(std::abs(x) <= 2.0)) throw Error(Errc::BadParameter, "Kesten-McKay density is supported on [-2, 2]");
  return d * (d - 1.0) * std::sqrt(4.0 - x * x) / (2.0 * kPi * (d * d - (d - 1.0) * x * x));
}

double kesten_mckay_cdf(double d, double x) {
  if (!(d >= 2.0)) throw Error(Errc::BadParameter, "Kesten-McKay needs d >= 2");
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  // x = -2 cos(theta) turns the density into a rational function of cos^2(theta).
  const double theta = std::acos(-0.5 * x);
  const double phi = std::atan2(d * std::sin(theta), (d - 2.0) * std::cos(theta));
  return (d * theta - (d - 2.0) * phi) / (2.0 * kPi);
}

double salie_modulus_cdf(double x) {
  if (x < 0.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + 0.5 * (1.0 - 2.0 / kPi * std::acos(0.5 * x));
}

double sc_plus_sa_cdf(double x) {
  // P(sqrt(SC^2 + A^2) <= r) with A = 0 or 2 cos(phi), phi uniform on [0, pi/2].
  auto modulus_cdf = [](double r) {
    if (r <= 0.0) return 0.0;
    const double zero_part = 2.0 * semicircle_cdf(r) - 1.0;
    const double phi0 = std::acos(std::min(1.0, 0.5 * r));
    auto f = [r](double phi) {
      const double c = 2.0 * std::cos(phi);
      const double s = std::sqrt(std::max(0.0, r * r - c * c));
      return 2.0 * semicircle_cdf(s) - 1.0;
    };
    const double cos_part = 2.0 / kPi * integrate(f, phi0, 0.5 * kPi, 1e-11);
    return 0.5 * zero_part + 0.5 * cos_part;
  };
  if (x >= 0.0) return 0.5 + 0.5 * modulus_cdf(x);
  return 0.5 - 0.5 * modulus_cdf(-x);
}

LimitLaw LimitLaw::semicircle() { return {LawKind::Semicircle, 0.0, 0.0, 0}; }

LimitLaw LimitLaw::kesten_mckay(double d) {
  if (!(d >= 2.0)) throw Error(Errc::BadParameter, "Kesten-McKay needs d >= 2");
  return {LawKind::KestenMcKay, d, 0.0, 0};
}

LimitLaw LimitLaw::salie_modulus() { return {LawKind::SalieModulus, 0.0, 0.0, 0}; }

LimitLaw LimitLaw::kt_series(double t, std::uint64_t H) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(Errc::BadParameter, "t must lie in (0, 1]");
  return {LawKind::KtSeries, 0.0, t, H == 0 ? default_kt_truncation(t) : H};
}

LimitLaw LimitLaw::sc_plus_sa() { return {LawKind::ScPlusSaModulus, 0.0, 0.0, 0}; }

std::string LimitLaw::name() const {
  switch (kind_) {
    case LawKind::Semicircle: return "semicircle";
    case LawKind::KestenMcKay: return "kesten-mckay";
    case LawKind::SalieModulus: return "salie-modulus";
    case LawKind::KtSeries: return "kt-series";
    case LawKind::ScPlusSaModulus: return "sc-plus-sa";
  }
  return "unknown";
}

std::pair<double, double> LimitLaw::support() const {
  switch (kind_) {
    case LawKind::Semicircle:
    case LawKind::KestenMcKay: return {-2.0, 2.0};
    case LawKind::SalieModulus: return {0.0, 2.0};
    case LawKind::ScPlusSaModulus: return {-std::sqrt(8.0), std::sqrt(8.0)};
    case LawKind::KtSeries: {
      double bound = 2.0 * std::sqrt(t_);
      for (std::uint64_t h = 1; h <= h_; ++h) {
        bound += 2.0 * 2.0 * std::abs(std::sin(kPi * static_cast<double>(h) * t_)) / (kPi * static_cast<double>(h) * std::sqrt(t_));
      }
      return {-bound, bound};
    }
  }
  return {0.0, 0.0};
}

namespace {

// sc_plus_sa_cdf costs one quadrature per call; W1 against many atoms uses a
// table on 2^14 + 1 points with linear interpolation (error below 1e-7).
double sc_plus_sa_cdf_tabulated(double x) {
  constexpr std::size_t kPoints = (std::size_t{1} << 14) + 1;
  static const double kEdge = std::sqrt(8.0);
  static const std::vector<double> table = [] {
    std::vector<double> t(kPoints);
    for (std::size_t i = 0; i < kPoints; ++i) {
      t[i] = sc_plus_sa_cdf(-kEdge + 2.0 * kEdge * static_cast<double>(i) / static_cast<double>(kPoints - 1));
    }
    return t;
  }();
  if (x <= -kEdge) return 0.0;
  if (x >= kEdge) return 1.0;
  const double pos = (x + kEdge) / (2.0 * kEdge) * static_cast<double>(kPoints - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), kPoints - 2);
  const double frac = pos - static_cast<double>(i);
  return table[i] + frac * (table[i + 1] - table[i]);
}

}  // namespace

double LimitLaw::cdf(double x) const {
  switch (kind_) {
    case LawKind::Semicircle: return semicircle_cdf(x);
    case LawKind::KestenMcKay: return kesten_mckay_cdf(d_, x);
    case LawKind::SalieModulus: return salie_modulus_cdf(x);
    case LawKind::ScPlusSaModulus: return sc_plus_sa_cdf_tabulated(x);
    case LawKind::KtSeries: break;
  }
  throw Error(Errc::BadParameter, "the K_t series law has no CDF evaluator; compare samples instead");
}

double LimitLaw::density(double x) const {
  switch (kind_) {
    case LawKind::Semicircle: return semicircle_density(x);
    case LawKind::KestenMcKay: return std::abs(x) >= 2.0 ? 0.0 : kesten_mckay_density(d_, x);
    default: break;
  }
  throw Error(Errc::BadParameter, "law " + name() + " has no density");
}

std::vector<double> LimitLaw::breakpoints() const {
  const auto [lo, hi] = support();
  return {lo, hi};
}

EmpiricalMeasure LimitLaw::sample(std::uint64_t n, std::uint64_t seed) const {
  switch (kind_) {
    case LawKind::Semicircle: return sample_semicircle(n, seed);
    case LawKind::KtSeries: return sample_kt_limit(t_, h_, n, seed);
    case LawKind::ScPlusSaModulus: return sample_sc_plus_sa(n, seed);
    case LawKind::SalieModulus:
      return sample_with(n, seed, [](Rng& rng) {
        if (rng.coin()) return 0.0;
        return 2.0 * std::abs(std::cos(4.0 * kPi * rng.uniform()));
      });
    case LawKind::KestenMcKay: break;
  }
  throw Error(Errc::BadParameter, "law " + name() + " has no sampler");
}

// ---- Wasserstein-1 ----

double w1_vs_law(const EmpiricalMeasure& emp, const LimitLaw& law) {
  if (emp.empty()) throw Error(Errc::EmptySet, "empty measure");
  const std::function<double(double)> F = [&law](double x) { return law.cdf(x); };
  std::vector<double> cuts;
  cuts.reserve(emp.atoms().size() + 2);
  for (const auto& a : emp.atoms()) cuts.push_back(a.value);
  for (double b : law.breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double span = std::max(1.0, cuts.back() - cuts.front());
  const double total = static_cast<double>(emp.total());
  const auto atoms = emp.atoms();
  std::size_t next_atom = 0;
  std::uint64_t cum = 0;
  double w1 = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    while (next_atom < atoms.size() && atoms[next_atom].value <= a) cum += atoms[next_atom++].count;
    const double c = static_cast<double>(cum) / total;
    const double tol = 1e-8 * (b - a) / span;
    const double fa = F(a);
    const double fb = F(std::nextafter(b, a));
    if (c <= fa) {
      w1 += integrate(F, a, b, tol) - c * (b - a);
    } else if (c >= fb) {
      w1 += c * (b - a) - integrate(F, a, b, tol);
    } else {
      double lo = a, hi = b;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * span; ++it) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) < c ? lo : hi) = mid;
      }
      const double x = 0.5 * (lo + hi);
      w1 += (c * (x - a) - integrate(F, a, x, tol)) + (integrate(F, x, b, tol) - c * (b - x));
    }
  }
  return w1;
}

double w1_two_sample(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptySet, "empty measure");
  const auto xa = a.atoms(), xb = b.atoms();
  const double na = static_cast<double>(a.total()), nb = static_cast<double>(b.total());
  std::size_t i = 0, j = 0;
  std::uint64_t ca = 0, cb = 0;
  double w1 = 0.0;
  double prev = std::min(xa.front().value, xb.front().value);
  while (i < xa.size() || j < xb.size()) {
    const double x = std::min(i < xa.size() ? xa[i].value : INFINITY, j < xb.size() ? xb[j].value : INFINITY);
    w1 += std::abs(static_cast<double>(ca) / na - static_cast<double>(cb) / nb) * (x - prev);
    while (i < xa.size() && xa[i].value == x) ca += xa[i++].count;
    while (j < xb.size() && xb[j].value == x) cb += xb[j++].count;
    prev = x;
  }
  return w1;
}

EmpiricalMeasure discretize(const LimitLaw& law, std::uint64_t n) {
  if (n == 0) throw Error(Errc::BadParameter, "discretization needs n >= 1");
  const auto [lo0, hi0] = law.support();
  std::vector<double> values(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double lo = lo0, hi = hi0;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (law.cdf(mid) < target ? lo : hi) = mid;
    }
    values[i] = hi;
  }
  return EmpiricalMeasure::from_samples(std::move(values));
}

// ---- moments ----

double moment(const EmpiricalMeasure& emp, unsigned r) {
  double s = 0.0;
  for (const auto& a : emp.atoms()) s += static_cast<double>(a.count) * std::pow(a.value, static_cast<int>(r));
  return s / static_cast<double>(emp.total());
}

double chebyshev_U(unsigned alpha, double x) {
  double prev = 1.0, cur = x;
  if (alpha == 0) return prev;
  for (unsigned k = 1; k < alpha; ++k) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double m4_check(const FiniteField& field) {
  if (!field.is_prime_field()) throw Error(Errc::NotPrimeField, "m4_check needs a prime field");
  const auto table = kloosterman_table(field);
  const double q = field.size();
  // K(a,b) = K(ab,1): each m != 0 occurs q - 1 times.
  double s = 0.0;
  for (Elem m = 1; m < field.size(); ++m) {
    const double x = table.at(m, 1).real() / std::sqrt(q);
    s += x * x * x * x;
  }
  return s / (q - 1.0);
}

double salie_moment(unsigned beta) {
  if (beta == 0) return 1.0;
  if (beta % 2 == 1) return 0.0;
  // (1/2) (2i)^beta E(cos^beta) = (1/2) (-1)^{beta/2} binom(beta, beta/2).
  double binom = 1.0;
  for (unsigned k = 1; k <= beta / 2; ++k) binom = binom * static_cast<double>(beta / 2 + k) / k;
  return 0.5 * ((beta / 2) % 2 == 0 ? 1.0 : -1.0) * binom;
}

MixedMoment mixed_moment_check(const FiniteField& field, unsigned alpha, unsigned beta) {
  if (!field.is_prime_field()) throw Error(Errc::NotPrimeField, "mixed moments need a prime field");
  const std::uint32_t p = field.size();
  if (p % 4 != 3) throw Error(Errc::BadCongruence, "mixed moments need p = 3 mod 4");
  const auto k = kloosterman_table(field);
  const auto t = salie_table(field);
  const double root = std::sqrt(static_cast<double>(p));
  std::complex<double> acc{};
  for (Elem a = 1; a < p; ++a) {
    for (Elem b = 1; b < p; ++b) {
      const double u = chebyshev_U(alpha, k.at(a, b).real() / root);
      const std::complex<double> s = t.at(a, b) / root;
      std::complex<double> power{1.0, 0.0};
      for (unsigned e = 0; e < beta; ++e) power *= s;
      acc += u * power;
    }
  }
  const double count = static_cast<double>(p - 1) * static_cast<double>(p - 1);
  return {acc / count, alpha == 0 ? salie_moment(beta) : 0.0};
}

// ---- samplers ----

EmpiricalMeasure sample_semicircle(std::uint64_t n, std::uint64_t seed) {
  return sample_with(n, seed, semicircle_draw);
}

std::uint64_t default_kt_truncation(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(Errc::BadParameter, "t must lie in (0, 1]");
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(2e4 / t)), std::uint64_t{1} << 16);
}

double kt_tail_bound(double t, std::uint64_t H) { return 2.0 / (kPi * kPi * static_cast<double>(H) * t); }

EmpiricalMeasure sample_kt_limit(double t, std::uint64_t H, std::uint64_t n, std::uint64_t seed) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(Errc::BadParameter, "t must lie in (0, 1]");
  if (H == 0) throw Error(Errc::BadParameter, "series truncation H must be at least 1");
  // c_h for h > 0; c_{-h} = conj(c_h). Terms with ht integral vanish and draw nothing.
  std::vector<std::complex<double>> coeff;
  for (std::uint64_t h = 1; h <= H; ++h) {
    const double ht = static_cast<double>(h) * t;
    if (ht == std::floor(ht)) continue;
    const std::complex<double> e = std::polar(1.0, 2.0 * kPi * ht);
    coeff.push_back((e - 1.0) / std::complex<double>(0.0, 2.0 * kPi * static_cast<double>(h)));
  }
  const double st = std::sqrt(t);
  return sample_with(n, seed, [&](Rng& rng) {
    const bool negative = rng.coin();
    std::complex<double> z = st * semicircle_draw(rng);
    double re = 0.0, im = 0.0;
    for (const auto& c : coeff) {
      const double plus = semicircle_draw(rng);
      const double minus = semicircle_draw(rng);
      // c SC_h + conj(c) SC_{-h}
      re += c.real() * (plus + minus);
      im += c.imag() * (plus - minus);
    }
    z += std::complex<double>(re, im) / st;
    return negative ? -std::abs(z) : std::abs(z);
  });
}

EmpiricalMeasure sample_sc_plus_sa(std::uint64_t n, std::uint64_t seed) {
  return sample_with(n, seed, [](Rng& rng) {
    const bool negative = rng.coin();
    const double sc = semicircle_draw(rng);
    const double sa = rng.coin() ? 0.0 : 2.0 * std::cos(4.0 * kPi * rng.uniform());
    const double r = std::sqrt(sc * sc + sa * sa);
    return negative ? -r : r;
  });
}

EmpiricalMeasure spectral_to_empirical(const SpectralMeasure& measure, bool exclude_trivial) {
  const SpectralMeasure m = exclude_trivial ? rescaled_spectrum(measure, 1.0, true) : measure;
  std::vector<EmpiricalMeasure::Atom> atoms;
  atoms.reserve(m.atoms.size());
  for (const auto& a : m.atoms) atoms.push_back({a.value, a.multiplicity});
  return EmpiricalMeasure::from_atoms(std::move(atoms));
}

// ---- histograms ----

Histogram histogram(const EmpiricalMeasure& emp, std::size_t bins, double lo, double hi) {
  if (bins == 0) throw Error(Errc::BadParameter, "histogram needs at least one bin");
  Histogram h;
  if (lo == hi) {
    lo = emp.empty() ? 0.0 : emp.min();
    hi = emp.empty() ? 1.0 : emp.max();
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  if (!(hi > lo)) throw Error(Errc::BadParameter, "histogram range must be increasing");
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  h.total = emp.total();
  const double width = (hi - lo) / static_cast<double>(bins);
  for (const auto& a : emp.atoms()) {
    if (a.value < lo || a.value > hi) {
      h.outside += a.count;
      continue;
    }
    auto i = static_cast<std::size_t>(std::floor((a.value - lo) / width));
    i = std::min(i, bins - 1);
    // Guard the left-closed convention against rounding in the division.
    while (i > 0 && a.value < h.bin_left(i)) --i;
    while (i + 1 < bins && a.value >= h.bin_left(i + 1)) ++i;
    h.counts[i] += a.count;
  }
  return h;
}

std::string svg_histogram(const Histogram& hist, const SvgOptions& options) {
  const double w = options.width, hgt = options.height;
  const double ml = 50, mr = 20, mt = 30, mb = 40;
  const double pw = w - ml - mr, ph = hgt - mt - mb;
  const std::size_t bins = hist.counts.size();
  const double bw = (hist.hi - hist.lo) / static_cast<double>(bins);
  const double total = std::max<double>(1.0, static_cast<double>(hist.total));

  std::vector<double> heights(bins);
  double ymax = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    heights[i] = static_cast<double>(hist.counts[i]) / (total * bw);
    ymax = std::max(ymax, heights[i]);
  }
  std::vector<std::pair<double, double>> curve;
  if (options.overlay != nullptr && options.overlay->has_density()) {
    const auto [slo, shi] = options.overlay->support();
    const double lo = std::max(slo, hist.lo), hi = std::min(shi, hist.hi);
    for (int k = 0; k < 512 && hi > lo; ++k) {
      const double x = lo + (hi - lo) * k / 511.0;
      const double y = options.overlay->density(x);
      curve.emplace_back(x, y);
      if (std::isfinite(y)) ymax = std::max(ymax, y);
    }
  }
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;
  auto px = [&](double x) { return ml + (x - hist.lo) / (hist.hi - hist.lo) * pw; };
  auto py = [&](double y) { return mt + ph - std::min(y, ymax) / ymax * ph; };

  std::string out;
  char buf[256];
  auto emit = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  out += "<!-- generator: sumgraph " SUMGRAPH_VERSION " -->\n";
  emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n", options.width,
       options.height, options.width, options.height);
  emit("<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\"/>\n", options.width, options.height);
  if (!options.title.empty()) {
    std::string title;
    for (char c : options.title) {
      if (c == '<') title += "&lt;";
      else if (c == '>') title += "&gt;";
      else if (c == '&') title += "&amp;";
      else title += c;
    }
    out += "<text x=\"" + std::to_string(static_cast<int>(w / 2)) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
  }
  out += "<g fill=\"steelblue\" stroke=\"none\">\n";
  for (std::size_t i = 0; i < bins; ++i) {
    if (hist.counts[i] == 0) continue;
    const double x0 = px(hist.bin_left(i)), x1 = px(hist.bin_right(i));
    emit("<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/>\n", x0, py(heights[i]), x1 - x0,
         mt + ph - py(heights[i]));
  }
  out += "</g>\n";
  if (!curve.empty()) {
    out += "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\" points=\"";
    for (const auto& [x, y] : curve) emit("%.3f,%.3f ", px(x), py(std::isfinite(y) ? y : ymax));
    out += "\"/>\n";
  }
  emit("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml, mt + ph, ml + pw, mt + ph);
  emit("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml, mt, ml, mt + ph);
  for (int k = 0; k <= 4; ++k) {
    const double x = hist.lo + (hist.hi - hist.lo) * k / 4.0;
    emit("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">%.3g</text>\n",
         px(x), mt + ph + 16, x);
  }
  emit("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">%.3g</text>\n",
       ml - 4, mt + 4, ymax);
  out += "</svg>\n";
  return out;
}

}  // namespace sumgraph
