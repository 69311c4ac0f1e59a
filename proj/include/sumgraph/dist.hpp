#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumgraph/ffield.hpp"
#include "sumgraph/spectrum.hpp"

namespace sumgraph {

/// Finitely supported probability measure with integer atom counts.
/// Weights are count / total; atoms are sorted and distinct.
class EmpiricalMeasure {
 public:
  struct Atom {
    double value = 0.0;
    std::uint64_t count = 0;
  };

  EmpiricalMeasure() = default;
  static EmpiricalMeasure from_samples(std::vector<double> values);
  /// Sorts, merges equal values and drops zero counts.
  static EmpiricalMeasure from_atoms(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  double weight(std::size_t i) const { return static_cast<double>(atoms_[i].count) / static_cast<double>(total_); }
  double min() const { return atoms_.front().value; }
  double max() const { return atoms_.back().value; }
  /// Right-continuous distribution function.
  double cdf(double x) const;
  double mean() const;
  /// Image under x -> factor * x.
  EmpiricalMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
  std::uint64_t total_ = 0;
};

enum class LawKind { Semicircle, KestenMcKay, SalieModulus, KtSeries, ScPlusSaModulus };

/// Limit laws of normalized spectra.
///   Semicircle      density (1/pi) sqrt(1 - x^2/4) on [-2, 2]
///   KestenMcKay(d)  density d(d-1) sqrt(4-x^2) / (2 pi (d^2 - (d-1) x^2)) on [-2, 2]
///   SalieModulus    law of |SA|: 0 w.p. 1/2, else 2|cos(4 pi U)|
///   KtSeries(t,H)   eps |sqrt(t) SC_0 + t^{-1/2} sum_{0<|h|<=H} c_h SC_h|,
///                   c_h = (e(ht) - 1) / (2 pi i h); sampler only
///   ScPlusSaModulus eps sqrt(SC^2 + |SA|^2)
class LimitLaw {
 public:
  static LimitLaw semicircle();
  static LimitLaw kesten_mckay(double d);
  static LimitLaw salie_modulus();
  /// H = 0 selects the default truncation.
  static LimitLaw kt_series(double t, std::uint64_t H = 0);
  static LimitLaw sc_plus_sa();

  LawKind kind() const noexcept { return kind_; }
  std::string name() const;
  double degree() const noexcept { return d_; }
  double t() const noexcept { return t_; }
  std::uint64_t truncation() const noexcept { return h_; }

  std::pair<double, double> support() const;
  bool has_cdf() const noexcept { return kind_ != LawKind::KtSeries; }
  bool has_density() const noexcept { return kind_ == LawKind::Semicircle || kind_ == LawKind::KestenMcKay; }
  /// Throws BadParameter for the sampler-only law.
  double cdf(double x) const;
  /// Throws BadParameter where no density exists.
  double density(double x) const;
  /// Support ends and atom locations; W1 integration splits there.
  std::vector<double> breakpoints() const;
  /// Throws BadParameter for laws without a sampler (KestenMcKay).
  EmpiricalMeasure sample(std::uint64_t n, std::uint64_t seed) const;

 private:
  LimitLaw(LawKind kind, double d, double t, std::uint64_t h) : kind_(kind), d_(d), t_(t), h_(h) {}
  LawKind kind_;
  double d_;
  double t_;
  std::uint64_t h_;
};

double semicircle_cdf(double x);
double semicircle_density(double x);
double kesten_mckay_density(double d, double x);
double kesten_mckay_cdf(double d, double x);
double salie_modulus_cdf(double x);
double sc_plus_sa_cdf(double x);

/// Integral of |F_emp - F_law| with quadrature error <= 1e-6.
double w1_vs_law(const EmpiricalMeasure& emp, const LimitLaw& law);
/// Integral of |F_1 - F_2| for two step functions.
double w1_two_sample(const EmpiricalMeasure& a, const EmpiricalMeasure& b);
/// Quantile discretization: n unit atoms at F^{-1}((i + 1/2) / n).
EmpiricalMeasure discretize(const LimitLaw& law, std::uint64_t n);

double moment(const EmpiricalMeasure& emp, unsigned r);
/// U_0 = 1, U_1 = x, U_{a+1} = x U_a - U_{a-1}.
double chebyshev_U(unsigned alpha, double x);

/// (1/(q-1)^2) sum over a, b != 0 of (K(a,b) / sqrt q)^4; prime fields only.
double m4_check(const FiniteField& field);

struct MixedMoment {
  std::complex<double> value;
  double prediction = 0.0;
};

/// (1/(p-1)^2) sum over a, b != 0 of U_alpha(K(a,b)/sqrt p) (T(a,b)/sqrt p)^beta,
/// with the limit E(U_alpha(SC)) E(SA^beta). Needs p = 3 mod 4.
MixedMoment mixed_moment_check(const FiniteField& field, unsigned alpha, unsigned beta);
/// E(SA^beta) for SA = 0 w.p. 1/2, else 2i cos(4 pi U).
double salie_moment(unsigned beta);

EmpiricalMeasure sample_semicircle(std::uint64_t n, std::uint64_t seed);
/// Requires H >= 1; default_kt_truncation(t) gives the recommended value.
EmpiricalMeasure sample_kt_limit(double t, std::uint64_t H, std::uint64_t n, std::uint64_t seed);
EmpiricalMeasure sample_sc_plus_sa(std::uint64_t n, std::uint64_t seed);
std::uint64_t default_kt_truncation(double t);
/// Bound on the variance of the discarded tail: 2 / (pi^2 H t).
double kt_tail_bound(double t, std::uint64_t H);

EmpiricalMeasure spectral_to_empirical(const SpectralMeasure& measure, bool exclude_trivial);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
  /// Atoms outside [lo, hi].
  std::uint64_t outside = 0;
  std::uint64_t total = 0;
  double bin_left(std::size_t i) const { return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(counts.size()); }
  double bin_right(std::size_t i) const { return bin_left(i + 1); }
};

/// Bins [lo + i w, lo + (i+1) w); hi itself lands in the last bin.
/// lo == hi selects the measure's own range.
Histogram histogram(const EmpiricalMeasure& emp, std::size_t bins, double lo = 0.0, double hi = 0.0);

struct SvgOptions {
  std::string title;
  /// Density overlay (dashed red), sampled at 512 points; laws without a density draw none.
  const LimitLaw* overlay = nullptr;
  int width = 640;
  int height = 400;
};

/// Histogram drawn as a density; the first line is a version comment.
std::string svg_histogram(const Histogram& hist, const SvgOptions& options);

}  // namespace sumgraph
