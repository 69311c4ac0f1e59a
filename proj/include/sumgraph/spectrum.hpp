#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sumgraph/cayley.hpp"
#include "sumgraph/sidon.hpp"

namespace sumgraph {

struct SpectralAtom {
  double value = 0.0;
  std::uint64_t multiplicity = 0;
};

/// Eigenvalues with multiplicities, sorted ascending.
///
/// `scale` records the divisor already applied to every eigenvalue (1 for a
/// raw spectrum, sqrt|S| after normalization). `trivial` is the eigenvalue of
/// the trivial character in the same units; `trivial_included` tells whether
/// one copy of it is still counted in `atoms`.
struct SpectralMeasure {
  std::vector<SpectralAtom> atoms;
  Family family = Family::Custom;
  std::uint64_t q = 0;
  std::uint64_t set_size = 0;
  std::uint64_t loops = 0;
  double trivial = 0.0;
  bool trivial_included = true;
  double scale = 1.0;
  /// Largest |lambda| over non-trivial characters, in current units.
  double max_nontrivial_abs = 0.0;
  /// Values closer than this were merged into one atom, in current units.
  double tolerance = 0.0;

  std::uint64_t total_mass() const;
  std::size_t distinct_count() const noexcept { return atoms.size(); }
  /// Sum of lambda * multiplicity.
  double trace_sum() const;
  /// Sum of lambda^2 * multiplicity.
  double square_sum() const;
  /// Sorted eigenvalues with multiplicities expanded.
  std::vector<double> expanded() const;
  /// Multiplicity of the atom within `tolerance` of value (0 if none).
  std::uint64_t multiplicity_of(double value) const;
};

inline constexpr std::uint64_t kMaxSpectrumVertices = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kMaxDenseOracle = 4096;

/// S(chi_{a,b}) = sum over (x,y) in S of psi(a x + b y), indexed a*q + b.
/// Uses the family's exponential-sum table when one applies.
std::vector<std::complex<double>> character_sums(const SumSet& set);
/// Same quantity from the set alone: 2-D transform over F_p x F_p for prime
/// fields, direct summation otherwise.
std::vector<std::complex<double>> character_sums_generic(const SumSet& set);

/// Spectrum of the Cayley sum graph (loop entries 1 on the diagonal):
/// S(chi) for each real character and +-|S(chi)| for each pair {chi, conj chi}.
/// Values within 1e-7 sqrt(q) are merged.
SpectralMeasure spectrum_from_characters(const SumSet& set);
SpectralMeasure spectrum_from_sums(const SumSet& set, const std::vector<std::complex<double>>& sums);

/// Sorted eigenvalues of the materialized adjacency matrix (q^2 <= 4096).
std::vector<double> spectrum_dense_oracle(const CayleySumGraph& graph);
/// Sorted eigenvalues of a simple graph (n <= 4096).
std::vector<double> dense_eigenvalues(const AdjacencyList& graph);

/// Measure from an explicit eigenvalue list; the largest value is taken as trivial.
SpectralMeasure measure_from_eigenvalues(std::vector<double> values, double tolerance);

/// Divides by sqrt|S| and optionally drops one copy of the trivial eigenvalue.
SpectralMeasure normalized_spectrum(const SpectralMeasure& measure, bool exclude_trivial);
/// Same, with an explicit divisor (used for graphs that are not Cayley sum graphs).
SpectralMeasure rescaled_spectrum(const SpectralMeasure& measure, double divisor, bool exclude_trivial);

struct ProductClassEntry {
  Elem m = 0;
  double value = 0.0;  // |K(m,1)| in the measure's units
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
};

struct MultiplicityReport {
  std::vector<ProductClassEntry> classes;  // m = 1..q-1
  /// Multiplicities of +-1 (from K(a,0) = K(0,b) = -1), in the measure's units.
  std::uint64_t boundary_plus = 0;
  std::uint64_t boundary_minus = 0;
  std::uint64_t q = 0;
  /// Every signed value has multiplicity >= (q-1)/2 and each class >= q-1 combined.
  bool bounds_hold = false;
};

MultiplicityReport multiplicity_by_product_class(const SpectralMeasure& measure, const SumSet& set);

struct DelocalizationResult {
  double max_sup_norm = 0.0;
  double bound = 0.0;  // sqrt(2/n)
  double max_residual = 0.0;
  std::size_t residual_vectors = 0;
  bool passes = false;
};

inline constexpr std::uint32_t kMaxDelocalizationField = 64;

/// Builds the eigenbasis from characters (q <= 64) and reports its largest
/// entry; a residual |Av - lambda v| is checked on the first 64 vectors.
DelocalizationResult delocalization_check(const SumSet& set);

}  // namespace sumgraph
