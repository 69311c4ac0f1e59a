#include "sumgraph/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sumgraph/dft.hpp"
#include "sumgraph/error.hpp"
#include "sumgraph/expsum.hpp"

namespace sumgraph {

std::uint64_t SpectralMeasure::total_mass() const {
  std::uint64_t total = 0;
  for (const auto& a : atoms) total += a.multiplicity;
  return total;
}

double SpectralMeasure::trace_sum() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.value * static_cast<double>(a.multiplicity);
  return s;
}

double SpectralMeasure::square_sum() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.value * a.value * static_cast<double>(a.multiplicity);
  return s;
}

std::vector<double> SpectralMeasure::expanded() const {
  std::vector<double> out;
  out.reserve(total_mass());
  for (const auto& a : atoms) out.insert(out.end(), a.multiplicity, a.value);
  return out;
}

std::uint64_t SpectralMeasure::multiplicity_of(double value) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), value - tolerance,
                             [](const SpectralAtom& a, double v) { return a.value < v; });
  std::uint64_t m = 0;
  for (; it != atoms.end() && it->value <= value + tolerance; ++it) m += it->multiplicity;
  return m;
}

namespace {

void require_spectrum_size(const SumSet& set) {
  const std::uint64_t q = set.field().size();
  if (q * q > kMaxSpectrumVertices) throw Error(Errc::SizeExceeded, "spectra limited to q^2 <= 2^22");
}

// Groups sorted values whose distance to the first member of the group is
// below tol; each atom carries the group mean.
std::vector<SpectralAtom> group_values(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<SpectralAtom> atoms;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < values.size() && values[j] - values[i] < tol) sum += values[j++];
    atoms.push_back({sum / static_cast<double>(j - i), j - i});
    i = j;
  }
  return atoms;
}

}  // namespace

std::vector<std::complex<double>> character_sums_generic(const SumSet& set) {
  require_spectrum_size(set);
  const auto& field = set.field();
  const std::uint32_t q = field.size();
  std::vector<std::complex<double>> sums(std::size_t{q} * q, {0.0, 0.0});
  if (field.is_prime_field()) {
    // indicator(u, v) -> transform over v for each u, then over u for each b.
    const DftPlan plan(q, +1);
    std::vector<std::complex<double>> grid(std::size_t{q} * q, {0.0, 0.0});
    for (const auto& s : set.points()) grid[std::size_t{s.u} * q + s.v] = 1.0;
    std::vector<std::complex<double>> row(q);
    for (Elem u = 0; u < q; ++u) {
      std::copy_n(grid.begin() + std::size_t{u} * q, q, row.begin());
      const auto out = plan(row);
      std::copy(out.begin(), out.end(), grid.begin() + std::size_t{u} * q);
    }
    for (Elem b = 0; b < q; ++b) {
      for (Elem u = 0; u < q; ++u) row[u] = grid[std::size_t{u} * q + b];
      const auto out = plan(row);
      for (Elem a = 0; a < q; ++a) sums[std::size_t{a} * q + b] = out[a];
    }
    return sums;
  }
  const std::uint32_t p = field.characteristic();
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      std::complex<double> acc{};
      for (const auto& s : set.points()) {
        acc += field.root_of_unity((field.trace(field.mul(a, s.u)) + field.trace(field.mul(b, s.v))) % p);
      }
      sums[std::size_t{a} * q + b] = acc;
    }
  }
  return sums;
}

std::vector<std::complex<double>> character_sums(const SumSet& set) {
  require_spectrum_size(set);
  const auto& field = set.field();
  const std::uint32_t q = field.size();
  auto fill = [&](auto&& value) {
    std::vector<std::complex<double>> sums(std::size_t{q} * q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) sums[std::size_t{a} * q + b] = value(a, b);
    return sums;
  };
  switch (set.family()) {
    case Family::Kloosterman: {
      const auto table = kloosterman_table(field);
      return fill([&](Elem a, Elem b) { return table.at(a, b); });
    }
    case Family::Birch: {
      const auto table = birch_table(field);
      return fill([&](Elem a, Elem b) { return table.at(a, b); });
    }
    case Family::PartialHyperbola: {
      const auto table = partial_kloosterman_table(field, set.t());
      return fill([&](Elem a, Elem b) { return table.at(a, b); });
    }
    case Family::QRHyperbola: {
      // Indicator of the squares on F_p^x is (1 + (x/p)) / 2.
      const auto k = kloosterman_table(field);
      const auto t = salie_table(field);
      return fill([&](Elem a, Elem b) { return 0.5 * k.at(a, b) + 0.5 * t.at(a, b); });
    }
    case Family::Custom: break;
  }
  return character_sums_generic(set);
}

SpectralMeasure spectrum_from_sums(const SumSet& set, const std::vector<std::complex<double>>& sums) {
  const auto& field = set.field();
  const std::uint32_t q = field.size();
  const bool all_real = field.characteristic() == 2;
  std::vector<double> values;
  values.reserve(std::size_t{q} * q);
  double max_nontrivial = 0.0;
  for (Elem a = 0; a < q; ++a) {
    const Elem na = field.neg(a);
    for (Elem b = 0; b < q; ++b) {
      const std::size_t idx = std::size_t{a} * q + b;
      const auto s = sums[idx];
      const bool trivial = a == 0 && b == 0;
      if (all_real || trivial) {
        values.push_back(s.real());
        if (!trivial) max_nontrivial = std::max(max_nontrivial, std::abs(s.real()));
        continue;
      }
      const std::size_t conj_idx = std::size_t{na} * q + field.neg(b);
      if (idx < conj_idx) {
        const double r = std::abs(s);
        values.push_back(r);
        values.push_back(-r);
        max_nontrivial = std::max(max_nontrivial, r);
      }
    }
  }
  SpectralMeasure m;
  m.family = set.family();
  m.q = q;
  m.set_size = set.size();
  m.loops = loop_count(CayleySumGraph(set));
  m.trivial = static_cast<double>(set.size());
  m.max_nontrivial_abs = max_nontrivial;
  m.tolerance = 1e-7 * std::sqrt(static_cast<double>(q));
  m.atoms = group_values(std::move(values), m.tolerance);
  return m;
}

SpectralMeasure spectrum_from_characters(const SumSet& set) { return spectrum_from_sums(set, character_sums(set)); }

namespace {

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(Errc::BadParameter, "eigensolver failed to converge");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> spectrum_dense_oracle(const CayleySumGraph& graph) {
  const std::uint64_t n = graph.vertex_count();
  if (n > kMaxDenseOracle) throw Error(Errc::SizeExceeded, "dense oracle limited to 4096 vertices");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (graph.adjacent(x, y)) a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = 1.0;
    }
  }
  return symmetric_eigenvalues(a);
}

std::vector<double> dense_eigenvalues(const AdjacencyList& graph) {
  const std::uint64_t n = graph.vertex_count();
  if (n > kMaxDenseOracle) throw Error(Errc::SizeExceeded, "dense eigensolver limited to 4096 vertices");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Vertex x = 0; x < n; ++x) {
    for (auto y : graph.neighbors(x)) a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = 1.0;
  }
  return symmetric_eigenvalues(a);
}

SpectralMeasure measure_from_eigenvalues(std::vector<double> values, double tolerance) {
  SpectralMeasure m;
  if (values.empty()) return m;
  std::sort(values.begin(), values.end());
  m.trivial = values.back();
  double max_other = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) max_other = std::max(max_other, std::abs(values[i]));
  m.max_nontrivial_abs = max_other;
  m.tolerance = tolerance;
  m.atoms = group_values(std::move(values), tolerance);
  return m;
}

SpectralMeasure rescaled_spectrum(const SpectralMeasure& measure, double divisor, bool exclude_trivial) {
  if (!(divisor > 0)) throw Error(Errc::BadParameter, "divisor must be positive");
  SpectralMeasure out = measure;
  for (auto& a : out.atoms) a.value /= divisor;
  out.trivial /= divisor;
  out.scale *= divisor;
  out.max_nontrivial_abs /= divisor;
  out.tolerance /= divisor;
  if (exclude_trivial && out.trivial_included) {
    auto best = out.atoms.end();
    double gap = out.tolerance;
    for (auto it = out.atoms.begin(); it != out.atoms.end(); ++it) {
      const double d = std::abs(it->value - out.trivial);
      if (d <= gap) {
        gap = d;
        best = it;
      }
    }
    if (best != out.atoms.end()) {
      if (--best->multiplicity == 0) out.atoms.erase(best);
      out.trivial_included = false;
    }
  }
  return out;
}

SpectralMeasure normalized_spectrum(const SpectralMeasure& measure, bool exclude_trivial) {
  if (measure.set_size == 0) throw Error(Errc::EmptySet, "cannot normalize the spectrum of an empty set");
  return rescaled_spectrum(measure, std::sqrt(static_cast<double>(measure.set_size)), exclude_trivial);
}

MultiplicityReport multiplicity_by_product_class(const SpectralMeasure& measure, const SumSet& set) {
  if (set.family() != Family::Kloosterman) throw Error(Errc::WrongFamily, "product classes need the Kloosterman set");
  const auto& field = set.field();
  const std::uint64_t q = field.size();
  if (q % 2 == 0) throw Error(Errc::BadParameter, "product-class report needs odd q");
  const auto table = kloosterman_table(field);
  MultiplicityReport report;
  report.q = q;
  bool ok = true;
  for (Elem m = 1; m < q; ++m) {
    ProductClassEntry e;
    e.m = m;
    e.value = std::abs(table.at(m, 1)) / measure.scale;
    e.plus = measure.multiplicity_of(e.value);
    e.minus = measure.multiplicity_of(-e.value);
    if (e.value <= measure.tolerance) {
      ok = ok && e.plus >= q - 1;
    } else {
      ok = ok && e.plus >= (q - 1) / 2 && e.minus >= (q - 1) / 2 && e.plus + e.minus >= q - 1;
    }
    report.classes.push_back(e);
  }
  const double unit = 1.0 / measure.scale;
  report.boundary_plus = measure.multiplicity_of(unit);
  report.boundary_minus = measure.multiplicity_of(-unit);
  ok = ok && report.boundary_plus >= q - 1 && report.boundary_minus >= q - 1;
  report.bounds_hold = ok;
  return report;
}

DelocalizationResult delocalization_check(const SumSet& set) {
  const auto& field = set.field();
  const std::uint32_t q = field.size();
  if (q > kMaxDelocalizationField) throw Error(Errc::SizeExceeded, "delocalization check limited to q <= 64");
  const std::uint32_t p = field.characteristic();
  const std::size_t n = std::size_t{q} * q;
  const auto sums = character_sums(set);

  // trace(a u) for all a, u, so chi_{a,b}(u,v) = e((T[a][u] + T[b][v]) / p).
  std::vector<std::uint32_t> tr(std::size_t{q} * q);
  for (Elem a = 0; a < q; ++a)
    for (Elem u = 0; u < q; ++u) tr[std::size_t{a} * q + u] = field.trace(field.mul(a, u));
  auto chi = [&](Elem a, Elem b, std::size_t x) {
    const std::size_t u = x / q, v = x % q;
    return field.root_of_unity((tr[std::size_t{a} * q + u] + tr[std::size_t{b} * q + v]) % p);
  };

  DelocalizationResult result;
  result.bound = std::sqrt(2.0 / static_cast<double>(n));
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::complex<double>> vec(n);

  auto residual = [&](double lambda) {
    double worst = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const GroupPoint px{static_cast<Elem>(x / q), static_cast<Elem>(x % q)};
      std::complex<double> acc{};
      for (const auto& s : set.points()) {
        const GroupPoint y = point_sub(field, s, px);
        acc += vec[std::size_t{y.u} * q + y.v];
      }
      worst = std::max(worst, std::abs(acc - lambda * vec[x]));
    }
    return worst;
  };

  auto record = [&](double lambda) {
    double sup = 0.0;
    for (const auto& z : vec) sup = std::max(sup, std::abs(z));
    result.max_sup_norm = std::max(result.max_sup_norm, sup);
    if (result.residual_vectors < 64) {
      result.max_residual = std::max(result.max_residual, residual(lambda));
      ++result.residual_vectors;
    }
  };

  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      const std::size_t idx = std::size_t{a} * q + b;
      const Elem na = field.neg(a), nb = field.neg(b);
      const std::size_t conj_idx = std::size_t{na} * q + nb;
      const auto s = sums[idx];
      if (idx == conj_idx) {
        for (std::size_t x = 0; x < n; ++x) vec[x] = chi(a, b, x) * inv_sqrt_n;
        record(s.real());
        continue;
      }
      if (idx > conj_idx) continue;
      const double r = std::abs(s);
      if (r <= 1e-9) {
        for (std::size_t x = 0; x < n; ++x) vec[x] = chi(a, b, x) * inv_sqrt_n;
        record(0.0);
        for (std::size_t x = 0; x < n; ++x) vec[x] = chi(na, nb, x) * inv_sqrt_n;
        record(0.0);
        continue;
      }
      // A chi = S(chi) conj(chi), so chi +- e^{i arg S} conj(chi) has eigenvalue +-|S|.
      const auto phase = s / r;
      const double norm = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
      for (const int sign : {1, -1}) {
        for (std::size_t x = 0; x < n; ++x) vec[x] = (chi(a, b, x) + double(sign) * phase * chi(na, nb, x)) * norm;
        record(sign * r);
      }
    }
  }
  result.passes = result.max_sup_norm <= result.bound + 1e-9 && result.max_residual <= 1e-8 * static_cast<double>(q);
  return result;
}

}  // namespace sumgraph
