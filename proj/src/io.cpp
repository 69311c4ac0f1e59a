#include "sumgraph/io.hpp"

#include <array>
#include <charconv>

namespace sumgraph {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

nlohmann::json to_json(const FiniteField& field) {
  return {{"p", field.characteristic()}, {"n", field.degree()}, {"modulus", field.modulus()}};
}

nlohmann::json to_json(const SumSet& set) {
  auto points = nlohmann::json::array();
  for (const auto& s : set.points()) points.push_back({s.u, s.v});
  nlohmann::json j{{"field", to_json(set.field())}, {"family", family_name(set.family())}, {"points", std::move(points)}};
  if (set.family() == Family::PartialHyperbola) j["t"] = set.t();
  return j;
}

nlohmann::json to_json(const GraphSummary& summary) {
  nlohmann::json j{{"n", summary.n}, {"degree", summary.degree}, {"loops", summary.loops}};
  j["c4"] = summary.c4 ? nlohmann::json(*summary.c4) : nlohmann::json(nullptr);
  j["k23"] = summary.k23 ? nlohmann::json(*summary.k23) : nlohmann::json(nullptr);
  auto components = nlohmann::json::array();
  if (summary.structure) {
    for (const auto& c : summary.structure->components) {
      components.push_back({{"label", c.label()}, {"size", c.size}, {"edges", c.edges}});
    }
    j["structure"] = summary.structure->summary();
  }
  j["components"] = std::move(components);
  return j;
}

nlohmann::json spectrum_metadata(const SpectralMeasure& measure) {
  return {{"family", family_name(measure.family)},
          {"q", measure.q},
          {"set_size", measure.set_size},
          {"loops", measure.loops},
          {"trivial", measure.trivial},
          {"scale", measure.scale},
          {"trivial_included", measure.trivial_included},
          {"distinct", measure.distinct_count()},
          {"max_nontrivial_abs", measure.max_nontrivial_abs}};
}

void write_edge_list_csv(std::ostream& out, const CayleySumGraph& graph) {
  out << "u,v\n";
  for (const auto& [u, v] : edge_list(graph)) out << u << ',' << v << '\n';
}

void write_edge_list_csv(std::ostream& out, const AdjacencyList& graph) {
  out << "u,v\n";
  for (Vertex u = 0; u < graph.vertex_count(); ++u) {
    for (auto v : graph.neighbors(u)) {
      if (u < v) out << u << ',' << v << '\n';
    }
  }
}

void write_table_csv(std::ostream& out, const SumTable& table) {
  out << "a,b,re,im\n";
  const std::uint32_t q = table.field().size();
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      const auto v = table.at(a, b);
      out << a << ',' << b << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

void write_column_csv(std::ostream& out, const SumTable& table) {
  out << "m,re,im\n";
  const std::uint32_t q = table.field().size();
  for (Elem m = 0; m < q; ++m) {
    const auto v = table.at(m, 1);
    out << m << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const SpectralMeasure& measure) {
  out << (measure.scale == 1.0 ? "eigenvalue" : "normalized") << ",multiplicity\n";
  for (const auto& a : measure.atoms) out << format_double(a.value) << ',' << a.multiplicity << '\n';
}

void write_measure_csv(std::ostream& out, const EmpiricalMeasure& measure) {
  out << "value,weight\n";
  for (std::size_t i = 0; i < measure.atoms().size(); ++i) {
    out << format_double(measure.atoms()[i].value) << ',' << format_double(measure.weight(i)) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
  out << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << format_double(hist.bin_left(i)) << ',' << format_double(hist.bin_right(i)) << ',' << hist.counts[i] << '\n';
  }
}

}  // namespace sumgraph
