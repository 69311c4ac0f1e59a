#pragma once

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>

#include "sumgraph/cayley.hpp"
#include "sumgraph/dist.hpp"
#include "sumgraph/expsum.hpp"
#include "sumgraph/ffield.hpp"
#include "sumgraph/sidon.hpp"
#include "sumgraph/spectrum.hpp"

namespace sumgraph {

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// {"p", "n", "modulus"}.
nlohmann::json to_json(const FiniteField& field);
/// {"field", "family", "points": [[u, v], ...]}.
nlohmann::json to_json(const SumSet& set);

struct GraphSummary {
  std::uint64_t n = 0;
  std::uint64_t degree = 0;
  std::uint64_t loops = 0;
  std::optional<std::uint64_t> c4;
  std::optional<std::uint64_t> k23;
  std::optional<StructureReport> structure;
};

/// {"n", "degree", "loops", "c4", "k23", "components"}; absent counts are null.
nlohmann::json to_json(const GraphSummary& summary);
/// {"family", "q", "set_size", "loops", "trivial", "scale", "trivial_included", "distinct"}.
nlohmann::json spectrum_metadata(const SpectralMeasure& measure);

void write_edge_list_csv(std::ostream& out, const CayleySumGraph& graph);
void write_edge_list_csv(std::ostream& out, const AdjacencyList& graph);
/// "a,b,re,im" over all q^2 index pairs.
void write_table_csv(std::ostream& out, const SumTable& table);
/// "m,re,im" for the reduced column m -> S(m, 1).
void write_column_csv(std::ostream& out, const SumTable& table);
/// "eigenvalue,multiplicity" for raw spectra, "normalized,multiplicity" otherwise.
void write_spectrum_csv(std::ostream& out, const SpectralMeasure& measure);
/// "value,weight".
void write_measure_csv(std::ostream& out, const EmpiricalMeasure& measure);
/// "bin_left,bin_right,count".
void write_histogram_csv(std::ostream& out, const Histogram& hist);

}  // namespace sumgraph
