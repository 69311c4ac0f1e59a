#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumgraph/sidon.hpp"

namespace sumgraph {

/// Vertex id: u * q + v for the group point (u, v).
using Vertex = std::uint64_t;

class SimpleGraphView;

/// Cayley sum graph: x ~ y iff x + y lies in S. Adjacency is implicit; the
/// neighbours of x are {s - x : s in S}, with a loop at x when 2x is in S.
class CayleySumGraph {
 public:
  static constexpr std::uint64_t kMaxMaterialized = std::uint64_t{1} << 22;

  explicit CayleySumGraph(SumSet set);

  const SumSet& sum_set() const noexcept { return set_; }
  const FiniteField& field() const noexcept { return set_.field(); }
  std::uint64_t vertex_count() const noexcept { return q_ * q_; }
  /// Row sum of the 0/1 adjacency matrix; a loop contributes 1.
  std::uint64_t degree() const noexcept { return set_.size(); }

  Vertex vertex(GroupPoint x) const noexcept { return x.u * q_ + x.v; }
  GroupPoint point(Vertex x) const noexcept {
    return {static_cast<Elem>(x / q_), static_cast<Elem>(x % q_)};
  }

  bool adjacent(Vertex x, Vertex y) const;

  /// Visits every y with x + y in S, including x itself when 2x is in S.
  template <class F>
  void for_each_neighbor(Vertex x, F&& f) const {
    const GroupPoint px = point(x);
    const auto& field = set_.field();
    for (const auto& s : set_.points()) f(vertex(point_sub(field, s, px)));
  }

  SimpleGraphView simple() const;

 private:
  SumSet set_;
  std::uint64_t q_;
};

CayleySumGraph build(SumSet set);

/// Loop-deleted view of a Cayley sum graph. Holds a reference: the graph
/// must outlive the view.
class SimpleGraphView {
 public:
  explicit SimpleGraphView(const CayleySumGraph& graph) : graph_(&graph) {}

  const CayleySumGraph& graph() const noexcept { return *graph_; }
  std::uint64_t vertex_count() const noexcept { return graph_->vertex_count(); }
  bool adjacent(Vertex x, Vertex y) const { return x != y && graph_->adjacent(x, y); }

  template <class F>
  void for_each_neighbor(Vertex x, F&& f) const {
    graph_->for_each_neighbor(x, [&](Vertex y) {
      if (y != x) f(y);
    });
  }

 private:
  const CayleySumGraph* graph_;
};

/// Simple undirected graph in compressed adjacency form.
class AdjacencyList {
 public:
  AdjacencyList() = default;
  /// Edges are unordered pairs; loops and duplicates are rejected.
  AdjacencyList(std::uint64_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::uint64_t vertex_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return targets_.size() / 2; }
  std::span<const std::uint32_t> neighbors(Vertex x) const noexcept {
    return {targets_.data() + offsets_[x], targets_.data() + offsets_[x + 1]};
  }
  bool adjacent(Vertex x, Vertex y) const;

  template <class F>
  void for_each_neighbor(Vertex x, F&& f) const {
    for (auto y : neighbors(x)) f(Vertex{y});
  }

 private:
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
};

/// Erdos-Renyi G(n, p_edge) sample, reproducible from (n, p_edge, seed).
struct RandomGraph {
  std::uint64_t n = 0;
  double p_edge = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  AdjacencyList adjacency;
};

inline constexpr std::uint64_t kMaxRandomGraph = 4096;

RandomGraph sample_er(std::uint64_t n, double p_edge, std::uint64_t seed);

/// |{x : 2x in S}|.
std::uint64_t loop_count(const CayleySumGraph& graph);

std::uint64_t codegree(const SimpleGraphView& graph, Vertex u, Vertex v);
std::uint64_t codegree(const AdjacencyList& graph, Vertex u, Vertex v);

struct CodegreeStats {
  std::uint64_t c4 = 0;
  std::uint64_t k23 = 0;
  std::uint64_t max_codegree = 0;
};

/// One pass over all vertex pairs at distance two: sum_{u<v} C(c,2)/2 four-cycles
/// and sum_{u<v} C(c,3) copies of K_{2,3}. Cost is sum of squared degrees;
/// throws SizeExceeded above kMaxCodegreeWork.
inline constexpr std::uint64_t kMaxCodegreeWork = std::uint64_t{1} << 33;

CodegreeStats codegree_stats(const SimpleGraphView& graph);
CodegreeStats codegree_stats(const AdjacencyList& graph);

std::uint64_t count_C4(const SimpleGraphView& graph);
std::uint64_t count_C4(const AdjacencyList& graph);
std::uint64_t count_K23(const SimpleGraphView& graph);
std::uint64_t count_K23(const AdjacencyList& graph);

enum class Pattern { C4, K23 };

inline constexpr std::uint64_t kMaxBruteForce = 60;

/// Exhaustive subgraph count (unlabeled copies) for graphs with at most 60 vertices.
std::uint64_t brute_force_count(const SimpleGraphView& graph, Pattern pattern);
std::uint64_t brute_force_count(const AdjacencyList& graph, Pattern pattern);

enum class ComponentKind { Complete, CompleteBipartite, Other };

struct Component {
  std::uint64_t size = 0;
  std::uint64_t edges = 0;
  ComponentKind kind = ComponentKind::Other;
  /// Side sizes for complete bipartite components (left >= right).
  std::uint64_t left = 0;
  std::uint64_t right = 0;

  std::string label() const;
};

struct StructureReport {
  std::vector<Component> components;  // sorted by size, largest first

  /// e.g. "1×K_{3,3}+1×K_3".
  std::string summary() const;
};

inline constexpr std::uint64_t kMaxStructureVertices = std::uint64_t{1} << 20;

StructureReport structure_report(const SimpleGraphView& graph);
StructureReport structure_report(const AdjacencyList& graph);

/// n * lambda / d.
double hoffman_bound(double n, double degree, double lambda_max_nontrivial);

/// Randomized greedy maximal independent set.
std::vector<Vertex> greedy_independent_set(const SimpleGraphView& graph, std::uint64_t seed);
std::vector<Vertex> greedy_independent_set(const AdjacencyList& graph, std::uint64_t seed);

/// Edge list "u,v" (u <= v, loops included) of the full Cayley sum graph.
std::vector<std::pair<Vertex, Vertex>> edge_list(const CayleySumGraph& graph);

/// Loop-deleted view materialized as an adjacency list (q^2 <= 2^22).
AdjacencyList materialize(const SimpleGraphView& graph);

}  // namespace sumgraph
