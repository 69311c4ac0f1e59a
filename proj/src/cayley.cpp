#include "sumgraph/cayley.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "sumgraph/error.hpp"
#include "sumgraph/rng.hpp"

namespace sumgraph {

CayleySumGraph::CayleySumGraph(SumSet set) : set_(std::move(set)), q_(set_.field().size()) {}

bool CayleySumGraph::adjacent(Vertex x, Vertex y) const {
  return set_.contains(point_add(set_.field(), point(x), point(y)));
}

SimpleGraphView CayleySumGraph::simple() const { return SimpleGraphView(*this); }

CayleySumGraph build(SumSet set) { return CayleySumGraph(std::move(set)); }

AdjacencyList::AdjacencyList(std::uint64_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges)
    : n_(n) {
  std::vector<std::uint64_t> deg(n, 0);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw Error(Errc::BadParameter, "edge endpoint out of range");
    if (a == b) throw Error(Errc::BadParameter, "loops are not allowed in a simple graph");
    ++deg[a];
    ++deg[b];
  }
  offsets_.assign(n + 1, 0);
  for (std::uint64_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  targets_.resize(offsets_[n]);
  std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    targets_[fill[a]++] = b;
    targets_[fill[b]++] = a;
  }
  for (std::uint64_t v = 0; v < n; ++v) {
    auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) throw Error(Errc::BadParameter, "duplicate edge");
  }
}

bool AdjacencyList::adjacent(Vertex x, Vertex y) const {
  auto nb = neighbors(x);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(y));
}

RandomGraph sample_er(std::uint64_t n, double p_edge, std::uint64_t seed) {
  if (n > kMaxRandomGraph) throw Error(Errc::SizeExceeded, "random graphs limited to 4096 vertices");
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) throw Error(Errc::BadParameter, "edge probability must lie in [0, 1]");
  RandomGraph g;
  g.n = n;
  g.p_edge = p_edge;
  g.seed = seed;
  std::uint64_t pair_index = 0;
  Rng rng(0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b, ++pair_index) {
      if (pair_index % Rng::kBlock == 0) rng = Rng::substream(seed, pair_index / Rng::kBlock);
      if (rng.uniform() < p_edge) g.edges.emplace_back(a, b);
    }
  }
  g.adjacency = AdjacencyList(n, g.edges);
  return g;
}

std::uint64_t loop_count(const CayleySumGraph& graph) {
  const auto& field = graph.field();
  if (field.characteristic() != 2) return graph.sum_set().size();
  // In characteristic 2 every x has 2x = 0.
  return graph.sum_set().contains(GroupPoint{0, 0}) ? graph.vertex_count() : 0;
}

namespace {

template <class G>
std::uint64_t codegree_impl(const G& g, Vertex u, Vertex v) {
  std::vector<Vertex> nu;
  g.for_each_neighbor(u, [&](Vertex w) { nu.push_back(w); });
  std::sort(nu.begin(), nu.end());
  std::uint64_t count = 0;
  g.for_each_neighbor(v, [&](Vertex w) {
    if (w != u && std::binary_search(nu.begin(), nu.end(), w)) ++count;
  });
  return count;
}

template <class G>
CodegreeStats codegree_stats_impl(const G& g) {
  const std::uint64_t n = g.vertex_count();
  std::uint64_t work = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t d = 0;
    g.for_each_neighbor(v, [&](Vertex) { ++d; });
    work += d * d;
    if (work > kMaxCodegreeWork) throw Error(Errc::SizeExceeded, "codegree scan exceeds the work budget");
  }

  CodegreeStats stats;
  std::vector<std::uint32_t> count(n, 0);
  std::vector<Vertex> touched;
  std::uint64_t c4_twice = 0;
  for (Vertex u = 0; u < n; ++u) {
    g.for_each_neighbor(u, [&](Vertex w) {
      g.for_each_neighbor(w, [&](Vertex v) {
        if (v <= u) return;
        if (count[v]++ == 0) touched.push_back(v);
      });
    });
    for (Vertex v : touched) {
      const std::uint64_t c = count[v];
      stats.max_codegree = std::max(stats.max_codegree, c);
      c4_twice += c * (c - 1) / 2;
      stats.k23 += c * (c - 1) * (c - 2) / 6;
      count[v] = 0;
    }
    touched.clear();
  }
  stats.c4 = c4_twice / 2;
  return stats;
}

template <class G>
std::uint64_t brute_force_impl(const G& g, Pattern pattern) {
  const std::uint64_t n = g.vertex_count();
  if (n > kMaxBruteForce) throw Error(Errc::SizeExceeded, "brute-force counting limited to 60 vertices");
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (Vertex v = 0; v < n; ++v) g.for_each_neighbor(v, [&](Vertex w) { adj[v][w] = 1; });

  std::uint64_t count = 0;
  if (pattern == Pattern::C4) {
    // Ordered closed walks a-b-c-d-a on distinct vertices; each 4-cycle has 8 labelings.
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b) {
        if (b == a || !adj[a][b]) continue;
        for (Vertex c = 0; c < n; ++c) {
          if (c == a || c == b || !adj[b][c]) continue;
          for (Vertex d = 0; d < n; ++d) {
            if (d == a || d == b || d == c) continue;
            if (adj[c][d] && adj[d][a]) ++count;
          }
        }
      }
    return count / 8;
  }
  // K_{2,3}: the 2-side {a < b} and 3-side {c < d < e} are distinguishable by size.
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = 0; c < n; ++c) {
        if (c == a || c == b || !adj[a][c] || !adj[b][c]) continue;
        for (Vertex d = c + 1; d < n; ++d) {
          if (d == a || d == b || !adj[a][d] || !adj[b][d]) continue;
          for (Vertex e = d + 1; e < n; ++e) {
            if (e == a || e == b) continue;
            if (adj[a][e] && adj[b][e]) ++count;
          }
        }
      }
  return count;
}

template <class G>
StructureReport structure_impl(const G& g) {
  const std::uint64_t n = g.vertex_count();
  if (n > kMaxStructureVertices) throw Error(Errc::SizeExceeded, "structure report limited to 2^20 vertices");
  std::vector<std::int8_t> color(n, -1);
  StructureReport report;
  std::vector<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] != -1) continue;
    queue.assign(1, root);
    color[root] = 0;
    std::uint64_t degree_sum = 0;
    std::uint64_t side0 = 0;
    bool bipartite = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      if (color[x] == 0) ++side0;
      g.for_each_neighbor(x, [&](Vertex y) {
        ++degree_sum;
        if (color[y] == -1) {
          color[y] = static_cast<std::int8_t>(1 - color[x]);
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          bipartite = false;
        }
      });
    }
    Component c;
    c.size = queue.size();
    c.edges = degree_sum / 2;
    if (c.edges == c.size * (c.size - 1) / 2) {
      c.kind = ComponentKind::Complete;
    } else if (bipartite && c.edges == side0 * (c.size - side0)) {
      c.kind = ComponentKind::CompleteBipartite;
      c.left = std::max(side0, c.size - side0);
      c.right = std::min(side0, c.size - side0);
    }
    report.components.push_back(c);
  }
  std::stable_sort(report.components.begin(), report.components.end(),
                   [](const Component& a, const Component& b) { return a.size > b.size; });
  return report;
}

template <class G>
std::vector<Vertex> greedy_impl(const G& g, std::uint64_t seed) {
  const std::uint64_t n = g.vertex_count();
  if (n > kMaxStructureVertices) throw Error(Errc::SizeExceeded, "independent set search limited to 2^20 vertices");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  Rng rng(splitmix64(seed));
  for (std::uint64_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<char> blocked(n, 0);
  std::vector<Vertex> chosen;
  for (Vertex v : order) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    blocked[v] = 1;
    g.for_each_neighbor(v, [&](Vertex w) { blocked[w] = 1; });
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

std::uint64_t codegree(const SimpleGraphView& graph, Vertex u, Vertex v) { return codegree_impl(graph, u, v); }
std::uint64_t codegree(const AdjacencyList& graph, Vertex u, Vertex v) { return codegree_impl(graph, u, v); }

CodegreeStats codegree_stats(const SimpleGraphView& graph) { return codegree_stats_impl(graph); }
CodegreeStats codegree_stats(const AdjacencyList& graph) { return codegree_stats_impl(graph); }

std::uint64_t count_C4(const SimpleGraphView& graph) { return codegree_stats(graph).c4; }
std::uint64_t count_C4(const AdjacencyList& graph) { return codegree_stats(graph).c4; }
std::uint64_t count_K23(const SimpleGraphView& graph) { return codegree_stats(graph).k23; }
std::uint64_t count_K23(const AdjacencyList& graph) { return codegree_stats(graph).k23; }

std::uint64_t brute_force_count(const SimpleGraphView& graph, Pattern pattern) {
  return brute_force_impl(graph, pattern);
}
std::uint64_t brute_force_count(const AdjacencyList& graph, Pattern pattern) {
  return brute_force_impl(graph, pattern);
}

std::string Component::label() const {
  switch (kind) {
    case ComponentKind::Complete: return "K_" + std::to_string(size);
    case ComponentKind::CompleteBipartite:
      return "K_{" + std::to_string(left) + "," + std::to_string(right) + "}";
    case ComponentKind::Other: return "other(" + std::to_string(size) + ")";
  }
  return "other";
}

std::string StructureReport::summary() const {
  std::vector<std::pair<std::string, std::uint64_t>> groups;
  for (const auto& c : components) {
    const auto label = c.label();
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == label; });
    if (it == groups.end()) {
      groups.emplace_back(label, 1);
    } else {
      ++it->second;
    }
  }
  std::string out;
  for (const auto& [label, count] : groups) {
    if (!out.empty()) out += "+";
    out += std::to_string(count) + "×" + label;
  }
  return out;
}

StructureReport structure_report(const SimpleGraphView& graph) { return structure_impl(graph); }
StructureReport structure_report(const AdjacencyList& graph) { return structure_impl(graph); }

double hoffman_bound(double n, double degree, double lambda_max_nontrivial) {
  if (!(degree > 0)) throw Error(Errc::BadParameter, "degree must be positive");
  return n * lambda_max_nontrivial / degree;
}

std::vector<Vertex> greedy_independent_set(const SimpleGraphView& graph, std::uint64_t seed) {
  return greedy_impl(graph, seed);
}
std::vector<Vertex> greedy_independent_set(const AdjacencyList& graph, std::uint64_t seed) {
  return greedy_impl(graph, seed);
}

std::vector<std::pair<Vertex, Vertex>> edge_list(const CayleySumGraph& graph) {
  if (graph.vertex_count() > CayleySumGraph::kMaxMaterialized) {
    throw Error(Errc::SizeExceeded, "edge export needs q^2 <= 2^22");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex x = 0; x < graph.vertex_count(); ++x) {
    graph.for_each_neighbor(x, [&](Vertex y) {
      if (x <= y) edges.emplace_back(x, y);
    });
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

AdjacencyList materialize(const SimpleGraphView& graph) {
  const std::uint64_t n = graph.vertex_count();
  if (n > CayleySumGraph::kMaxMaterialized) throw Error(Errc::SizeExceeded, "materialization needs q^2 <= 2^22");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (Vertex x = 0; x < n; ++x) {
    graph.for_each_neighbor(x, [&](Vertex y) {
      if (x < y) edges.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
    });
  }
  return AdjacencyList(n, edges);
}

}  // namespace sumgraph
