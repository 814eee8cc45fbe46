#pragma once

// Independent reference implementations used by the tests. Deliberately
// naive: exhaustive subset enumeration and plain adjacency matrices.

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "rggclique/graph.hpp"

namespace rgc_oracle {

using rggclique::Edge;
using rggclique::Graph;
using rggclique::Vertex;

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

inline std::vector<std::uint32_t> masks(const Graph& g) {
  std::vector<std::uint32_t> m(g.vertex_count(), 0);
  for (auto e : g.edges()) {
    m[e.u] |= 1u << e.v;
    m[e.v] |= 1u << e.u;
  }
  return m;
}

inline bool is_clique(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  for (std::uint32_t rest = set; rest; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    if ((set & ~(1u << v) & ~adj[v]) != 0) return false;
  }
  return true;
}

// Largest clique size over all vertex subsets; n <= 20.
inline std::size_t max_clique_size(const Graph& g) {
  const auto adj = masks(g);
  const std::uint32_t full = 1u << g.vertex_count();
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < full; ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size > best && is_clique(adj, s)) best = size;
  }
  return best;
}

// Largest clique containing both endpoints of edge (u, v); n <= 20.
inline std::size_t edge_clique_size(const Graph& g, Vertex u, Vertex v) {
  const auto adj = masks(g);
  const std::uint32_t need = (1u << u) | (1u << v);
  const std::uint32_t full = 1u << g.vertex_count();
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < full; ++s) {
    if ((s & need) != need) continue;
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size > best && is_clique(adj, s)) best = size;
  }
  return best;
}

}  // namespace rgc_oracle
