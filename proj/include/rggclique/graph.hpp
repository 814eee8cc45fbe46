#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rggclique/bitset.hpp"

namespace rggclique {

using Vertex = std::uint32_t;

// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Immutable simple undirected graph. Keeps sorted adjacency lists and one
// adjacency bitset row per vertex.
class Graph {
 public:
  Graph() = default;
  // Edges may arrive in any order and orientation; self-loops are rejected and
  // duplicates collapse.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Canonical (u, v)-sorted edge list.
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex u) const noexcept {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }
  std::size_t degree(Vertex u) const noexcept {
    return offsets_[u + 1] - offsets_[u];
  }
  const Bitset& row(Vertex u) const noexcept { return rows_[u]; }

  bool has_edge(Vertex u, Vertex v) const noexcept {
    return u != v && rows_[u].test(v);
  }

  // Index of (u, v) in edges(), or edge_count() when absent.
  std::size_t edge_index(Vertex u, Vertex v) const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<Bitset> rows_;
};

// Graph on the same vertex set containing the edges of `g` selected by mask.
Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep);

}  // namespace rggclique
