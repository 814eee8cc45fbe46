#include "rggclique/graph.hpp"

#include <algorithm>

#include "rggclique/errors.hpp"

namespace rggclique {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw invalid_argument("self-loops are not allowed");
    if (e.u >= n_ || e.v >= n_) throw invalid_argument("edge endpoint out of range");
    e = make_edge(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adj_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so every adjacency list comes out sorted.
  for (const auto& e : edges_) adj_[fill[e.u]++] = e.v;
  for (const auto& e : edges_) adj_[fill[e.v]++] = e.u;
  for (std::size_t i = 0; i < n_; ++i) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }

  rows_.assign(n_, Bitset(n_));
  for (const auto& e : edges_) {
    rows_[e.u].set(e.v);
    rows_[e.v].set(e.u);
  }
}

std::size_t Graph::edge_index(Vertex u, Vertex v) const noexcept {
  const Edge key = make_edge(u, v);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep) {
  std::vector<Edge> kept;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (keep[i]) kept.push_back(edges[i]);
  }
  return Graph(g.vertex_count(), std::move(kept));
}

}  // namespace rggclique
