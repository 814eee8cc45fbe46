#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rggclique/bitset.hpp"
#include "rggclique/graph.hpp"

namespace rggclique::detail {

// Dense copy of an induced subgraph whose local index order is the search
// order: the reverse of a smallest-last (degeneracy) elimination, so index 0
// is the last vertex eliminated. Ties in the elimination pick the lowest
// global id first.
class OrderedSubgraph {
 public:
  // `vertices` must be sorted ascending.
  OrderedSubgraph(const Graph& g, std::span<const Vertex> vertices);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t words() const noexcept { return words_; }
  Vertex global_id(std::size_t local) const noexcept { return ids_[local]; }

  // Local index of a global vertex, or size() if absent.
  std::size_t local_index(Vertex global) const noexcept;

  const std::uint64_t* row(std::size_t local) const noexcept {
    return rows_.data() + local * words_;
  }

  // Neighborhood of `local` as a Bitset over local indices.
  Bitset row_bitset(std::size_t local) const;
  Bitset all() const;

 private:
  std::vector<Vertex> ids_;            // local -> global
  std::vector<Vertex> sorted_ids_;     // ascending globals
  std::vector<std::uint32_t> sorted_to_local_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Branch and bound maximum-clique search (greedy sequential coloring bound,
// branching on the highest color class first) over an OrderedSubgraph.
class CliqueSearch {
 public:
  CliqueSearch(const OrderedSubgraph& h, std::uint64_t budget);

  // Largest clique inside `candidates`, as local indices. Returns an empty
  // vector if no clique larger than `floor` exists.
  std::vector<std::uint32_t> maximum(const Bitset& candidates,
                                     std::size_t floor = 0);

  // True iff `candidates` contains a clique of `target` vertices.
  bool exists(const Bitset& candidates, std::size_t target);

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool greedy_reaches(const Bitset& candidates, std::size_t target);
  void run(const Bitset& candidates);
  void expand(std::size_t depth);

  const OrderedSubgraph& h_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t words_;
  std::size_t best_size_ = 0;
  std::size_t stop_at_ = 0;
  bool done_ = false;
  std::vector<std::uint32_t> current_;
  std::vector<std::uint32_t> best_;
  std::vector<std::uint64_t> candidates_;  // one block of words per depth
  std::vector<std::uint64_t> uncolored_;
  std::vector<std::uint64_t> color_class_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<std::vector<std::uint32_t>> color_;
};

}  // namespace rggclique::detail
