#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "rggclique/graph.hpp"
#include "rggclique/graphgen.hpp"

namespace rggclique {

inline constexpr std::uint64_t kDefaultCliqueBudget = 10'000'000;
inline constexpr std::uint64_t kUnlimitedBudget =
    std::numeric_limits<std::uint64_t>::max();

// Exact maximum clique, returned sorted ascending. Branch and bound over
// vertices in degeneracy order with greedy-coloring bounds; the result is a
// deterministic function of the graph. Throws BudgetExceeded after `budget`
// search nodes.
std::vector<Vertex> max_clique(const Graph& g,
                               std::uint64_t budget = kDefaultCliqueBudget);

// Maximum clique of the subgraph induced by `vertices`.
std::vector<Vertex> max_clique_within(const Graph& g,
                                      std::span<const Vertex> vertices,
                                      std::uint64_t budget = kDefaultCliqueBudget);

// Size of the largest clique of g containing the edge (u, v):
// 2 + maximum clique of the subgraph induced by N(u) ∩ N(v).
std::size_t edge_clique_number(const Graph& g, Vertex u, Vertex v,
                               std::uint64_t budget = kDefaultCliqueBudget);

// edge_clique_number(g, u, v) >= tau, answered by a search that stops at the
// first clique of size tau - 2 in the common neighborhood.
bool edge_clique_at_least(const Graph& g, Vertex u, Vertex v, std::size_t tau,
                          std::uint64_t budget = kUnlimitedBudget);

struct ClassStats {
  std::size_t count = 0;
  std::optional<std::size_t> min;
  std::optional<std::size_t> max;
  std::optional<double> mean;
};

struct EdgeOmega {
  Edge edge;
  EdgeLabel label = EdgeLabel::good;
  std::optional<std::size_t> omega;
};

enum class StatsMode {
  // Exact omega for every observed edge.
  full,
  // Exact omega for every bad / indeterminate edge, and only the exact
  // minimum over good edges (found with threshold searches). This is what
  // the good/bad gap needs, at a fraction of the cost on dense graphs.
  extremes,
};

struct CliqueStats {
  StatsMode mode = StatsMode::full;
  std::vector<EdgeOmega> per_edge;  // canonical (u, v) order
  std::array<ClassStats, 3> by_class;

  const ClassStats& of(EdgeLabel label) const {
    return by_class[static_cast<std::size_t>(label)];
  }
};

struct CliqueStatsOptions {
  StatsMode mode = StatsMode::full;
  std::uint64_t budget = kDefaultCliqueBudget;  // per edge
  unsigned workers = 1;
};

// Per-edge omega on the observed graph plus per-class aggregates. Output is
// independent of the worker count. A BudgetExceeded error names the lowest
// offending edge.
CliqueStats all_edge_clique_numbers(const PerturbedGraph& pg,
                                    const std::vector<EdgeLabel>& labels,
                                    const CliqueStatsOptions& options = {});

// Same, for an arbitrary graph with caller-supplied per-edge labels.
CliqueStats all_edge_clique_numbers(const Graph& g,
                                    const std::vector<EdgeLabel>& labels,
                                    const CliqueStatsOptions& options = {});

// CSV `u,v,label,omega` in (u, v) order; omega is `na` where not computed.
void write_clique_csv(std::ostream& out, const CliqueStats& stats);
// JSON `{good: {min,max,mean,count}, bad: ..., indeterminate: ...}`.
nlohmann::ordered_json clique_summary_json(const CliqueStats& stats);
void write_clique_summary_json(std::ostream& out, const CliqueStats& stats);

}  // namespace rggclique
