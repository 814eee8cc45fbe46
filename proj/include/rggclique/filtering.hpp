#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "rggclique/cliques.hpp"
#include "rggclique/graph.hpp"
#include "rggclique/graphgen.hpp"

namespace rggclique {

enum class FilterMethod { clique, jaccard };

std::string_view to_string(FilterMethod method);
FilterMethod parse_filter_method(std::string_view text);

struct FilterConfig {
  FilterMethod method = FilterMethod::clique;
  // Integer tau >= 2 for clique filtering, a value in [0, 1] for jaccard.
  double threshold = 2.0;

  // Throws invalid_argument when the threshold is outside the method's domain.
  void validate() const;
};

// Decision outcome per observed edge, aligned with observed.edges().
struct FilteredGraph {
  FilterConfig config;
  std::uint64_t seed = 0;  // seed of the perturbation that produced the input
  Graph observed;
  std::vector<bool> kept;
  // omega (clique, when scored) or the Jaccard index; empty when not scored.
  std::vector<double> scores;
  Graph filtered;

  std::size_t kept_count() const;
};

struct CliqueFilterOptions {
  bool exact_scores = false;
  std::uint64_t budget = kDefaultCliqueBudget;  // per edge
  unsigned workers = 1;
};

// Keeps an edge iff its clique number in the observed graph is at least tau.
FilteredGraph clique_filter(const PerturbedGraph& pg, std::size_t tau,
                            const CliqueFilterOptions& options = {});
FilteredGraph clique_filter(const Graph& g, std::size_t tau,
                            const CliqueFilterOptions& options = {});

// |N(u) ∩ N(v)| / |N(u) ∪ N(v) \ {u, v}|, and 0 when the union is empty.
double jaccard_index(const Graph& g, Vertex u, Vertex v);

FilteredGraph jaccard_filter(const PerturbedGraph& pg, double threshold);
FilteredGraph jaccard_filter(const Graph& g, double threshold);

// Dispatches on config.method.
FilteredGraph apply_filter(const PerturbedGraph& pg, const FilterConfig& config,
                           const CliqueFilterOptions& options = {});

// `u v kept|removed score` per observed edge in (u, v) order, after header
// comments with method, threshold, and seed. Score is `na` when absent.
void write_filtered_graph(std::ostream& out, const FilteredGraph& fg);

struct FilteredGraphFile {
  FilterConfig config;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<bool> kept;
  std::vector<std::optional<double>> scores;
};
FilteredGraphFile read_filtered_graph(std::istream& in);

}  // namespace rggclique
