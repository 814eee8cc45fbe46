#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "rggclique/graph.hpp"
#include "rggclique/metric_space.hpp"

namespace rggclique {

// Hidden r-neighborhood graph: (u, v) is an edge iff u != v and d(u, v) <= r.
struct GeometricGraph {
  PointCloud cloud;
  double r;
  Graph graph;
};

GeometricGraph build_rgg(PointCloud cloud, double r);

enum class Provenance : std::uint8_t { kept_original, inserted };

enum class EdgeLabel : std::uint8_t { good, bad, indeterminate };

inline constexpr std::array<EdgeLabel, 3> kAllLabels = {
    EdgeLabel::good, EdgeLabel::bad, EdgeLabel::indeterminate};

std::string_view to_string(Provenance p);
std::string_view to_string(EdgeLabel label);
Provenance parse_provenance(std::string_view text);
EdgeLabel parse_label(std::string_view text);

// Observed graph after independent p-deletion / q-insertion of the truth.
// provenance[i] describes observed.edges()[i].
struct PerturbedGraph {
  std::shared_ptr<const GeometricGraph> truth;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  Graph observed;
  std::vector<Provenance> provenance;

  std::size_t vertex_count() const noexcept { return observed.vertex_count(); }
};

// Each pair {u, v} consumes exactly one uniform from the counter-based stream
// keyed by (seed, u, v): truth edges are dropped when it falls below p,
// non-edges are inserted when it falls below q.
PerturbedGraph perturb(std::shared_ptr<const GeometricGraph> truth, double p,
                       double q, std::uint64_t seed);

// Labels aligned with pg.observed.edges(). Neighborhoods are taken in the
// truth graph and exclude the vertex itself.
std::vector<EdgeLabel> classify_edges(const PerturbedGraph& pg);

// Single-edge classification against a truth graph.
EdgeLabel classify_edge(const GeometricGraph& truth, Vertex u, Vertex v);

struct LabelCounts {
  std::size_t good = 0;
  std::size_t bad = 0;
  std::size_t indeterminate = 0;
};
LabelCounts count_labels(const std::vector<EdgeLabel>& labels);

// Edge-list text file: header comments with n, r, p, q, seed, then one
// `u v <provenance> <label>` line per observed edge in (u, v) order.
void write_edge_list(std::ostream& out, const PerturbedGraph& pg,
                     const std::vector<EdgeLabel>& labels);

struct EdgeListFile {
  std::size_t n = 0;
  double r = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  std::vector<Edge> edges;
  std::vector<Provenance> provenance;
  // Empty when the file carries `-` placeholders instead of labels.
  std::vector<EdgeLabel> labels;
};

EdgeListFile read_edge_list(std::istream& in);

// Rebuilds a PerturbedGraph from a parsed edge list and the truth it was
// drawn from; rejects files whose provenance disagrees with the truth.
PerturbedGraph perturbed_from_edge_list(
    std::shared_ptr<const GeometricGraph> truth, const EdgeListFile& file);

}  // namespace rggclique
