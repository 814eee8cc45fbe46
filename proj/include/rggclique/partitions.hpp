#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rggclique/graph.hpp"
#include "rggclique/graphgen.hpp"
#include "rggclique/metric_space.hpp"

namespace rggclique {

// Centers of one delta-packing: pairwise distances all exceed 2 delta.
using Packing = std::vector<Vertex>;

struct PackingFamily {
  double delta = 0.0;
  std::vector<Packing> packings;
  // Max degree of the conflict graph (d <= 2 delta) over the subset.
  std::size_t conflict_max_degree = 0;
};

// Greedy coloring of the conflict graph in ascending id order; each color
// class is a packing and every subset vertex is a center of exactly one.
PackingFamily packing_cover(const PointCloud& cloud,
                            std::span<const Vertex> subset, double delta);

struct WspPart {
  std::vector<std::vector<Vertex>> cliques;  // each sorted ascending
  std::vector<Vertex> centers;               // centers[j] owns cliques[j]
};

struct WspFamily {
  double r = 0.0;
  std::vector<WspPart> parts;
  // Conflict-graph max degrees at the r/2 and r levels.
  std::size_t level1_max_degree = 0;
  std::size_t level2_max_degree = 0;
};

// Two-level construction: r/2-packings of the cloud, then r-packings of
// each level-one class. A level-two class yields one part whose cliques are
// the r/2-balls around its centers; a point within reach of several centers
// joins the lowest-indexed one. Centers whose ball ends up empty still keep
// their own singleton, since a center always lies in its own ball.
WspFamily build_wsp(const PointCloud& cloud, double r);

struct WspReport {
  bool valid = true;
  std::optional<std::string> violation;  // first failure, if any
  // Pairs of cliques in one part whose Hausdorff distance exceeds r while
  // their minimum distance does not. Reported, never a failure on its own.
  std::size_t hausdorff_only_pairs = 0;
  double min_separation = 0.0;  // smallest inter-clique distance seen
};

// Checks cover, containment of each clique in the r/2-ball of its center,
// disjointness within parts, min inter-clique distance > r, completeness of
// each clique in the truth graph, and absence of truth edges between cliques
// of one part.
WspReport validate_wsp(const WspFamily& wsp, const PointCloud& cloud, double r,
                       const GeometricGraph& truth);

// JSON `{"parts": [{"cliques": [[ids]], "centers": [ids]}]}`.
void write_wsp_json(std::ostream& out, const WspFamily& wsp);
WspFamily read_wsp_json(std::istream& in);

}  // namespace rggclique
