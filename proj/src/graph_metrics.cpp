#include "rggclique/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "parallel.hpp"
#include "rggclique/errors.hpp"

namespace rggclique {

namespace {

// Frontier-by-frontier BFS on adjacency bitsets; on dense graphs this beats
// list traversal since each level costs O(frontier * n / 64).
void bfs_bitset(const Graph& g, Vertex source, std::uint32_t* out) {
  const std::size_t n = g.vertex_count();
  Bitset unvisited(n);
  for (std::size_t i = 0; i < n; ++i) unvisited.set(i);
  unvisited.reset(source);
  Bitset frontier(n);
  frontier.set(source);
  Bitset next(n);
  std::uint32_t depth = 0;
  while (!frontier.none()) {
    ++depth;
    next.clear();
    frontier.for_each([&](std::size_t x) { next |= g.row(static_cast<Vertex>(x)); });
    next &= unvisited;
    unvisited.subtract(next);
    next.for_each([&](std::size_t y) { out[y] = depth; });
    std::swap(frontier, next);
  }
}

void bfs_lists(const Graph& g, Vertex source, std::uint32_t* out,
               std::vector<Vertex>& queue) {
  queue.clear();
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (out[y] == DistanceMatrix::kUnreachable) {
        out[y] = out[x] + 1;
        queue.push_back(y);
      }
    }
  }
}

}  // namespace

DistanceMatrix all_pairs_distances(const Graph& g, unsigned workers) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix d(n);
  if (n == 0) return d;
  const bool dense = g.edge_count() * 2 > n * (n / 64 + 1) * 4;
  detail::parallel_for(n, workers, [&](std::size_t s) {
    std::uint32_t* out = d.row(s);
    if (dense) {
      bfs_bitset(g, static_cast<Vertex>(s), out);
    } else {
      thread_local std::vector<Vertex> queue;
      bfs_lists(g, static_cast<Vertex>(s), out, queue);
    }
  });
  return d;
}

ApproxReport approximation_factor(const DistanceMatrix& d1, const DistanceMatrix& d2) {
  if (d1.size() != d2.size()) throw invalid_argument("distance matrices differ in size");
  ApproxReport report;
  const std::size_t n = d1.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t* a = d1.row(i);
    const std::uint32_t* b = d2.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool fa = a[j] != DistanceMatrix::kUnreachable;
      const bool fb = b[j] != DistanceMatrix::kUnreachable;
      if (fa != fb) {
        if (!report.connectivity_mismatch) {
          report.connectivity_mismatch = true;
          report.alpha = std::numeric_limits<double>::infinity();
          report.worst_pair = Edge{static_cast<Vertex>(i), static_cast<Vertex>(j)};
        }
        continue;
      }
      if (!fa || report.connectivity_mismatch || a[j] == 0 || b[j] == 0) continue;
      const double x = static_cast<double>(a[j]);
      const double y = static_cast<double>(b[j]);
      const double ratio = std::max(x / y, y / x);
      if (ratio > report.alpha) {
        report.alpha = ratio;
        report.worst_pair = Edge{static_cast<Vertex>(i), static_cast<Vertex>(j)};
      }
    }
  }
  return report;
}

RecoveryReport recovery_stretch(const GeometricGraph& truth, const FilteredGraph& fg,
                                const std::vector<EdgeLabel>& labels, unsigned workers) {
  const Graph& observed = fg.observed;
  const std::size_t n = truth.graph.vertex_count();
  if (observed.vertex_count() != n) {
    throw invalid_argument("filtered graph and truth differ in vertex count");
  }
  const auto edges = observed.edges();
  if (labels.size() != edges.size() || fg.kept.size() != edges.size()) {
    throw invalid_argument("labels do not match the observed edge list");
  }

  RecoveryReport report;
  std::vector<bool> in_truth(edges.size());
  report.e2 = true;
  report.e3 = true;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    in_truth[i] = truth.graph.has_edge(edges[i].u, edges[i].v);
    if (in_truth[i] && !fg.kept[i]) {
      report.e2 = false;
    }
    if (labels[i] == EdgeLabel::good && !fg.kept[i]) ++report.good_removed;
    if (labels[i] == EdgeLabel::bad && fg.kept[i]) {
      report.e3 = false;
      ++report.bad_kept;
    }
  }

  const auto d_truth = all_pairs_distances(truth.graph, workers);
  const auto d_filtered = all_pairs_distances(fg.filtered, workers);
  report.approx = approximation_factor(d_filtered, d_truth);

  const auto d_common = all_pairs_distances(edge_subgraph(observed, in_truth), workers);
  report.e1 = true;
  for (std::size_t i = 0; i < n && report.e1; ++i) {
    const std::uint32_t* c = d_common.row(i);
    const std::uint32_t* t = d_truth.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t[j] == DistanceMatrix::kUnreachable) continue;
      if (c[j] == DistanceMatrix::kUnreachable ||
          static_cast<std::uint64_t>(c[j]) > 2ull * t[j]) {
        report.e1 = false;
        break;
      }
    }
  }
  return report;
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  out << "i,j,dist\n";
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out << i << ',' << j << ',';
      if (d.at(i, j) == DistanceMatrix::kUnreachable) {
        out << "inf";
      } else {
        out << d.at(i, j);
      }
      out << '\n';
    }
  }
}

DistanceMatrix read_distance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "i,j,dist") {
    throw Error(ErrorKind::parse, "distance CSV must start with 'i,j,dist'");
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> rows;
  std::size_t n = 1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw Error(ErrorKind::parse, "distance CSV line " + std::to_string(line_no));
    }
    try {
      const std::size_t i = std::stoull(a);
      const std::size_t j = std::stoull(b);
      if (i >= j) throw std::invalid_argument("order");
      const std::uint32_t d =
          c == "inf" ? DistanceMatrix::kUnreachable : static_cast<std::uint32_t>(std::stoul(c));
      rows.emplace_back(i, j, d);
      n = std::max(n, j + 1);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::parse, "distance CSV line " + std::to_string(line_no));
    }
  }
  DistanceMatrix d(rows.empty() ? 0 : n);
  if (rows.size() != n * (n - 1) / 2 && !rows.empty()) {
    throw Error(ErrorKind::parse, "distance CSV does not list every pair");
  }
  for (const auto& [i, j, v] : rows) d.set(i, j, v);
  return d;
}

}  // namespace rggclique
