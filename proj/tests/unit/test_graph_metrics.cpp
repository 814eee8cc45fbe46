#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rggclique/errors.hpp"
#include "rggclique/graph_metrics.hpp"

using namespace rggclique;

namespace {

constexpr auto kInf = DistanceMatrix::kUnreachable;

DistanceMatrix floyd_warshall(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (auto e : g.edges()) d[e.u * n + e.v] = d[e.v * n + e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  DistanceMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.set(i, j, static_cast<std::uint32_t>(std::min<std::uint64_t>(d[i * n + j], kInf)));
  return out;
}

}  // namespace

TEST_CASE("path and components") {
  const Graph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const auto d = all_pairs_distances(path);
  CHECK(d.at(0, 4) == 4);
  CHECK(d.at(4, 0) == 4);
  CHECK(d.at(1, 3) == 2);
  const Graph split(4, {{0, 1}, {2, 3}});
  const auto s = all_pairs_distances(split);
  CHECK(s.at(0, 1) == 1);
  CHECK(s.at(0, 2) == kInf);
  CHECK(s.at(3, 3) == 0);
}

TEST_CASE("bfs agrees with floyd-warshall across densities and workers") {
  std::mt19937_64 rng(9);
  for (double p : {0.02, 0.05, 0.2, 0.6}) {
    const auto g = rgc_oracle::random_graph(90, p, rng);
    const auto oracle = floyd_warshall(g);
    for (unsigned w : {1u, 4u}) CHECK(all_pairs_distances(g, w) == oracle);
  }
}

TEST_CASE("approximation factor examples") {
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const Graph chord(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
  const auto dc4 = all_pairs_distances(c4);
  const auto dch = all_pairs_distances(chord);
  CHECK(approximation_factor(dc4, dc4).alpha == 1.0);
  const auto r = approximation_factor(dc4, dch);
  CHECK(r.alpha == 2.0);
  CHECK(r.worst_pair == Edge{0, 2});
  CHECK(approximation_factor(dch, dc4).alpha == 2.0);

  DistanceMatrix a(3), b(3);
  a.set(0, 1, 1);
  a.set(0, 2, 3);
  a.set(1, 2, 2);
  b.set(0, 1, 2);
  b.set(0, 2, 6);
  b.set(1, 2, 4);
  CHECK(approximation_factor(a, b).alpha == 2.0);

  const Graph split(4, {{0, 1}, {2, 3}});
  const auto m = approximation_factor(all_pairs_distances(split), dc4);
  CHECK(m.connectivity_mismatch);
  CHECK(std::isinf(m.alpha));
  CHECK_THROWS_AS(approximation_factor(DistanceMatrix(3), DistanceMatrix(4)), Error);
}

TEST_CASE("approximation factor is symmetric") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto g = rgc_oracle::random_graph(30, 0.3, rng);
    const auto h = rgc_oracle::random_graph(30, 0.3, rng);
    const auto dg = all_pairs_distances(g), dh = all_pairs_distances(h);
    const auto x = approximation_factor(dg, dh), y = approximation_factor(dh, dg);
    CHECK(x.alpha == y.alpha);
    CHECK(x.alpha >= 1.0);
  }
}

TEST_CASE("recovery in trivial regimes") {
  auto truth = std::make_shared<const GeometricGraph>(
      build_rgg(sample_points(MetricSpace::make(SpaceKind::flat_torus, 2), 80, 21), 0.2));
  const auto pg = perturb(truth, 0.0, 0.0, 1);
  const auto labels = classify_edges(pg);
  const auto fg = clique_filter(pg, 2);
  const auto rep = recovery_stretch(*truth, fg, labels);
  CHECK(rep.approx.alpha == 1.0);
  CHECK(rep.e1);
  CHECK(rep.e2);
  CHECK(rep.e3);
  CHECK(rep.good_removed == 0);
  CHECK(rep.bad_kept == 0);

  // A threshold above every clique number empties the filtered graph.
  const auto none = clique_filter(pg, 1000);
  const auto empty = recovery_stretch(*truth, none, labels, 2);
  CHECK(empty.approx.connectivity_mismatch);
  CHECK_FALSE(empty.e2);
  CHECK(empty.e3);
  CHECK(empty.good_removed == truth->graph.edge_count());
}

TEST_CASE("recovery event bookkeeping on a perturbed instance") {
  auto truth = std::make_shared<const GeometricGraph>(
      build_rgg(sample_points(MetricSpace::make(SpaceKind::flat_torus, 1), 200, 5), 0.05));
  const auto pg = perturb(truth, 0.2, 0.02, 7);
  const auto labels = classify_edges(pg);
  const auto fg = clique_filter(pg, 5);
  const auto rep = recovery_stretch(*truth, fg, labels);
  std::size_t good_removed = 0, bad_kept = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto e = pg.observed.edges()[i];
    if (truth->graph.has_edge(e.u, e.v) && !fg.kept[i]) ++good_removed;
    if (labels[i] == EdgeLabel::bad && fg.kept[i]) ++bad_kept;
  }
  CHECK(rep.good_removed == good_removed);
  CHECK(rep.bad_kept == bad_kept);
  CHECK(rep.e2 == (good_removed == 0));
  CHECK(rep.e3 == (bad_kept == 0));
  const auto expect = approximation_factor(all_pairs_distances(fg.filtered),
                                           all_pairs_distances(truth->graph));
  CHECK(rep.approx.alpha == expect.alpha);
}

TEST_CASE("distance csv round trip") {
  const Graph split(5, {{0, 1}, {1, 2}, {3, 4}});
  const auto d = all_pairs_distances(split);
  std::stringstream buf;
  write_distance_csv(buf, d);
  CHECK(buf.str().find("0,3,inf") != std::string::npos);
  CHECK(read_distance_csv(buf) == d);
  std::stringstream junk("i,j,dist\n0,1,x\n");
  CHECK_THROWS_AS(read_distance_csv(junk), Error);
}
