#include <cmath>
#include <memory>
#include <sstream>

#include "doctest.h"
#include "rggclique/errors.hpp"
#include "rggclique/graphgen.hpp"
#include "rggclique/metric_space.hpp"

using namespace rggclique;

namespace {

PointCloud cloud_of(SpaceKind kind, std::size_t dim, std::vector<double> coords) {
  return PointCloud(MetricSpace::make(kind, dim), std::move(coords), 0);
}

std::shared_ptr<const GeometricGraph> shared_rgg(PointCloud cloud, double r) {
  return std::make_shared<const GeometricGraph>(build_rgg(std::move(cloud), r));
}

// Direct reading of the labeling rule with explicit distance loops.
EdgeLabel oracle_label(const GeometricGraph& g, Vertex u, Vertex v) {
  const auto& c = g.cloud;
  if (c.distance(u, v) <= g.r) return EdgeLabel::good;
  for (Vertex x = 0; x < c.size(); ++x) {
    if (x == u || c.distance(x, u) > g.r) continue;
    for (Vertex y = 0; y < c.size(); ++y) {
      if (y == v || c.distance(y, v) > g.r) continue;
      if (c.distance(x, y) <= g.r) return EdgeLabel::indeterminate;
    }
  }
  return EdgeLabel::bad;
}

}  // namespace

TEST_CASE("rgg boundary is inclusive") {
  const auto g = build_rgg(cloud_of(SpaceKind::unit_cube, 2, {0, 0, 0.5, 0, 0, 0.9}), 0.5);
  REQUIRE(g.graph.edge_count() == 1);
  CHECK(g.graph.edges()[0] == Edge{0, 1});
  const auto t = build_rgg(cloud_of(SpaceKind::flat_torus, 2, {0.05, 0, 0.95, 0}), 0.2);
  CHECK(t.graph.has_edge(0, 1));
  CHECK_THROWS_AS(build_rgg(cloud_of(SpaceKind::unit_cube, 1, {0.1}), 0.0), Error);
}

TEST_CASE("rgg edges match a pairwise recheck") {
  for (auto kind : {SpaceKind::unit_cube, SpaceKind::flat_torus}) {
    const auto cloud = sample_points(MetricSpace::make(kind, 2), 50, 1);
    const auto g = build_rgg(cloud, 0.2);
    std::size_t count = 0;
    for (Vertex u = 0; u < 50; ++u) {
      for (Vertex v = u + 1; v < 50; ++v) {
        const bool edge = cloud.distance(u, v) <= 0.2;
        count += edge;
        REQUIRE(g.graph.has_edge(u, v) == edge);
      }
    }
    CHECK(g.graph.edge_count() == count);
  }
}

TEST_CASE("perturb extremes and provenance") {
  auto truth = shared_rgg(sample_points(MetricSpace::make(SpaceKind::flat_torus, 2), 60, 2), 0.2);
  const auto same = perturb(truth, 0.0, 0.0, 5);
  CHECK(std::equal(same.observed.edges().begin(), same.observed.edges().end(),
                   truth->graph.edges().begin(), truth->graph.edges().end()));
  for (auto p : same.provenance) CHECK(p == Provenance::kept_original);

  const auto flip = perturb(truth, 1.0, 1.0, 5);
  CHECK(flip.observed.edge_count() == 60 * 59 / 2 - truth->graph.edge_count());
  for (std::size_t i = 0; i < flip.observed.edge_count(); ++i) {
    const auto e = flip.observed.edges()[i];
    CHECK_FALSE(truth->graph.has_edge(e.u, e.v));
    CHECK(flip.provenance[i] == Provenance::inserted);
  }
  CHECK_THROWS_AS(perturb(truth, -0.1, 0.0, 1), Error);
  CHECK_THROWS_AS(perturb(truth, 0.0, 1.5, 1), Error);
}

TEST_CASE("perturb rates match binomial expectations") {
  auto truth = shared_rgg(sample_points(MetricSpace::make(SpaceKind::flat_torus, 2), 500, 3), 0.1);
  const double e_truth = static_cast<double>(truth->graph.edge_count());
  const double e_non = 500.0 * 499.0 / 2.0 - e_truth;
  double deleted = 0, inserted = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto pg = perturb(truth, 0.3, 0.01, 1000 + t);
    std::size_t kept = 0, ins = 0;
    for (std::size_t i = 0; i < pg.provenance.size(); ++i) {
      const auto e = pg.observed.edges()[i];
      const bool in_truth = truth->graph.has_edge(e.u, e.v);
      REQUIRE(in_truth == (pg.provenance[i] == Provenance::kept_original));
      (in_truth ? kept : ins)++;
    }
    deleted += e_truth - static_cast<double>(kept);
    inserted += static_cast<double>(ins);
  }
  const double del_frac = deleted / (200 * e_truth);
  const double ins_frac = inserted / (200 * e_non);
  CHECK(std::abs(del_frac - 0.3) < 3 * std::sqrt(0.3 * 0.7 / (200 * e_truth)));
  CHECK(std::abs(ins_frac - 0.01) < 3 * std::sqrt(0.01 * 0.99 / (200 * e_non)));
}

TEST_CASE("perturb is deterministic per seed") {
  auto truth = shared_rgg(sample_points(MetricSpace::make(SpaceKind::unit_cube, 2), 80, 4), 0.2);
  const auto a = perturb(truth, 0.2, 0.05, 9);
  const auto b = perturb(truth, 0.2, 0.05, 9);
  CHECK(std::equal(a.observed.edges().begin(), a.observed.edges().end(),
                   b.observed.edges().begin(), b.observed.edges().end()));
  const auto c = perturb(truth, 0.2, 0.05, 10);
  CHECK(c.observed.edge_count() != a.observed.edge_count());
}

TEST_CASE("classification examples") {
  // Cube-1 with r = 0.1: u = 0.10 and v = 0.35 are 2.5r apart, x = 0.18 is a
  // neighbor of u, y = 0.27 a neighbor of v, and d(x, y) = 0.09 <= r.
  // w = 0.95 and z = 0.60 are isolated in G*.
  auto truth = shared_rgg(cloud_of(SpaceKind::unit_cube, 1, {0.10, 0.35, 0.18, 0.27, 0.95, 0.60}), 0.1);
  CHECK(classify_edge(*truth, 0, 2) == EdgeLabel::good);
  CHECK(classify_edge(*truth, 0, 1) == EdgeLabel::indeterminate);
  CHECK(classify_edge(*truth, 4, 5) == EdgeLabel::bad);
  CHECK(classify_edge(*truth, 0, 4) == EdgeLabel::bad);  // d > 3r
}

TEST_CASE("classification agrees with the direct oracle and the 3r rule") {
  for (auto kind : {SpaceKind::unit_cube, SpaceKind::flat_torus}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto truth = shared_rgg(sample_points(MetricSpace::make(kind, 2), 70, 50 + seed), 0.12);
      const auto pg = perturb(truth, 0.3, 0.2, seed);
      const auto labels = classify_edges(pg);
      REQUIRE(labels.size() == pg.observed.edge_count());
      const auto counts = count_labels(labels);
      CHECK(counts.good + counts.bad + counts.indeterminate == labels.size());
      for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto e = pg.observed.edges()[i];
        REQUIRE(labels[i] == oracle_label(*truth, e.u, e.v));
        if (truth->cloud.distance(e.u, e.v) > 3 * truth->r) REQUIRE(labels[i] == EdgeLabel::bad);
        if (pg.provenance[i] == Provenance::kept_original) REQUIRE(labels[i] == EdgeLabel::good);
      }
    }
  }
}

TEST_CASE("degree and occupancy claims under Assumption-A") {
  // torus-2, n = 1000, sn = 100: s = 0.1 >= 13 ln(1000)/1000 = 0.0898.
  const auto space = MetricSpace::make(SpaceKind::flat_torus, 2);
  const std::size_t n = 1000;
  const double r = radius_for_target_sn(space, n, 100);
  const auto mass = ball_mass_bounds(space, r);
  REQUIRE(assumption_a_holds(mass, n));
  const double sn = mass.s * n;
  std::size_t degree_ok = 0, occupancy_ok = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto g = build_rgg(sample_points(space, n, 7000 + t), r);
    bool deg = true, occ = true;
    for (Vertex u = 0; u < n; ++u) {
      deg = deg && static_cast<double>(g.graph.degree(u)) >= sn / 4;
      std::size_t inside = 0;
      for (Vertex x = 0; x < n; ++x) inside += g.cloud.distance(u, x) <= r / 2;
      occ = occ && static_cast<double>(inside) <= 3 * mass.rho * sn;
    }
    degree_ok += deg;
    occupancy_ok += occ;
  }
  CHECK(degree_ok >= 95);
  CHECK(occupancy_ok >= 95);
}

TEST_CASE("edge list round trip and validation") {
  auto truth = shared_rgg(sample_points(MetricSpace::make(SpaceKind::flat_torus, 2), 40, 6), 0.25);
  const auto pg = perturb(truth, 0.2, 0.1, 3);
  const auto labels = classify_edges(pg);
  std::stringstream buf;
  write_edge_list(buf, pg, labels);
  const std::string text = buf.str();
  const auto file = read_edge_list(buf);
  CHECK(file.n == 40);
  CHECK(file.r == truth->r);
  CHECK(file.p == 0.2);
  CHECK(file.q == 0.1);
  CHECK(file.seed == 3);
  CHECK(file.labels == labels);
  const auto back = perturbed_from_edge_list(truth, file);
  CHECK(back.provenance == pg.provenance);
  std::stringstream again;
  write_edge_list(again, back, labels);
  CHECK(again.str() == text);

  // Placeholder labels are accepted, mixing is not.
  std::stringstream unlabeled;
  write_edge_list(unlabeled, pg, {});
  CHECK(read_edge_list(unlabeled).labels.empty());
  std::stringstream mixed("# n=3 r=0.5 p=0 q=0 seed=1\n0 1 kept-original good\n0 2 inserted -\n");
  CHECK_THROWS_AS(read_edge_list(mixed), Error);
  std::stringstream unsorted("# n=3 r=0.5 p=0 q=0 seed=1\n0 2 inserted -\n0 1 inserted -\n");
  CHECK_THROWS_AS(read_edge_list(unsorted), Error);

  // Claiming a truth edge was inserted contradicts the truth graph.
  auto forged = file;
  forged.provenance[0] =
      forged.provenance[0] == Provenance::inserted ? Provenance::kept_original : Provenance::inserted;
  CHECK_THROWS_AS(perturbed_from_edge_list(truth, forged), Error);
}
