#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rggclique/errors.hpp"
#include "rggclique/filtering.hpp"

using namespace rggclique;

namespace {

bool same_edges(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() &&
         std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

void validate(FilterMethod method, double threshold) {
  FilterConfig{method, threshold}.validate();
}

}  // namespace

TEST_CASE("filter config validation") {
  CHECK_NOTHROW(validate(FilterMethod::clique, 2));
  CHECK_THROWS_AS(validate(FilterMethod::clique, 1), Error);
  CHECK_THROWS_AS(validate(FilterMethod::clique, 3.5), Error);
  CHECK_NOTHROW(validate(FilterMethod::jaccard, 0.0));
  CHECK_THROWS_AS(validate(FilterMethod::jaccard, 1.2), Error);
  CHECK(parse_filter_method("jaccard") == FilterMethod::jaccard);
  CHECK(to_string(FilterMethod::clique) == "clique");
  CHECK_THROWS_AS(parse_filter_method("louvain"), Error);
}

TEST_CASE("tau 2 keeps everything, tau 3 keeps triangle edges") {
  std::mt19937_64 rng(1);
  const auto g = rgc_oracle::random_graph(40, 0.1, rng);
  const auto f2 = clique_filter(g, 2);
  CHECK(same_edges(f2.filtered, g));
  const auto f3 = clique_filter(g, 3);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto e = g.edges()[i];
    bool triangle = false;
    for (Vertex w = 0; w < 40; ++w) triangle = triangle || (g.has_edge(e.u, w) && g.has_edge(e.v, w));
    REQUIRE(f3.kept[i] == triangle);
  }
}

TEST_CASE("clique filter matches exhaustive edge cliques") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 13;
    const auto g = rgc_oracle::random_graph(n, 0.6, rng);
    const std::size_t tau = 2 + rng() % 5;
    for (bool exact : {false, true}) {
      const auto fg = clique_filter(g, tau, {exact, kDefaultCliqueBudget, 2});
      REQUIRE(fg.kept.size() == g.edge_count());
      CHECK(fg.scores.size() == (exact ? g.edge_count() : 0));
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto e = g.edges()[i];
        const auto omega = rgc_oracle::edge_clique_size(g, e.u, e.v);
        REQUIRE(fg.kept[i] == (omega >= tau));
        if (exact) REQUIRE(fg.scores[i] == static_cast<double>(omega));
      }
      CHECK(fg.filtered.edge_count() == fg.kept_count());
    }
  }
}

TEST_CASE("clique filter is monotone in tau and idempotent") {
  std::mt19937_64 rng(3);
  const auto g = rgc_oracle::random_graph(80, 0.3, rng);
  std::size_t previous = g.edge_count() + 1;
  for (std::size_t tau = 2; tau <= 8; ++tau) {
    const auto fg = clique_filter(g, tau);
    CHECK(fg.kept_count() <= previous);
    previous = fg.kept_count();
    CHECK(same_edges(clique_filter(fg.filtered, tau).filtered, fg.filtered));
  }
}

TEST_CASE("jaccard examples") {
  const Graph path(3, {{0, 1}, {1, 2}});
  CHECK(jaccard_index(path, 0, 1) == 0.0);
  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(jaccard_index(k4, 0, 1) == 1.0);
  // u = 0, v = 1, shared neighbor 2, private neighbor 3 of u, isolated 4.
  const Graph five(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  CHECK(jaccard_index(five, 0, 1) == doctest::Approx(0.5));
  CHECK(jaccard_index(Graph(2, {{0, 1}}), 0, 1) == 0.0);
  CHECK_THROWS_AS(jaccard_index(five, 3, 4), Error);
}

TEST_CASE("jaccard filter thresholds and a non-idempotent case") {
  std::mt19937_64 rng(4);
  const auto g = rgc_oracle::random_graph(60, 0.2, rng);
  const auto fg = jaccard_filter(g, 0.1);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto e = g.edges()[i];
    REQUIRE(fg.scores[i] == jaccard_index(g, e.u, e.v));
    REQUIRE(fg.kept[i] == (fg.scores[i] >= 0.1));
  }
  // Removing edges changes neighborhoods, so a second pass can differ.
  bool differs = false;
  for (int trial = 0; trial < 50 && !differs; ++trial) {
    const auto h = rgc_oracle::random_graph(30, 0.3, rng);
    const auto once = jaccard_filter(h, 0.2);
    differs = !same_edges(jaccard_filter(once.filtered, 0.2).filtered, once.filtered);
  }
  CHECK(differs);
}

TEST_CASE("filtered graph file round trip") {
  auto truth = std::make_shared<const GeometricGraph>(
      build_rgg(sample_points(MetricSpace::make(SpaceKind::flat_torus, 2), 60, 8), 0.2));
  const auto pg = perturb(truth, 0.2, 0.05, 12);
  for (const auto& fg : {apply_filter(pg, {FilterMethod::clique, 4}),
                         apply_filter(pg, {FilterMethod::clique, 4}, {true, kDefaultCliqueBudget, 1}),
                         apply_filter(pg, {FilterMethod::jaccard, 0.3})}) {
    CHECK(fg.seed == 12);
    std::stringstream buf;
    write_filtered_graph(buf, fg);
    const std::string text = buf.str();
    const auto file = read_filtered_graph(buf);
    CHECK(file.config.method == fg.config.method);
    CHECK(file.config.threshold == fg.config.threshold);
    CHECK(file.seed == 12);
    CHECK(file.n == 60);
    CHECK(file.kept == fg.kept);
    REQUIRE(file.edges.size() == fg.observed.edge_count());
    for (std::size_t i = 0; i < file.edges.size(); ++i) {
      CHECK(file.edges[i] == fg.observed.edges()[i]);
      if (fg.scores.empty()) {
        CHECK_FALSE(file.scores[i].has_value());
      } else {
        CHECK(*file.scores[i] == fg.scores[i]);
      }
    }
  }
  std::stringstream junk("# method=clique threshold=3 seed=1 n=3\n0 1 maybe na\n");
  CHECK_THROWS_AS(read_filtered_graph(junk), Error);
}
