#include <cmath>
#include <random>

#include "block_model.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "rggclique/bounds.hpp"
#include "rggclique/errors.hpp"

using namespace rggclique;
using doctest::Approx;

namespace {

double uv(std::vector<std::size_t> blocks, std::size_t k, double q, double p = 0.0) {
  return expected_uv_cliques({std::move(blocks), k, q, p}).value;
}

}  // namespace

TEST_CASE("assumption-a threshold") {
  CHECK(assumption_a_s_min(1000) == Approx(0.08981).epsilon(1e-4));
  CHECK(assumption_a_s_min(1e6) == Approx(1.796e-4).epsilon(1e-3));
  CHECK(assumption_a_s_min(std::exp(1.0)) == Approx(13 / std::exp(1.0)));
  CHECK(assumption_a_s_min(std::exp(1.0)) > 1.0);
}

TEST_CASE("good-edge tau bound") {
  CHECK(tau_good_edge_bound(0.5, 256.0 / 1000, 1000) == Approx(16.0 / 3));
  CHECK(tau_good_edge_bound(1 - std::exp(-1.0), std::exp(3.0) / 10, 10) == Approx(2.0));
  CHECK(tau_good_edge_bound(0.9, 0.1, 1000) == Approx(4.0 / 3));
  CHECK_THROWS_AS(tau_good_edge_bound(0.0, 0.1, 1000), Error);
  CHECK_THROWS_AS(tau_good_edge_bound(1.0, 0.1, 1000), Error);
  CHECK_THROWS_AS(tau_good_edge_bound(0.5, 0.0005, 1000), Error);
  // Decreasing in p, increasing in sn.
  CHECK(tau_good_edge_bound(0.3, 0.1, 1000) > tau_good_edge_bound(0.6, 0.1, 1000));
  CHECK(tau_good_edge_bound(0.5, 0.2, 1000) > tau_good_edge_bound(0.5, 0.1, 1000));
}

TEST_CASE("q thresholds") {
  ModelParams m;
  m.n = 1000;
  m.s = 0.1;
  m.K = 10;
  CHECK(q_threshold(m, false) == Approx(0.05012).epsilon(1e-3));
  m.p = 0.75;
  CHECK(q_threshold(m, true) == Approx(0.10024).epsilon(1e-3));
  CHECK(q_threshold(m, true) == Approx(2 * q_threshold(m, false)));
  m.K = 100;  // K = sn
  m.p = 0;
  CHECK(q_threshold(m, false) == Approx(std::pow(1e-3, 0.01)));
  m.c1 = 0.5;
  CHECK(q_threshold(m, false) == 0.5);
  m.p = 1.0;
  CHECK_THROWS_AS(q_threshold(m, true), Error);
}

TEST_CASE("expected uv cliques closed forms") {
  CHECK(uv({5, 3}, 0, 0.3) == 1.0);
  CHECK(uv({3}, 2, 0.5) == Approx(0.1875));
  for (double q : {0.1, 0.4, 0.9}) CHECK(uv({1, 1}, 2, q) == Approx(std::pow(q, 5)));
  CHECK(uv({2}, 3, 0.5) == 0.0);
  CHECK(expected_uv_cliques({{2}, 3, 0.5, 0}).log == -INFINITY);
  CHECK(expected_uv_cliques_two_balls(4, 4, 0, 0.3, 0.2).value == 1.0);
  CHECK(expected_uv_cliques_two_balls(2, 2, 1, 0.3, 0).value == Approx(0.6));
  CHECK(expected_uv_cliques_two_balls(2, 2, 3, 0.3, 0).value == 0.0);
  // Increasing in q, decreasing in p.
  CHECK(uv({5, 5}, 3, 0.2) < uv({5, 5}, 3, 0.3));
  CHECK(uv({5, 5}, 3, 0.3, 0.2) < uv({5, 5}, 3, 0.3, 0.0));
  CHECK_THROWS_AS(uv({4}, 2, 1.5), Error);
  std::vector<std::size_t> singletons(60, 1);
  CHECK_THROWS_AS(uv(singletons, 30, 0.5), Error);
}

TEST_CASE("expected uv cliques agree with the sampled models") {
  struct BlockCase {
    std::vector<std::size_t> blocks;
    std::size_t k;
    double q, p;
  };
  for (const auto& c : {BlockCase{{8}, 2, 0.3, 0.2}, BlockCase{{4, 4}, 2, 0.4, 0.0},
                        BlockCase{{5, 3}, 3, 0.5, 0.3}}) {
    const auto mc = rgc_oracle::simulate_blocks(c.blocks, c.k, c.q, c.p, 200000, 31);
    CHECK(std::abs(mc.mean - uv(c.blocks, c.k, c.q, c.p)) < 3 * mc.std_error);
  }
  const auto mc = rgc_oracle::simulate_two_balls(4, 5, 2, 0.4, 0.2, 200000, 37);
  CHECK(std::abs(mc.mean - expected_uv_cliques_two_balls(4, 5, 2, 0.4, 0.2).value) <
        3 * mc.std_error);
}

TEST_CASE("er clique quantities") {
  CHECK(er_clique_quantities(200, 0.5).k == 7);
  CHECK(er_clique_quantities(256, 0.5).k == 8);
  const auto small = er_clique_quantities(5, 0.5, 3);
  CHECK(small.zeta.value == Approx(1.25));
  CHECK(small.delta_star.value == Approx(1.5));
  CHECK(small.delta.value == Approx(1.875));
  CHECK_THROWS_AS(er_clique_quantities(5, 0.5, 6), Error);
  CHECK_THROWS_AS(er_clique_quantities(5, 1.0), Error);
}

TEST_CASE("er quantities and janson bound against G(12, 1/2)") {
  const auto er = er_clique_quantities(12, 0.5);
  REQUIRE(er.k == 3);
  std::mt19937_64 rng(41);
  rgc_oracle::CliqueCountAccumulator count, overlap;
  std::size_t none = 0;
  const int trials = 40000;
  for (int t = 0; t < trials; ++t) {
    auto g = rgc_oracle::random_graph(12, 0.5, rng);
    const auto adj = rgc_oracle::masks(g);
    std::uint64_t triangles = 0;
    for (int a = 0; a < 12; ++a)
      for (int b = a + 1; b < 12; ++b)
        for (int c = b + 1; c < 12; ++c)
          triangles += ((adj[a] >> b) & 1) && ((adj[a] >> c) & 1) && ((adj[b] >> c) & 1);
    count.add(static_cast<double>(triangles));
    none += triangles == 0;
    // Conditioned on triangle {0, 1, 2}: triangles sharing exactly an edge with it.
    std::uint64_t sharing = 0;
    for (int x = 3; x < 12; ++x)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) sharing += ((adj[a] >> x) & 1) && ((adj[b] >> x) & 1);
    overlap.add(static_cast<double>(sharing));
  }
  const auto z = count.result(), d = overlap.result();
  CHECK(std::abs(z.mean - er.zeta.value) < 3 * z.std_error);
  CHECK(std::abs(d.mean - er.delta_star.value) < 3 * d.std_error);
  const double p_none = static_cast<double>(none) / trials;
  const auto jb = janson_bounds(er.zeta.value, er.delta.value);
  CHECK(p_none <= jb.plain.value);
  if (jb.extended) CHECK(p_none <= jb.extended->value);
}

TEST_CASE("janson bounds") {
  const auto a = janson_bounds(2, 1);
  CHECK(a.plain.value == Approx(0.22313).epsilon(1e-4));
  CHECK_FALSE(a.extended.has_value());
  const auto b = janson_bounds(2, 8);
  REQUIRE(b.extended.has_value());
  CHECK(b.extended->value == Approx(0.77880).epsilon(1e-4));
  for (double z : {0.5, 3.0, 40.0}) {
    const auto c = janson_bounds(z, z);
    REQUIRE(c.extended.has_value());
    CHECK(c.plain.log == Approx(-z / 2));
    CHECK(c.extended->log == Approx(c.plain.log));
  }
  CHECK(janson_bounds(2000, 1).plain.log == Approx(-1999.5));
  CHECK_THROWS_AS(janson_bounds(0, 1), Error);
}

TEST_CASE("bounds report") {
  BoundsQuery q;
  q.model.n = 1000;
  q.model.s = 0.256;
  q.model.p = 0.5;
  q.model.q = 0.01;
  q.model.K = 5;
  q.profile = BlockProfile{{3}, 2, 0.5, 0};
  q.er_n = 200;
  const auto j = bounds_report(q);
  CHECK(j["tau_good_edge_bound"].get<double>() == Approx(16.0 / 3));
  CHECK(j["assumption_a"]["holds"].get<bool>());
  CHECK(j["uv_cliques"]["expected"]["value"].get<double>() == Approx(0.1875));
  CHECK(j["er_clique"]["k"].get<int>() == 7);
  q.model.p = 0;
  CHECK(bounds_report(q)["tau_good_edge_bound"].is_null());
}
