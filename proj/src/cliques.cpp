#include "rggclique/cliques.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>

#include "clique_engine.hpp"
#include "parallel.hpp"
#include "rggclique/errors.hpp"

namespace rggclique {

using detail::CliqueSearch;
using detail::OrderedSubgraph;

namespace {

std::vector<Vertex> common_neighbors(const Graph& g, Vertex u, Vertex v) {
  std::vector<Vertex> out;
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

void require_edge(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v)) {
    throw invalid_argument("(" + std::to_string(u) + "," + std::to_string(v) +
                           ") is not an edge");
  }
}

}  // namespace

std::vector<Vertex> max_clique_within(const Graph& g,
                                      std::span<const Vertex> vertices,
                                      std::uint64_t budget) {
  if (vertices.empty()) return {};
  OrderedSubgraph h(g, vertices);
  CliqueSearch search(h, budget);
  const auto local = search.maximum(h.all());
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (auto i : local) out.push_back(h.global_id(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> max_clique(const Graph& g, std::uint64_t budget) {
  std::vector<Vertex> all(g.vertex_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  return max_clique_within(g, all, budget);
}

std::size_t edge_clique_number(const Graph& g, Vertex u, Vertex v,
                               std::uint64_t budget) {
  require_edge(g, u, v);
  const auto common = common_neighbors(g, u, v);
  if (common.empty()) return 2;
  try {
    return 2 + max_clique_within(g, common, budget).size();
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(e.budget(), std::min(u, v), std::max(u, v));
  }
}

bool edge_clique_at_least(const Graph& g, Vertex u, Vertex v, std::size_t tau,
                          std::uint64_t budget) {
  if (tau < 2) throw invalid_argument("edge_clique_at_least needs tau >= 2");
  require_edge(g, u, v);
  if (tau == 2) return true;
  const auto common = common_neighbors(g, u, v);
  const std::size_t target = tau - 2;
  if (common.size() < target) return false;
  if (target == 1) return true;
  OrderedSubgraph h(g, common);
  CliqueSearch search(h, budget);
  try {
    return search.exists(h.all(), target);
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(e.budget(), std::min(u, v), std::max(u, v));
  }
}

namespace {

// Processes every edge (u, v) with v > u from the dense neighborhood graph of
// u; the candidate set of (u, v) is v's row restricted to N(u).
template <class PerEdge>
void for_each_vertex_block(const Graph& g, unsigned workers, PerEdge&& per_edge) {
  const std::size_t n = g.vertex_count();
  // First edge index of each vertex's forward block.
  std::vector<std::size_t> first(n + 1, 0);
  {
    const auto edges = g.edges();
    std::size_t i = 0;
    for (std::size_t u = 0; u < n; ++u) {
      first[u] = i;
      while (i < edges.size() && edges[i].u == u) ++i;
    }
    first[n] = edges.size();
  }
  detail::parallel_for(n, workers, [&](std::size_t ui) {
    if (first[ui] == first[ui + 1]) return;
    const Vertex u = static_cast<Vertex>(ui);
    OrderedSubgraph h(g, g.neighbors(u));
    per_edge(u, h, first[ui], first[ui + 1]);
  });
}

void finalize_stats(CliqueStats& stats) {
  for (auto& c : stats.by_class) c = ClassStats{};
  std::array<double, 3> sum{};
  std::array<std::size_t, 3> computed{};
  for (const auto& e : stats.per_edge) {
    auto& c = stats.by_class[static_cast<std::size_t>(e.label)];
    ++c.count;
    if (!e.omega) continue;
    const std::size_t w = *e.omega;
    c.min = c.min ? std::min(*c.min, w) : w;
    c.max = c.max ? std::max(*c.max, w) : w;
    sum[static_cast<std::size_t>(e.label)] += static_cast<double>(w);
    ++computed[static_cast<std::size_t>(e.label)];
  }
  for (std::size_t k = 0; k < 3; ++k) {
    auto& c = stats.by_class[k];
    if (computed[k] > 0 && computed[k] == c.count) {
      c.mean = sum[k] / static_cast<double>(computed[k]);
    }
  }
}

}  // namespace

CliqueStats all_edge_clique_numbers(const Graph& g,
                                    const std::vector<EdgeLabel>& labels,
                                    const CliqueStatsOptions& options) {
  const auto edges = g.edges();
  if (labels.size() != edges.size()) {
    throw invalid_argument("label count does not match edge count");
  }
  CliqueStats stats;
  stats.mode = options.mode;
  stats.per_edge.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    stats.per_edge[i].edge = edges[i];
    stats.per_edge[i].label = labels[i];
  }

  // Running minimum over good edges in extremes mode; any edge that cannot
  // beat it is skipped with a threshold search.
  std::atomic<std::size_t> good_min{SIZE_MAX};

  for_each_vertex_block(g, options.workers, [&](Vertex u, const OrderedSubgraph& h,
                                                std::size_t begin, std::size_t end) {
    CliqueSearch search(h, options.budget);
    for (std::size_t i = begin; i < end; ++i) {
      const Vertex v = edges[i].v;
      const Bitset cand = h.row_bitset(h.local_index(v));
      try {
        if (options.mode == StatsMode::extremes && labels[i] == EdgeLabel::good) {
          std::size_t cur = good_min.load(std::memory_order_relaxed);
          if (cur != SIZE_MAX && (cur <= 2 || search.exists(cand, cur - 2))) {
            continue;
          }
          const std::size_t w = 2 + search.maximum(cand).size();
          stats.per_edge[i].omega = w;
          while (w < cur && !good_min.compare_exchange_weak(cur, w)) {
          }
        } else {
          stats.per_edge[i].omega = 2 + search.maximum(cand).size();
        }
      } catch (const BudgetExceeded& e) {
        throw BudgetExceeded(e.budget(), u, v);
      }
    }
  });

  if (options.mode == StatsMode::extremes) {
    // Which good edges got an exact value depends on the schedule; only the
    // certified minimum is reported.
    for (auto& e : stats.per_edge) {
      if (e.label == EdgeLabel::good) e.omega.reset();
    }
  }
  finalize_stats(stats);
  if (options.mode == StatsMode::extremes && good_min.load() != SIZE_MAX) {
    stats.by_class[static_cast<std::size_t>(EdgeLabel::good)].min = good_min.load();
  }
  return stats;
}

CliqueStats all_edge_clique_numbers(const PerturbedGraph& pg,
                                    const std::vector<EdgeLabel>& labels,
                                    const CliqueStatsOptions& options) {
  return all_edge_clique_numbers(pg.observed, labels, options);
}

void write_clique_csv(std::ostream& out, const CliqueStats& stats) {
  out << "u,v,label,omega\n";
  for (const auto& e : stats.per_edge) {
    out << e.edge.u << ',' << e.edge.v << ',' << to_string(e.label) << ',';
    if (e.omega) {
      out << *e.omega;
    } else {
      out << "na";
    }
    out << '\n';
  }
}

nlohmann::ordered_json clique_summary_json(const CliqueStats& stats) {
  nlohmann::ordered_json j;
  for (auto label : kAllLabels) {
    const auto& c = stats.of(label);
    nlohmann::ordered_json cls;
    cls["min"] = c.min ? nlohmann::ordered_json(*c.min) : nullptr;
    cls["max"] = c.max ? nlohmann::ordered_json(*c.max) : nullptr;
    cls["mean"] = c.mean ? nlohmann::ordered_json(*c.mean) : nullptr;
    cls["count"] = c.count;
    j[std::string(to_string(label))] = std::move(cls);
  }
  return j;
}

void write_clique_summary_json(std::ostream& out, const CliqueStats& stats) {
  out << clique_summary_json(stats).dump(2) << '\n';
}

}  // namespace rggclique
