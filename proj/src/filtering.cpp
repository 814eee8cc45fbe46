#include "rggclique/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "clique_engine.hpp"
#include "parallel.hpp"
#include "rggclique/errors.hpp"

namespace rggclique {

std::string_view to_string(FilterMethod method) {
  return method == FilterMethod::clique ? "clique" : "jaccard";
}

FilterMethod parse_filter_method(std::string_view text) {
  if (text == "clique") return FilterMethod::clique;
  if (text == "jaccard") return FilterMethod::jaccard;
  throw invalid_argument("unknown filter method '" + std::string(text) + "'");
}

void FilterConfig::validate() const {
  if (method == FilterMethod::clique) {
    if (!(threshold >= 2.0) || threshold != std::floor(threshold) || threshold > 1e9) {
      throw invalid_argument("clique threshold must be an integer >= 2");
    }
  } else if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw invalid_argument("jaccard threshold must lie in [0, 1]");
  }
}

std::size_t FilteredGraph::kept_count() const {
  return static_cast<std::size_t>(std::count(kept.begin(), kept.end(), true));
}

namespace {

FilteredGraph finish(FilterConfig config, std::uint64_t seed, const Graph& g,
                     std::vector<bool> kept, std::vector<double> scores) {
  FilteredGraph fg;
  fg.config = config;
  fg.seed = seed;
  fg.observed = g;
  fg.filtered = edge_subgraph(g, kept);
  fg.kept = std::move(kept);
  fg.scores = std::move(scores);
  return fg;
}

}  // namespace

FilteredGraph clique_filter(const Graph& g, std::size_t tau,
                            const CliqueFilterOptions& options) {
  if (tau < 2) throw invalid_argument("clique filter needs tau >= 2");
  const FilterConfig config{FilterMethod::clique, static_cast<double>(tau)};
  const auto edges = g.edges();
  std::vector<char> keep(edges.size(), 0);
  std::vector<double> scores(options.exact_scores ? edges.size() : 0);

  if (options.exact_scores) {
    const auto stats = all_edge_clique_numbers(
        g, std::vector<EdgeLabel>(edges.size(), EdgeLabel::good),
        {StatsMode::full, options.budget, options.workers});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto w = *stats.per_edge[i].omega;
      scores[i] = static_cast<double>(w);
      keep[i] = w >= tau;
    }
  } else {
    // Same per-vertex blocking as the statistics pass: the candidate set of
    // (u, v) is v's row inside the dense neighborhood graph of u.
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> first(n + 1, edges.size());
    for (std::size_t i = edges.size(); i-- > 0;) first[edges[i].u] = i;
    for (std::size_t u = n; u-- > 0;) first[u] = std::min(first[u], first[u + 1]);
    detail::parallel_for(n, options.workers, [&](std::size_t ui) {
      const std::size_t begin = first[ui];
      const std::size_t end = first[ui + 1];
      if (begin == end) return;
      if (tau == 2) {
        std::fill(keep.begin() + static_cast<std::ptrdiff_t>(begin),
                  keep.begin() + static_cast<std::ptrdiff_t>(end), 1);
        return;
      }
      const Vertex u = static_cast<Vertex>(ui);
      detail::OrderedSubgraph h(g, g.neighbors(u));
      detail::CliqueSearch search(h, options.budget);
      for (std::size_t i = begin; i < end; ++i) {
        const Vertex v = edges[i].v;
        const Bitset cand = h.row_bitset(h.local_index(v));
        try {
          keep[i] = search.exists(cand, tau - 2);
        } catch (const BudgetExceeded& e) {
          throw BudgetExceeded(e.budget(), u, v);
        }
      }
    });
  }
  return finish(config, 0, g, std::vector<bool>(keep.begin(), keep.end()),
                std::move(scores));
}

FilteredGraph clique_filter(const PerturbedGraph& pg, std::size_t tau,
                            const CliqueFilterOptions& options) {
  auto fg = clique_filter(pg.observed, tau, options);
  fg.seed = pg.seed;
  return fg;
}

double jaccard_index(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v)) {
    throw invalid_argument("(" + std::to_string(u) + "," + std::to_string(v) +
                           ") is not an edge");
  }
  const std::size_t common = g.row(u).intersection_count(g.row(v));
  // N(u) holds v and N(v) holds u; neither endpoint is a common neighbor.
  const std::size_t uni = g.degree(u) + g.degree(v) - common - 2;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

FilteredGraph jaccard_filter(const Graph& g, double threshold) {
  const FilterConfig config{FilterMethod::jaccard, threshold};
  config.validate();
  const auto edges = g.edges();
  std::vector<bool> keep(edges.size());
  std::vector<double> scores(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    scores[i] = jaccard_index(g, edges[i].u, edges[i].v);
    keep[i] = scores[i] >= threshold;
  }
  return finish(config, 0, g, std::move(keep), std::move(scores));
}

FilteredGraph jaccard_filter(const PerturbedGraph& pg, double threshold) {
  auto fg = jaccard_filter(pg.observed, threshold);
  fg.seed = pg.seed;
  return fg;
}

FilteredGraph apply_filter(const PerturbedGraph& pg, const FilterConfig& config,
                           const CliqueFilterOptions& options) {
  config.validate();
  if (config.method == FilterMethod::clique) {
    return clique_filter(pg, static_cast<std::size_t>(config.threshold), options);
  }
  return jaccard_filter(pg, config.threshold);
}

void write_filtered_graph(std::ostream& out, const FilteredGraph& fg) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", fg.config.threshold);
  out << "# method=" << to_string(fg.config.method) << " threshold=" << buf
      << " seed=" << fg.seed << " n=" << fg.observed.vertex_count() << '\n';
  if (fg.config.method == FilterMethod::jaccard) {
    out << "# score=|N(u)&N(v)|/|N(u)|N(v)\\{u,v}|, 0 when the union is empty\n";
  } else {
    out << "# score=edge clique number in the observed graph\n";
  }
  out << "# u v status score\n";
  const auto edges = fg.observed.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << edges[i].u << ' ' << edges[i].v << ' ' << (fg.kept[i] ? "kept" : "removed")
        << ' ';
    if (fg.scores.empty()) {
      out << "na";
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", fg.scores[i]);
      out << buf;
    }
    out << '\n';
  }
}

namespace {

std::string header_value(const std::string& line, const std::string& key) {
  const auto pos = line.find(" " + key + "=");
  if (pos == std::string::npos) {
    throw Error(ErrorKind::parse, "filtered-graph header lacks '" + key + "'");
  }
  const auto start = pos + key.size() + 2;
  const auto end = line.find(' ', start);
  return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

FilteredGraphFile read_filtered_graph(std::istream& in) {
  FilteredGraphFile file;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# method=", 0) != 0) {
    throw Error(ErrorKind::parse, "filtered-graph file must start with '# method='");
  }
  try {
    file.config.method = parse_filter_method(header_value(line, "method"));
    file.config.threshold = std::stod(header_value(line, "threshold"));
    file.seed = std::stoull(header_value(line, "seed"));
    file.n = std::stoull(header_value(line, "n"));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::parse, "malformed filtered-graph header: " + line);
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    std::string status;
    std::string score;
    if (!(row >> u >> v >> status >> score) || u >= v || v >= file.n ||
        (status != "kept" && status != "removed")) {
      throw Error(ErrorKind::parse,
                  "filtered-graph line " + std::to_string(line_no) + ": " + line);
    }
    const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!file.edges.empty() && !(file.edges.back() < e)) {
      throw Error(ErrorKind::parse, "filtered-graph edges must be sorted (line " +
                                        std::to_string(line_no) + ")");
    }
    file.edges.push_back(e);
    file.kept.push_back(status == "kept");
    if (score == "na") {
      file.scores.emplace_back();
    } else {
      try {
        file.scores.emplace_back(std::stod(score));
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::parse, "bad score on line " + std::to_string(line_no));
      }
    }
  }
  return file;
}

}  // namespace rggclique
