#include "rggclique/graphgen.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rggclique/errors.hpp"
#include "rggclique/rng.hpp"

namespace rggclique {

GeometricGraph build_rgg(PointCloud cloud, double r) {
  if (!(r > 0.0)) throw invalid_argument("build_rgg needs r > 0");
  const std::size_t n = cloud.size();
  const double r2 = r * r;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      // Compare exact distances only near the threshold so that boundary
      // pairs (d == r) are decided on the same value distance() reports.
      const double d2 = cloud.space().distance_squared(cloud.point(u), cloud.point(v));
      bool adjacent = d2 <= r2;
      if (std::fabs(d2 - r2) <= 1e-9 * r2) adjacent = cloud.distance(u, v) <= r;
      if (adjacent) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  Graph g(n, std::move(edges));
  return GeometricGraph{std::move(cloud), r, std::move(g)};
}

std::string_view to_string(Provenance p) {
  return p == Provenance::kept_original ? "kept-original" : "inserted";
}

std::string_view to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::good:
      return "good";
    case EdgeLabel::bad:
      return "bad";
    case EdgeLabel::indeterminate:
      return "indeterminate";
  }
  return "?";
}

Provenance parse_provenance(std::string_view text) {
  if (text == "kept-original") return Provenance::kept_original;
  if (text == "inserted") return Provenance::inserted;
  throw Error(ErrorKind::parse, "unknown provenance '" + std::string(text) + "'");
}

EdgeLabel parse_label(std::string_view text) {
  if (text == "good") return EdgeLabel::good;
  if (text == "bad") return EdgeLabel::bad;
  if (text == "indeterminate") return EdgeLabel::indeterminate;
  throw Error(ErrorKind::parse, "unknown edge label '" + std::string(text) + "'");
}

PerturbedGraph perturb(std::shared_ptr<const GeometricGraph> truth, double p,
                       double q, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw invalid_argument("perturb needs p, q in [0, 1]");
  }
  const Graph& g = truth->graph;
  const std::size_t n = g.vertex_count();
  std::vector<Edge> edges;
  std::vector<Provenance> prov;
  for (std::size_t u = 0; u < n; ++u) {
    const Bitset& row = g.row(static_cast<Vertex>(u));
    for (std::size_t v = u + 1; v < n; ++v) {
      const double x = pair_uniform(seed, static_cast<Vertex>(u), static_cast<Vertex>(v));
      if (row.test(v)) {
        if (!(x < p)) {
          edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
          prov.push_back(Provenance::kept_original);
        }
      } else if (x < q) {
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
        prov.push_back(Provenance::inserted);
      }
    }
  }
  // Pairs were visited in (u, v) order, so the Graph keeps this ordering and
  // prov stays aligned with observed.edges().
  PerturbedGraph pg;
  pg.observed = Graph(n, std::move(edges));
  pg.provenance = std::move(prov);
  pg.truth = std::move(truth);
  pg.p = p;
  pg.q = q;
  pg.seed = seed;
  return pg;
}

EdgeLabel classify_edge(const GeometricGraph& truth, Vertex u, Vertex v) {
  const double d = truth.cloud.distance(u, v);
  if (d <= truth.r) return EdgeLabel::good;
  if (d > 3.0 * truth.r) return EdgeLabel::bad;
  // Some x in N(u), y in N(v) with d(x, y) <= r exists iff N(v) meets
  // N(u) itself (x == y) or the truth neighborhood of some x in N(u).
  const Graph& g = truth.graph;
  const Bitset& nv = g.row(v);
  if (g.row(u).intersects(nv)) return EdgeLabel::indeterminate;
  for (Vertex x : g.neighbors(u)) {
    if (g.row(x).intersects(nv)) return EdgeLabel::indeterminate;
  }
  return EdgeLabel::bad;
}

std::vector<EdgeLabel> classify_edges(const PerturbedGraph& pg) {
  const auto edges = pg.observed.edges();
  std::vector<EdgeLabel> labels(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    labels[i] = pg.provenance[i] == Provenance::kept_original
                    ? EdgeLabel::good
                    : classify_edge(*pg.truth, edges[i].u, edges[i].v);
  }
  return labels;
}

LabelCounts count_labels(const std::vector<EdgeLabel>& labels) {
  LabelCounts c;
  for (auto l : labels) {
    switch (l) {
      case EdgeLabel::good:
        ++c.good;
        break;
      case EdgeLabel::bad:
        ++c.bad;
        break;
      case EdgeLabel::indeterminate:
        ++c.indeterminate;
        break;
    }
  }
  return c;
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_edge_list(std::ostream& out, const PerturbedGraph& pg,
                     const std::vector<EdgeLabel>& labels) {
  out << "# n=" << pg.vertex_count() << " r=" << fmt_double(pg.truth->r)
      << " p=" << fmt_double(pg.p) << " q=" << fmt_double(pg.q)
      << " seed=" << pg.seed << '\n';
  out << "# u v provenance label\n";
  const auto edges = pg.observed.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << edges[i].u << ' ' << edges[i].v << ' ' << to_string(pg.provenance[i])
        << ' ' << (labels.empty() ? std::string_view("-") : to_string(labels[i]))
        << '\n';
  }
}

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile f;
  std::string line;
  bool have_header = false;
  bool any_label = false;
  bool any_placeholder = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("n=") != std::string::npos && !have_header) {
        std::istringstream hs(line.substr(1));
        std::string tok;
        while (hs >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) continue;
          const std::string key = tok.substr(0, eq);
          const std::string val = tok.substr(eq + 1);
          if (key == "n") f.n = std::stoul(val);
          else if (key == "r") f.r = std::stod(val);
          else if (key == "p") f.p = std::stod(val);
          else if (key == "q") f.q = std::stod(val);
          else if (key == "seed") f.seed = std::stoull(val);
        }
        have_header = true;
      }
      continue;
    }
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string prov, label;
    if (!(ls >> u >> v >> prov >> label) || u < 0 || v < 0) {
      throw Error(ErrorKind::parse, "malformed edge line " + std::to_string(line_no));
    }
    if (!(u < v)) {
      throw Error(ErrorKind::parse, "edge line " + std::to_string(line_no) + " needs u < v");
    }
    f.edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    f.provenance.push_back(parse_provenance(prov));
    if (label == "-") {
      any_placeholder = true;
    } else {
      any_label = true;
      f.labels.push_back(parse_label(label));
    }
  }
  if (!have_header) throw Error(ErrorKind::parse, "edge list lacks '# n=' header");
  if (any_label && any_placeholder) {
    throw Error(ErrorKind::parse, "edge list mixes labels and '-' placeholders");
  }
  for (std::size_t i = 1; i < f.edges.size(); ++i) {
    if (!(f.edges[i - 1] < f.edges[i])) {
      throw Error(ErrorKind::parse, "edge list must be strictly sorted by (u, v)");
    }
  }
  return f;
}

PerturbedGraph perturbed_from_edge_list(
    std::shared_ptr<const GeometricGraph> truth, const EdgeListFile& file) {
  const std::size_t n = truth->graph.vertex_count();
  if (file.n != n) {
    throw invalid_argument("edge list has n=" + std::to_string(file.n) +
                           " but the point cloud has " + std::to_string(n));
  }
  for (std::size_t i = 0; i < file.edges.size(); ++i) {
    const auto& e = file.edges[i];
    if (e.v >= n) throw invalid_argument("edge endpoint out of range");
    const bool in_truth = truth->graph.has_edge(e.u, e.v);
    if (in_truth != (file.provenance[i] == Provenance::kept_original)) {
      throw invalid_argument("provenance of edge (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ") disagrees with the truth graph");
    }
  }
  PerturbedGraph pg;
  pg.observed = Graph(n, file.edges);
  pg.provenance = file.provenance;
  pg.truth = std::move(truth);
  pg.p = file.p;
  pg.q = file.q;
  pg.seed = file.seed;
  return pg;
}

}  // namespace rggclique
