#include "rggclique/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "rggclique/errors.hpp"

namespace rggclique {

PackingFamily packing_cover(const PointCloud& cloud,
                            std::span<const Vertex> subset, double delta) {
  if (!(delta > 0.0)) throw invalid_argument("packing radius must be positive");
  std::vector<Vertex> ids(subset.begin(), subset.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (auto v : ids) {
    if (v >= cloud.size()) throw invalid_argument("packing subset id out of range");
  }

  const double reach = 2.0 * delta;
  const std::size_t m = ids.size();
  std::vector<std::vector<std::size_t>> conflicts(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (cloud.distance(ids[i], ids[j]) <= reach) {
        conflicts[i].push_back(j);
        conflicts[j].push_back(i);
      }
    }
  }

  PackingFamily family;
  family.delta = delta;
  std::vector<std::size_t> color(m, SIZE_MAX);
  std::vector<char> taken;
  for (std::size_t i = 0; i < m; ++i) {
    family.conflict_max_degree = std::max(family.conflict_max_degree, conflicts[i].size());
    taken.assign(conflicts[i].size() + 1, 0);
    for (auto j : conflicts[i]) {
      if (color[j] < taken.size()) taken[color[j]] = 1;
    }
    std::size_t c = 0;
    while (taken[c]) ++c;
    color[i] = c;
    if (c == family.packings.size()) family.packings.emplace_back();
    family.packings[c].push_back(ids[i]);
  }
  return family;
}

WspFamily build_wsp(const PointCloud& cloud, double r) {
  if (cloud.size() == 0) throw invalid_argument("build_wsp needs a nonempty cloud");
  if (!(r > 0.0)) throw invalid_argument("build_wsp needs r > 0");

  std::vector<Vertex> all(cloud.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  const double half = r / 2.0;

  WspFamily wsp;
  wsp.r = r;
  const auto level1 = packing_cover(cloud, all, half);
  wsp.level1_max_degree = level1.conflict_max_degree;
  for (const auto& centers1 : level1.packings) {
    const auto level2 = packing_cover(cloud, centers1, r);
    wsp.level2_max_degree = std::max(wsp.level2_max_degree, level2.conflict_max_degree);
    for (const auto& centers : level2.packings) {
      WspPart part;
      part.centers = centers;
      part.cliques.resize(centers.size());
      for (Vertex x = 0; x < cloud.size(); ++x) {
        for (std::size_t j = 0; j < centers.size(); ++j) {
          if (cloud.distance(x, centers[j]) <= half) {
            part.cliques[j].push_back(x);
            break;
          }
        }
      }
      wsp.parts.push_back(std::move(part));
    }
  }
  return wsp;
}

namespace {

struct PairDistances {
  double min = std::numeric_limits<double>::infinity();
  double hausdorff = 0.0;
};

PairDistances clique_distances(const PointCloud& cloud, const std::vector<Vertex>& a,
                               const std::vector<Vertex>& b) {
  PairDistances out;
  std::vector<double> to_a(b.size(), std::numeric_limits<double>::infinity());
  for (auto x : a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k) {
      const double d = cloud.distance(x, b[k]);
      nearest = std::min(nearest, d);
      to_a[k] = std::min(to_a[k], d);
    }
    out.min = std::min(out.min, nearest);
    out.hausdorff = std::max(out.hausdorff, nearest);
  }
  for (double d : to_a) out.hausdorff = std::max(out.hausdorff, d);
  return out;
}

std::string where(std::size_t part, std::size_t clique) {
  return "part " + std::to_string(part) + " clique " + std::to_string(clique);
}

}  // namespace

WspReport validate_wsp(const WspFamily& wsp, const PointCloud& cloud, double r,
                       const GeometricGraph& truth) {
  WspReport report;
  report.min_separation = std::numeric_limits<double>::infinity();
  auto fail = [&](std::string message) {
    if (report.valid) {
      report.valid = false;
      report.violation = std::move(message);
    }
  };
  const std::size_t n = cloud.size();
  if (truth.graph.vertex_count() != n) {
    fail("truth graph and cloud differ in size");
    return report;
  }

  std::vector<char> covered(n, 0);
  std::vector<std::size_t> owner(n);
  for (std::size_t pi = 0; pi < wsp.parts.size(); ++pi) {
    const auto& part = wsp.parts[pi];
    if (part.centers.size() != part.cliques.size()) {
      fail("part " + std::to_string(pi) + " has mismatched centers and cliques");
      continue;
    }
    std::fill(owner.begin(), owner.end(), SIZE_MAX);
    for (std::size_t j = 0; j < part.cliques.size(); ++j) {
      const Vertex c = part.centers[j];
      if (c >= n) {
        fail(where(pi, j) + " has an out-of-range center");
        continue;
      }
      const auto& clique = part.cliques[j];
      for (std::size_t a = 0; a < clique.size(); ++a) {
        const Vertex x = clique[a];
        if (x >= n) {
          fail(where(pi, j) + " has an out-of-range vertex");
          continue;
        }
        covered[x] = 1;
        if (owner[x] != SIZE_MAX) {
          fail("vertex " + std::to_string(x) + " lies in two cliques of part " +
               std::to_string(pi));
        }
        owner[x] = j;
        if (cloud.distance(x, c) > r / 2.0) {
          fail("vertex " + std::to_string(x) + " of " + where(pi, j) +
               " is outside the r/2-ball of its center");
        }
        for (std::size_t b = a + 1; b < clique.size(); ++b) {
          if (clique[b] < n && !truth.graph.has_edge(x, clique[b])) {
            fail(where(pi, j) + " is not complete in the truth graph");
          }
        }
      }
    }
    for (std::size_t j1 = 0; j1 < part.cliques.size(); ++j1) {
      for (std::size_t j2 = j1 + 1; j2 < part.cliques.size(); ++j2) {
        const auto& a = part.cliques[j1];
        const auto& b = part.cliques[j2];
        if (a.empty() || b.empty()) continue;
        const auto d = clique_distances(cloud, a, b);
        report.min_separation = std::min(report.min_separation, d.min);
        if (!(d.min > r)) {
          if (d.hausdorff > r) ++report.hausdorff_only_pairs;
          fail(where(pi, j1) + " and clique " + std::to_string(j2) +
               " are within distance r");
        }
        for (auto x : a) {
          for (auto y : b) {
            if (x < n && y < n && truth.graph.has_edge(x, y)) {
              fail("truth edge (" + std::to_string(x) + "," + std::to_string(y) +
                   ") crosses cliques of part " + std::to_string(pi));
            }
          }
        }
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!covered[x]) {
      fail("vertex " + std::to_string(x) + " is not covered");
      break;
    }
  }
  return report;
}

void write_wsp_json(std::ostream& out, const WspFamily& wsp) {
  nlohmann::ordered_json j;
  j["r"] = wsp.r;
  j["parts"] = nlohmann::ordered_json::array();
  for (const auto& part : wsp.parts) {
    nlohmann::ordered_json p;
    p["cliques"] = part.cliques;
    p["centers"] = part.centers;
    j["parts"].push_back(std::move(p));
  }
  out << j.dump() << '\n';
}

WspFamily read_wsp_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("WSP file: ") + e.what());
  }
  WspFamily wsp;
  try {
    wsp.r = j.value("r", 0.0);
    for (const auto& p : j.at("parts")) {
      WspPart part;
      part.cliques = p.at("cliques").get<std::vector<std::vector<Vertex>>>();
      part.centers = p.at("centers").get<std::vector<Vertex>>();
      if (part.cliques.size() != part.centers.size()) {
        throw Error(ErrorKind::parse, "WSP part has mismatched centers and cliques");
      }
      wsp.parts.push_back(std::move(part));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("WSP file: ") + e.what());
  }
  return wsp;
}

}  // namespace rggclique
