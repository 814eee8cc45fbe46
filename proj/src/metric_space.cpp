#include "rggclique/metric_space.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rggclique/errors.hpp"
#include "rggclique/rng.hpp"

namespace rggclique {

std::string_view to_string(SpaceKind kind) {
  return kind == SpaceKind::unit_cube ? "unit-cube" : "flat-torus";
}

SpaceKind parse_space_kind(std::string_view text) {
  if (text == "unit-cube" || text == "cube") return SpaceKind::unit_cube;
  if (text == "flat-torus" || text == "torus") return SpaceKind::flat_torus;
  throw Error(ErrorKind::parse, "unknown space kind '" + std::string(text) +
                                    "' (expected unit-cube or flat-torus)");
}

MetricSpace MetricSpace::make(SpaceKind kind, std::size_t dim) {
  if (dim == 0) throw invalid_argument("space dimension must be >= 1");
  return MetricSpace(kind, dim);
}

double MetricSpace::distance_squared(std::span<const double> a,
                                     std::span<const double> b) const {
  double acc = 0.0;
  if (kind_ == SpaceKind::flat_torus) {
    for (std::size_t k = 0; k < dim_; ++k) {
      double t = std::fabs(a[k] - b[k]);
      if (t > 0.5) t = 1.0 - t;
      acc += t * t;
    }
  } else {
    for (std::size_t k = 0; k < dim_; ++k) {
      const double t = a[k] - b[k];
      acc += t * t;
    }
  }
  return acc;
}

double MetricSpace::distance(std::span<const double> a,
                             std::span<const double> b) const {
  if (dim_ == 1) {
    double t = std::fabs(a[0] - b[0]);
    if (kind_ == SpaceKind::flat_torus && t > 0.5) t = 1.0 - t;
    return t;
  }
  return std::sqrt(distance_squared(a, b));
}

PointCloud::PointCloud(MetricSpace space, std::vector<double> coords,
                       std::uint64_t seed)
    : space_(space), coords_(std::move(coords)), seed_(seed) {
  if (coords_.size() % space_.dim() != 0) {
    throw invalid_argument("coordinate count is not a multiple of dim");
  }
  n_ = coords_.size() / space_.dim();
}

PointCloud sample_points(const MetricSpace& space, std::size_t n,
                         std::uint64_t seed) {
  if (n == 0) throw invalid_argument("sample_points needs n >= 1");
  SeqRng rng(seed);
  std::vector<double> coords(n * space.dim());
  for (auto& c : coords) c = rng.uniform();
  return PointCloud(space, std::move(coords), seed);
}

double euclidean_ball_volume(std::size_t dim, double radius) {
  const double d = static_cast<double>(dim);
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0) *
         std::pow(radius, d);
}

MassBounds ball_mass_bounds(const MetricSpace& space, double r) {
  if (!(r > 0.0) || r > 1.0) {
    throw invalid_argument("ball_mass_bounds needs 0 < r and r/2 <= 1/2, got r=" +
                           std::to_string(r));
  }
  const double full = euclidean_ball_volume(space.dim(), r / 2.0);
  if (space.kind() == SpaceKind::flat_torus) {
    return {full, 1.0};
  }
  // With r/2 <= 1/2 each coordinate can be clipped on at most one side. The
  // smallest intersection is at a corner (one orthant of the ball), the
  // largest at the center (the whole ball).
  const double corner_share = std::ldexp(1.0, -static_cast<int>(space.dim()));
  return {full * corner_share, 1.0 / corner_share};
}

double radius_for_target_sn(const MetricSpace& space, std::size_t n,
                            double target_sn) {
  if (!(target_sn > 0.0) || n == 0) {
    throw invalid_argument("target sn must be positive");
  }
  double s = target_sn / static_cast<double>(n);
  if (space.kind() == SpaceKind::unit_cube) {
    s *= std::ldexp(1.0, static_cast<int>(space.dim()));
  }
  const double unit = euclidean_ball_volume(space.dim(), 1.0);
  const double r = 2.0 * std::pow(s / unit, 1.0 / static_cast<double>(space.dim()));
  if (r > 1.0) {
    throw Error(ErrorKind::infeasible,
                "target sn=" + std::to_string(target_sn) + " at n=" +
                    std::to_string(n) + " needs r=" + std::to_string(r) +
                    " > 1");
  }
  return r;
}

bool assumption_a_holds(const MassBounds& mass, std::size_t n) {
  if (n < 2) throw invalid_argument("assumption_a_holds needs n >= 2");
  const double nd = static_cast<double>(n);
  return mass.s >= 13.0 * std::log(nd) / nd;
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud) {
  out << "# space=" << to_string(cloud.space().kind())
      << " dim=" << cloud.dim() << " seed=" << cloud.seed() << '\n';
  out << "id";
  for (std::size_t k = 0; k < cloud.dim(); ++k) out << ",x" << k;
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << i;
    for (double c : cloud.point(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << ',' << buf;
    }
    out << '\n';
  }
}

namespace {

std::string field_value(const std::string& line, std::string_view key) {
  const std::string needle = std::string(key) + "=";
  const auto pos = line.find(needle);
  if (pos == std::string::npos) {
    throw Error(ErrorKind::parse, "point file header lacks '" + needle + "'");
  }
  const auto start = pos + needle.size();
  const auto end = line.find(' ', start);
  return line.substr(start, end == std::string::npos ? std::string::npos
                                                     : end - start);
}

}  // namespace

PointCloud read_point_cloud(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#", 0) != 0) {
    throw Error(ErrorKind::parse, "point file must start with a '# space=' line");
  }
  const SpaceKind kind = parse_space_kind(field_value(line, "space"));
  const std::size_t dim = std::stoul(field_value(line, "dim"));
  const std::uint64_t seed = std::stoull(field_value(line, "seed"));
  const MetricSpace space = MetricSpace::make(kind, dim);

  if (!std::getline(in, line) || line.rfind("id", 0) != 0) {
    throw Error(ErrorKind::parse, "point file missing 'id,x0,...' header");
  }
  std::vector<double> coords;
  std::size_t expected_id = 0;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    if (std::stoul(cell) != expected_id) {
      throw Error(ErrorKind::parse, "point ids must be 0..n-1 in order (line " +
                                        std::to_string(line_no) + ")");
    }
    std::size_t k = 0;
    while (std::getline(row, cell, ',')) {
      coords.push_back(std::stod(cell));
      ++k;
    }
    if (k != dim) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) +
                                        " has " + std::to_string(k) +
                                        " coordinates, expected " +
                                        std::to_string(dim));
    }
    ++expected_id;
  }
  return PointCloud(space, std::move(coords), seed);
}

}  // namespace rggclique
