#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rggclique {

enum class SpaceKind { unit_cube, flat_torus };

std::string_view to_string(SpaceKind kind);
SpaceKind parse_space_kind(std::string_view text);

// Unit cube [0,1]^d with the Euclidean metric, or the flat unit torus
// R^d / Z^d with the geodesic (wraparound) metric. Both carry the uniform
// probability measure.
class MetricSpace {
 public:
  static MetricSpace make(SpaceKind kind, std::size_t dim);

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }

  double distance(std::span<const double> a, std::span<const double> b) const;

  // Squared distance; avoids the sqrt in threshold comparisons.
  double distance_squared(std::span<const double> a,
                          std::span<const double> b) const;

  friend bool operator==(const MetricSpace&, const MetricSpace&) = default;

 private:
  MetricSpace(SpaceKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  SpaceKind kind_;
  std::size_t dim_;
};

class PointCloud {
 public:
  PointCloud(MetricSpace space, std::vector<double> coords, std::uint64_t seed);

  const MetricSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * space_.dim(), space_.dim()};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  double distance(std::size_t i, std::size_t j) const {
    return space_.distance(point(i), point(j));
  }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  MetricSpace space_;
  std::vector<double> coords_;
  std::size_t n_;
  std::uint64_t seed_;
};

// n i.i.d. uniform points; identical (space, n, seed) gives identical
// coordinates bit for bit.
PointCloud sample_points(const MetricSpace& space, std::size_t n,
                         std::uint64_t seed);

// Lower bound s and regularity factor rho for the mass of closed r/2-balls:
// s = inf_x mu(B_{r/2}(x)), rho = sup / inf.
struct MassBounds {
  double s = 0.0;
  double rho = 1.0;
};

// Exact for every built-in space. Requires 0 < r <= 1 so that an r/2-ball
// neither wraps around the torus nor touches two opposite cube faces.
MassBounds ball_mass_bounds(const MetricSpace& space, double r);

// Inverse of ball_mass_bounds(...).s * n: the radius r whose lower mass bound
// equals target_sn / n. Throws when that radius would exceed 1.
double radius_for_target_sn(const MetricSpace& space, std::size_t n,
                            double target_sn);

// Volume of the Euclidean d-ball of the given radius.
double euclidean_ball_volume(std::size_t dim, double radius);

// s >= 13 ln n / n.
bool assumption_a_holds(const MassBounds& mass, std::size_t n);

// CSV with a `# space=<kind> dim=<d> seed=<seed>` comment line and an
// `id,x0,...` header; coordinates use 17 significant digits.
void write_point_cloud(std::ostream& out, const PointCloud& cloud);
PointCloud read_point_cloud(std::istream& in);

}  // namespace rggclique
