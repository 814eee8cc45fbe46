#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "rggclique/filtering.hpp"
#include "rggclique/graph.hpp"
#include "rggclique/graphgen.hpp"

namespace rggclique {

// Symmetric n x n hop-count matrix; unreachable pairs hold kUnreachable.
class DistanceMatrix {
 public:
  static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {
    for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0;
  }

  std::size_t size() const noexcept { return n_; }
  std::uint32_t at(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t d) noexcept {
    d_[i * n_ + j] = d;
    d_[j * n_ + i] = d;
  }
  const std::uint32_t* row(std::size_t i) const noexcept { return d_.data() + i * n_; }
  std::uint32_t* row(std::size_t i) noexcept { return d_.data() + i * n_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> d_;
};

// BFS from every source; parallel over sources when workers > 1.
DistanceMatrix all_pairs_distances(const Graph& g, unsigned workers = 1);

struct ApproxReport {
  double alpha = 1.0;  // +infinity when the finiteness patterns differ
  std::optional<Edge> worst_pair;
  bool connectivity_mismatch = false;
};

// alpha = max over pairs finite and positive in both of max(d1/d2, d2/d1).
ApproxReport approximation_factor(const DistanceMatrix& d1, const DistanceMatrix& d2);

struct RecoveryReport {
  ApproxReport approx;  // d_{G_tau} against d_{G*}
  bool e1 = false;      // d_{Ĝ∩G*} <= 2 d_{G*}
  bool e2 = false;      // every edge of Ĝ∩G* survives the filter
  bool e3 = false;      // no bad edge survives the filter
  std::size_t good_removed = 0;
  std::size_t bad_kept = 0;
};

// `labels` are aligned with fg.observed.edges(); pass classify_edges output.
RecoveryReport recovery_stretch(const GeometricGraph& truth, const FilteredGraph& fg,
                                const std::vector<EdgeLabel>& labels,
                                unsigned workers = 1);

// CSV `i,j,dist` for i < j, `inf` for unreachable pairs.
void write_distance_csv(std::ostream& out, const DistanceMatrix& d);
DistanceMatrix read_distance_csv(std::istream& in);

}  // namespace rggclique
