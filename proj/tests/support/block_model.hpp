#pragma once

// Monte Carlo samplers for the number of (k+2)-cliques through a fixed edge
// uv in the block and two-ball insertion models.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace rgc_oracle {

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Number of k-subsets of {0..m-1} that are cliques in `adj` (bit masks).
inline std::uint64_t count_k_cliques(const std::vector<std::uint64_t>& adj, std::size_t k,
                                     std::uint64_t allowed, std::size_t start = 0) {
  if (k == 0) return 1;
  std::uint64_t total = 0;
  for (std::size_t i = start; i < adj.size(); ++i) {
    if (!((allowed >> i) & 1u)) continue;
    total += count_k_cliques(adj, k - 1, allowed & adj[i], i + 1);
  }
  return total;
}

class CliqueCountAccumulator {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  MonteCarloEstimate result() const {
    const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    return {mean_, std::sqrt(var / static_cast<double>(n_))};
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Blocks are complete before deletion (each internal edge survives with
// 1 - p); spokes to u and v and cross-block pairs are inserted with q.
// Spokes are independent of the rest, so each sample draws the graph on the
// block vertices and credits every k-clique there with its spoke
// probability q^{2k}. Rare configurations stay measurable this way.
inline MonteCarloEstimate simulate_blocks(const std::vector<std::size_t>& blocks, std::size_t k,
                                          double q, double p, std::uint64_t trials,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(1.0 - p), insert(q);
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < blocks.size(); ++b) block_of.insert(block_of.end(), blocks[b], b);
  const std::size_t m = block_of.size();
  const double spokes = std::pow(q, 2.0 * static_cast<double>(k));
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  CliqueCountAccumulator acc;
  std::vector<std::uint64_t> adj(m);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::fill(adj.begin(), adj.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const bool edge = block_of[i] == block_of[j] ? keep(rng) : insert(rng);
        if (edge) {
          adj[i] |= std::uint64_t{1} << j;
          adj[j] |= std::uint64_t{1} << i;
        }
      }
    }
    acc.add(spokes * static_cast<double>(count_k_cliques(adj, k, all)));
  }
  return acc.result();
}

// u sits in a clique of nu vertices, v in one of nv; edges inside each
// clique survive with 1 - p, edges across are inserted with q. Only the
// common neighborhood of u and v matters, so each sample draws that set
// first and then the edges inside it.
inline MonteCarloEstimate simulate_two_balls(std::size_t nu, std::size_t nv, std::size_t k,
                                             double q, double p, std::uint64_t trials,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(1.0 - p), insert(q);
  CliqueCountAccumulator acc;
  std::vector<int> side;
  std::vector<std::uint64_t> adj;
  for (std::uint64_t t = 0; t < trials; ++t) {
    side.clear();
    for (std::size_t i = 0; i + 1 < nu; ++i)
      if (keep(rng) && insert(rng)) side.push_back(0);
    for (std::size_t i = 0; i + 1 < nv; ++i)
      if (insert(rng) && keep(rng)) side.push_back(1);
    if (side.size() < k) {
      acc.add(0.0);
      continue;
    }
    adj.assign(side.size(), 0);
    for (std::size_t i = 0; i < side.size(); ++i) {
      for (std::size_t j = i + 1; j < side.size(); ++j) {
        const bool edge = side[i] == side[j] ? keep(rng) : insert(rng);
        if (edge) {
          adj[i] |= std::uint64_t{1} << j;
          adj[j] |= std::uint64_t{1} << i;
        }
      }
    }
    acc.add(static_cast<double>(count_k_cliques(adj, k, (std::uint64_t{1} << side.size()) - 1)));
  }
  return acc.result();
}

}  // namespace rgc_oracle
