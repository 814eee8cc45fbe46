#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "json.hpp"

namespace rggclique {

// A quantity evaluated in log space, with its exponentiated value.
struct LogValue {
  double log = 0.0;
  double value = 1.0;
};

struct ModelParams {
  double n = 2.0;
  double s = 1.0;
  double rho = 1.0;
  double p = 0.0;
  double q = 0.0;
  double K = 2.0;  // target clique size
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;

  void validate() const;
};

// 13 ln n / n.
double assumption_a_s_min(double n);

// (2/3) ln(sn) / ln(1 / (1 - p)); needs 0 < p < 1 and sn > 1.
double tau_good_edge_bound(double p, double s, double n);

// min{c1, c2 (1/n)^{c3/K} K / (sn)}; the combined variant divides the
// second term by sqrt(1 - p).
double q_threshold(const ModelParams& params, bool combined);

// Clique blocks N_1..N_m, k extra clique vertices, insertion q, deletion p.
struct BlockProfile {
  std::vector<std::size_t> blocks;
  std::size_t k = 0;
  double q = 0.0;
  double p = 0.0;

  void validate() const;
};

inline constexpr double kMaxCompositionTerms = 1e8;

// Expected number of (k+2)-cliques through a fixed edge uv when u and v reach
// the blocks only through inserted edges, blocks are internally complete
// before deletion, and cross-block pairs are inserted independently:
//   q^{2k} sum_{x_1+..+x_m = k} prod C(N_i, x_i) q^{(k^2 - sum x_i^2)/2}
//          (1-p)^{sum C(x_i, 2)}.
// Zero when k exceeds sum N_i. Throws invalid_argument beyond
// kMaxCompositionTerms compositions.
LogValue expected_uv_cliques(const BlockProfile& profile);

// Two cliques around u (Nu vertices, u included) and v (Nv, v included),
// joined only by inserted edges:
//   sum_{x1+x2=k} C(Nu-1,x1) C(Nv-1,x2) q^{(x1+1)(x2+1)-1}
//                 (1-p)^{C(x1+1,2)+C(x2+1,2)}.
LogValue expected_uv_cliques_two_balls(std::size_t nu, std::size_t nv, std::size_t k,
                                       double q, double p);

struct ErCliqueParams {
  double N = 0.0;
  double pbar = 0.0;
  std::size_t k = 0;
  LogValue zeta;        // expected number of k-cliques
  LogValue delta_star;  // sum over overlapping j of P[B_j | B_i]
  LogValue delta;       // zeta * delta_star
};

// k = floor(log_{1/pbar} N) unless forced; requires 2 <= k <= N.
ErCliqueParams er_clique_quantities(std::size_t N, double pbar,
                                    std::optional<std::size_t> forced_k = std::nullopt);

struct JansonBounds {
  LogValue plain;                    // e^{-zeta + Delta/2}
  std::optional<LogValue> extended;  // e^{-zeta^2 / (2 Delta)}, only if Delta >= zeta
};

JansonBounds janson_bounds(double zeta, double delta);

// Every quantity above for one parameter set, as a JSON object.
struct BoundsQuery {
  ModelParams model;
  std::optional<BlockProfile> profile;
  std::optional<std::size_t> er_n;
  double er_pbar = 0.5;
};
nlohmann::ordered_json bounds_report(const BoundsQuery& query);

}  // namespace rggclique
