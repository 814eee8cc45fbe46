#include "rggclique/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rggclique/errors.hpp"

namespace rggclique {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_choose(double n, double k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// exponent * ln(base), with 0 * ln(0) = 0.
double log_pow(double base, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (base == 0.0) return kNegInf;
  return exponent * std::log(base);
}

// Accumulates log(sum exp(x_i)) without overflow.
class LogSum {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      acc_ += std::exp(x - max_);
    } else {
      acc_ = acc_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double log() const { return max_ == kNegInf ? kNegInf : max_ + std::log(acc_); }

 private:
  double max_ = kNegInf;
  double acc_ = 0.0;
};

LogValue from_log(double log) { return {log, std::exp(log)}; }

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

double choose2(double x) { return x * (x - 1) / 2; }

nlohmann::ordered_json log_value_json(const LogValue& v) {
  nlohmann::ordered_json j;
  j["value"] = v.value;
  j["log"] = std::isfinite(v.log) ? nlohmann::ordered_json(v.log) : nullptr;
  return j;
}

}  // namespace

void ModelParams::validate() const {
  if (!(n >= 2)) throw invalid_argument("n must be at least 2");
  if (!(s > 0.0 && s <= 1.0)) throw invalid_argument("s must lie in (0, 1]");
  if (!(rho >= 1.0)) throw invalid_argument("rho must be at least 1");
  require_probability(p, "p");
  require_probability(q, "q");
  if (!(K >= 2)) throw invalid_argument("K must be at least 2");
  if (!(c1 > 0 && c2 > 0 && c3 > 0)) throw invalid_argument("constants c1..c3 must be positive");
}

double assumption_a_s_min(double n) {
  if (!(n >= 2)) throw invalid_argument("n must be at least 2");
  return 13.0 * std::log(n) / n;
}

double tau_good_edge_bound(double p, double s, double n) {
  if (!(p > 0.0 && p < 1.0)) {
    throw invalid_argument("tau bound needs 0 < p < 1; use sn/4 when p = 0");
  }
  const double sn = s * n;
  if (!(sn > 1.0)) throw invalid_argument("tau bound needs sn > 1");
  return (2.0 / 3.0) * std::log(sn) / -std::log1p(-p);
}

double q_threshold(const ModelParams& params, bool combined) {
  params.validate();
  double second = params.c2 * std::pow(1.0 / params.n, params.c3 / params.K) * params.K /
                  (params.s * params.n);
  if (combined) {
    if (!(params.p < 1.0)) throw invalid_argument("combined q threshold needs p < 1");
    second /= std::sqrt(1.0 - params.p);
  }
  return std::min(params.c1, second);
}

void BlockProfile::validate() const {
  require_probability(q, "q");
  require_probability(p, "p");
}

LogValue expected_uv_cliques(const BlockProfile& profile) {
  profile.validate();
  const std::size_t m = profile.blocks.size();
  const std::size_t k = profile.k;
  std::size_t total = 0;
  for (auto b : profile.blocks) total += b;
  if (k == 0) return from_log(0.0);
  if (k > total) return from_log(kNegInf);

  // Number of bounded compositions, to refuse runaway enumerations up front.
  std::vector<double> ways(k + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t t = 0; t <= k; ++t) {
      if (ways[t] == 0.0) continue;
      for (std::size_t x = 0; x <= profile.blocks[i] && t + x <= k; ++x) next[t + x] += ways[t];
    }
    ways.swap(next);
  }
  if (ways[k] * static_cast<double>(std::max<std::size_t>(m, 1)) > kMaxCompositionTerms) {
    throw invalid_argument("expected_uv_cliques: more than 1e8 composition terms");
  }

  // Suffix capacities prune compositions that cannot reach k.
  std::vector<std::size_t> suffix(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + profile.blocks[i];

  const double lq = profile.q;
  const double lp = 1.0 - profile.p;
  const double kk = static_cast<double>(k);
  LogSum sum;
  // Recursive composition; `acc` collects log C(N_i, x_i), `sq` sum x_i^2,
  // `pairs` sum C(x_i, 2).
  auto rec = [&](auto&& self, std::size_t i, std::size_t left, double acc, double sq,
                 double pairs) -> void {
    if (i == m) {
      if (left != 0) return;
      const double term = acc + log_pow(lq, 2 * kk + (kk * kk - sq) / 2) + log_pow(lp, pairs);
      sum.add(term);
      return;
    }
    if (suffix[i] < left) return;
    const std::size_t hi = std::min(left, profile.blocks[i]);
    for (std::size_t x = 0; x <= hi; ++x) {
      const double xd = static_cast<double>(x);
      self(self, i + 1, left - x,
           acc + log_choose(static_cast<double>(profile.blocks[i]), xd), sq + xd * xd,
           pairs + choose2(xd));
    }
  };
  rec(rec, 0, k, 0.0, 0.0, 0.0);
  return from_log(sum.log());
}

LogValue expected_uv_cliques_two_balls(std::size_t nu, std::size_t nv, std::size_t k,
                                       double q, double p) {
  if (nu < 1 || nv < 1) throw invalid_argument("two-ball sizes must be at least 1");
  require_probability(q, "q");
  require_probability(p, "p");
  if (k > (nu - 1) + (nv - 1)) return from_log(kNegInf);
  LogSum sum;
  for (std::size_t x1 = 0; x1 <= k; ++x1) {
    const std::size_t x2 = k - x1;
    if (x1 > nu - 1 || x2 > nv - 1) continue;
    const double a = static_cast<double>(x1);
    const double b = static_cast<double>(x2);
    sum.add(log_choose(static_cast<double>(nu - 1), a) +
            log_choose(static_cast<double>(nv - 1), b) +
            log_pow(q, (a + 1) * (b + 1) - 1) +
            log_pow(1.0 - p, choose2(a + 1) + choose2(b + 1)));
  }
  return from_log(sum.log());
}

ErCliqueParams er_clique_quantities(std::size_t N, double pbar,
                                    std::optional<std::size_t> forced_k) {
  if (!(pbar > 0.0 && pbar < 1.0)) throw invalid_argument("pbar must lie in (0, 1)");
  if (N < 2) throw invalid_argument("N must be at least 2");
  const double Nd = static_cast<double>(N);
  std::size_t k = 0;
  if (forced_k) {
    k = *forced_k;
  } else {
    // floor(log_{1/pbar} N), nudged so exact powers land on the integer.
    const double x = std::log(Nd) / -std::log(pbar);
    k = static_cast<std::size_t>(std::floor(x + 1e-12));
  }
  if (k < 2 || k > N) {
    throw invalid_argument("clique size k = " + std::to_string(k) + " outside [2, N]");
  }
  const double kd = static_cast<double>(k);
  const double lp = std::log(pbar);

  ErCliqueParams out;
  out.N = Nd;
  out.pbar = pbar;
  out.k = k;
  const double log_zeta = log_choose(Nd, kd) + choose2(kd) * lp;
  out.zeta = from_log(log_zeta);
  LogSum ds;
  for (std::size_t l = 2; l + 1 <= k; ++l) {
    const double ld = static_cast<double>(l);
    ds.add(log_choose(kd, ld) + (choose2(kd) - choose2(ld)) * lp +
           log_choose(Nd - kd, kd - ld));
  }
  out.delta_star = from_log(ds.log());
  out.delta = from_log(log_zeta + ds.log());
  return out;
}

JansonBounds janson_bounds(double zeta, double delta) {
  if (!(zeta > 0.0)) throw invalid_argument("janson bounds need zeta > 0");
  if (!(delta >= 0.0)) throw invalid_argument("janson bounds need delta >= 0");
  JansonBounds out;
  out.plain = from_log(-zeta + delta / 2.0);
  if (delta >= zeta) out.extended = from_log(-zeta * zeta / (2.0 * delta));
  return out;
}

nlohmann::ordered_json bounds_report(const BoundsQuery& query) {
  const auto& m = query.model;
  m.validate();
  nlohmann::ordered_json j;
  nlohmann::ordered_json params;
  params["n"] = m.n;
  params["s"] = m.s;
  params["rho"] = m.rho;
  params["p"] = m.p;
  params["q"] = m.q;
  params["K"] = m.K;
  params["c1"] = m.c1;
  params["c2"] = m.c2;
  params["c3"] = m.c3;
  j["params"] = params;

  const double s_min = assumption_a_s_min(m.n);
  j["assumption_a"] = {{"s_min", s_min}, {"holds", m.s >= s_min}};
  j["sn"] = m.s * m.n;
  j["tau_insertion_only"] = m.s * m.n / 4.0;
  if (m.p > 0.0 && m.p < 1.0 && m.s * m.n > 1.0) {
    j["tau_good_edge_bound"] = tau_good_edge_bound(m.p, m.s, m.n);
  } else {
    j["tau_good_edge_bound"] = nullptr;
  }
  j["q_threshold"] = q_threshold(m, false);
  j["q_threshold_combined"] = m.p < 1.0 ? nlohmann::ordered_json(q_threshold(m, true)) : nullptr;

  if (query.profile) {
    const auto& pr = *query.profile;
    nlohmann::ordered_json e;
    e["blocks"] = pr.blocks;
    e["k"] = pr.k;
    e["q"] = pr.q;
    e["p"] = pr.p;
    e["expected"] = log_value_json(expected_uv_cliques(pr));
    j["uv_cliques"] = e;
  }
  if (query.er_n) {
    const auto er = er_clique_quantities(*query.er_n, query.er_pbar);
    nlohmann::ordered_json e;
    e["N"] = *query.er_n;
    e["pbar"] = query.er_pbar;
    e["k"] = er.k;
    e["zeta"] = log_value_json(er.zeta);
    e["delta_star"] = log_value_json(er.delta_star);
    e["delta"] = log_value_json(er.delta);
    const auto jb = janson_bounds(er.zeta.value, er.delta.value);
    e["janson_plain"] = log_value_json(jb.plain);
    e["janson_extended"] = jb.extended ? log_value_json(*jb.extended) : nullptr;
    j["er_clique"] = e;
  }
  return j;
}

}  // namespace rggclique
