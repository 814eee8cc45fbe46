#include "clique_engine.hpp"

#include <algorithm>
#include <bit>

#include "rggclique/errors.hpp"

namespace rggclique::detail {

namespace {

inline void set_bit(std::uint64_t* row, std::size_t j) {
  row[j >> 6] |= std::uint64_t{1} << (j & 63);
}

template <class F>
inline void for_each_bit(const std::uint64_t* row, std::size_t words, F&& f) {
  for (std::size_t wi = 0; wi < words; ++wi) {
    std::uint64_t w = row[wi];
    while (w) {
      f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
}

// Smallest-last elimination order (Batagelj-Zaversnik bucket scheme).
// Initial ties are ordered by ascending local index.
std::vector<std::uint32_t> smallest_last(const std::vector<std::uint64_t>& raw,
                                         std::size_t w, std::size_t words) {
  std::vector<std::uint32_t> deg(w);
  std::size_t max_deg = 0;
  for (std::size_t i = 0; i < w; ++i) {
    std::size_t d = 0;
    for (std::size_t k = 0; k < words; ++k) d += std::popcount(raw[i * words + k]);
    deg[i] = static_cast<std::uint32_t>(d);
    max_deg = std::max(max_deg, d);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (std::size_t i = 0; i < w; ++i) ++bin[deg[i]];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    const std::size_t c = bin[d];
    bin[d] = start;
    start += c;
  }
  std::vector<std::uint32_t> vert(w);
  std::vector<std::size_t> pos(w);
  for (std::size_t i = 0; i < w; ++i) {
    pos[i] = bin[deg[i]]++;
    vert[pos[i]] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t d = max_deg + 1; d-- > 1;) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t k = 0; k < w; ++k) {
    const std::uint32_t v = vert[k];
    for_each_bit(raw.data() + v * words, words, [&](std::size_t u) {
      if (deg[u] > deg[v]) {
        const std::uint32_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const std::uint32_t x = vert[pw];
        if (u != x) {
          pos[u] = pw;
          vert[pu] = x;
          pos[x] = pu;
          vert[pw] = static_cast<std::uint32_t>(u);
        }
        ++bin[du];
        --deg[u];
      }
    });
  }
  return vert;  // elimination order
}

}  // namespace

OrderedSubgraph::OrderedSubgraph(const Graph& g, std::span<const Vertex> vertices)
    : sorted_ids_(vertices.begin(), vertices.end()) {
  const std::size_t w = vertices.size();
  words_ = (w + 63) / 64;
  std::vector<std::uint64_t> raw(w * words_, 0);
  if (w > 0) {
    // Membership mask over global ids plus a global -> ascending-local map.
    const std::size_t n = g.vertex_count();
    thread_local std::vector<std::uint32_t> to_local;
    thread_local Bitset member;
    if (to_local.size() < n) to_local.resize(n);
    if (member.size() != n) member = Bitset(n);
    for (std::size_t i = 0; i < w; ++i) {
      member.set(vertices[i]);
      to_local[vertices[i]] = static_cast<std::uint32_t>(i);
    }
    const auto mw = member.words();
    for (std::size_t i = 0; i < w; ++i) {
      const auto gw = g.row(vertices[i]).words();
      std::uint64_t* ri = raw.data() + i * words_;
      for (std::size_t k = 0; k < mw.size(); ++k) {
        std::uint64_t x = gw[k] & mw[k];
        while (x) {
          set_bit(ri, to_local[(k << 6) + static_cast<std::size_t>(std::countr_zero(x))]);
          x &= x - 1;
        }
      }
    }
    for (std::size_t i = 0; i < w; ++i) member.reset(vertices[i]);
  }

  const auto elim = smallest_last(raw, w, words_);
  sorted_to_local_.resize(w);
  ids_.resize(w);
  for (std::size_t k = 0; k < w; ++k) {
    const std::uint32_t old = elim[w - 1 - k];
    sorted_to_local_[old] = static_cast<std::uint32_t>(k);
    ids_[k] = vertices[old];
  }
  rows_.assign(w * words_, 0);
  for (std::size_t k = 0; k < w; ++k) {
    const std::uint32_t old = elim[w - 1 - k];
    std::uint64_t* dst = rows_.data() + k * words_;
    for_each_bit(raw.data() + old * words_, words_,
                 [&](std::size_t j) { set_bit(dst, sorted_to_local_[j]); });
  }
}

std::size_t OrderedSubgraph::local_index(Vertex global) const noexcept {
  const auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), global);
  if (it == sorted_ids_.end() || *it != global) return ids_.size();
  return sorted_to_local_[static_cast<std::size_t>(it - sorted_ids_.begin())];
}

Bitset OrderedSubgraph::row_bitset(std::size_t local) const {
  Bitset b(size());
  auto words = b.words();
  std::copy(row(local), row(local) + words_, words.begin());
  return b;
}

Bitset OrderedSubgraph::all() const {
  Bitset b(size());
  for (std::size_t i = 0; i < size(); ++i) b.set(i);
  return b;
}

CliqueSearch::CliqueSearch(const OrderedSubgraph& h, std::uint64_t budget)
    : h_(h), budget_(budget), words_(h.words()) {
  const std::size_t depth = h.size() + 2;
  candidates_.assign(depth * std::max<std::size_t>(words_, 1), 0);
  uncolored_.assign(words_, 0);
  color_class_.assign(words_, 0);
  order_.resize(depth);
  color_.resize(depth);
}

std::vector<std::uint32_t> CliqueSearch::maximum(const Bitset& candidates,
                                                 std::size_t floor) {
  best_size_ = floor;
  stop_at_ = SIZE_MAX;
  run(candidates);
  if (best_.size() <= floor) return {};
  std::vector<std::uint32_t> out = best_;
  std::sort(out.begin(), out.end());
  return out;
}

bool CliqueSearch::exists(const Bitset& candidates, std::size_t target) {
  if (target == 0) return true;
  if (candidates.count() < target) return false;
  if (greedy_reaches(candidates, target)) return true;
  best_size_ = target - 1;
  stop_at_ = target;
  run(candidates);
  return done_;
}

bool CliqueSearch::greedy_reaches(const Bitset& candidates, std::size_t target) {
  // Take the first candidate in search order and restrict to its neighbors.
  std::uint64_t* cur = candidates_.data();
  std::copy(candidates.words().begin(), candidates.words().end(), cur);
  std::size_t size = 0;
  std::size_t wi = 0;
  while (true) {
    while (wi < words_ && cur[wi] == 0) ++wi;
    if (wi == words_) return false;
    const std::size_t v = (wi << 6) + static_cast<std::size_t>(std::countr_zero(cur[wi]));
    if (++size >= target) return true;
    const std::uint64_t* nv = h_.row(v);
    for (std::size_t x = wi; x < words_; ++x) cur[x] &= nv[x];
  }
}

void CliqueSearch::run(const Bitset& candidates) {
  nodes_ = 0;
  done_ = false;
  current_.clear();
  best_.clear();
  if (candidates.none() || h_.size() == 0) return;
  std::copy(candidates.words().begin(), candidates.words().end(), candidates_.begin());
  expand(0);
}

void CliqueSearch::expand(std::size_t depth) {
  if (++nodes_ > budget_) throw BudgetExceeded(budget_);

  std::uint64_t* cand = candidates_.data() + depth * words_;
  auto& order = order_[depth];
  auto& color = color_[depth];
  order.clear();
  color.clear();

  // Greedy sequential coloring in index order; each color class is an
  // independent set, so current + color is an upper bound on any clique
  // extending `current` through a vertex of that class or lower.
  // Vertices colored below kmin can never lift current past best_size_, so
  // they are colored (to keep classes independent) but not recorded.
  const std::size_t kmin =
      best_size_ + 1 > current_.size() ? best_size_ + 1 - current_.size() : 1;
  std::copy(cand, cand + words_, uncolored_.begin());
  std::uint32_t k = 0;
  std::size_t first_word = 0;
  while (true) {
    while (first_word < words_ && uncolored_[first_word] == 0) ++first_word;
    if (first_word == words_) break;
    ++k;
    const bool record = k >= kmin;
    std::copy(uncolored_.begin() + static_cast<std::ptrdiff_t>(first_word),
              uncolored_.end(), color_class_.begin() + static_cast<std::ptrdiff_t>(first_word));
    for (std::size_t wi = first_word; wi < words_; ++wi) {
      while (color_class_[wi]) {
        const std::size_t v = (wi << 6) + static_cast<std::size_t>(std::countr_zero(color_class_[wi]));
        const std::uint64_t vbit = std::uint64_t{1} << (v & 63);
        uncolored_[wi] &= ~vbit;
        color_class_[wi] &= ~vbit;
        const std::uint64_t* nv = h_.row(v);
        for (std::size_t x = wi; x < words_; ++x) color_class_[x] &= ~nv[x];
        if (record) {
          order.push_back(static_cast<std::uint32_t>(v));
          color.push_back(k);
        }
      }
    }
  }

  for (std::size_t i = order.size(); i-- > 0;) {
    if (current_.size() + color[i] <= best_size_) return;
    const std::uint32_t v = order[i];
    current_.push_back(v);
    if (current_.size() >= stop_at_) {
      best_ = current_;
      best_size_ = current_.size();
      done_ = true;
      return;
    }
    std::uint64_t* next = candidates_.data() + (depth + 1) * words_;
    const std::uint64_t* nv = h_.row(v);
    bool empty = true;
    for (std::size_t x = 0; x < words_; ++x) {
      next[x] = cand[x] & nv[x];
      empty = empty && next[x] == 0;
    }
    if (empty) {
      if (current_.size() > best_size_) {
        best_ = current_;
        best_size_ = current_.size();
      }
    } else {
      expand(depth + 1);
      if (done_) return;
    }
    current_.pop_back();
    cand[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }
}

}  // namespace rggclique::detail
