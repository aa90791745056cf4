#pragma once

// Critical pseudo-bipartite scenarios.
//
// Fix an anchor k and raise w(v_b) for a vertex b inside the all-upper
// cluster fronted by k. With upper weights on k..b-1 and lower weights past
// b, the first cluster of the R-sequence from k swallows the lower-weight
// clusters beyond b one at a time; each swallow happens at one weight of
// v_b. Those weights, for every k and b, plus the interval bounds, form the
// L side of the set. The R side is the same construction on the mirrored path.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "clusters.hpp"
#include "path_model.hpp"

namespace mmr {

struct DeltaEntry {
  Side side = Side::L;
  std::size_t k = 0;
  std::size_t b = 0;
  Rational delta;                 // w(v_b) - w_lower[b]
  std::size_t merged_until = 0;   // front of the swallowed cluster

  friend bool operator==(const DeltaEntry&, const DeltaEntry&) = default;
};

namespace detail {

class DeltaBuilder {
 public:
  explicit DeltaBuilder(const PathInstance& inst)
      : inst_(inst),
        n_(static_cast<int>(inst.size())),
        tc_(inst.tau * inst.capacity),
        r0_(inst, inst.w_lower, ChainDir::R),
        rm_(inst, inst.w_upper, ChainDir::R) {
    wl_.assign(n_ + 1, Rational(0));
    wu_.assign(n_ + 1, Rational(0));
    for (int i = 0; i < n_; ++i) {
      wl_[i + 1] = wl_[i] + inst.w_lower[i];
      wu_[i + 1] = wu_[i] + inst.w_upper[i];
    }
    key0_.resize(n_);
    for (int i = 0; i < n_; ++i) key0_[i] = inst.x[i] * tc_ - wl_[i];
  }

  template <class Emit>
  void anchor(int k, Emit&& emit) const {
    const int l = rm_.next(k) - 1;
    for (int b = k; b <= l && b + 1 < n_; ++b) {
      // Weight of v_b at which the cluster from k reaches front g:
      //   key0[g] + wl[b+1] - x_k*tc - (wu[b] - wu[k]).
      const Rational shift = wl_[b + 1] - inst_.x[k] * tc_ - (wu_[b] - wu_[k]);
      const Rational& lo = inst_.w_lower[b];
      const Rational& up = inst_.w_upper[b];
      for (int g = r0_.first_key_at_least(b + 1, key0_, lo - shift); g != n_; g = r0_.next(g)) {
        const Rational wv = key0_[g] + shift;
        if (up < wv) break;
        emit(k, b, wv - lo, g);
      }
    }
  }

 private:
  const PathInstance& inst_;
  int n_;
  Rational tc_;
  ClusterChains r0_;
  ClusterChains rm_;
  std::vector<Rational> wl_;
  std::vector<Rational> wu_;
  std::vector<Rational> key0_;
};

}  // namespace detail

inline std::vector<DeltaEntry> compute_delta_R(const PathInstance& inst, std::size_t k) {
  std::vector<DeltaEntry> out;
  detail::DeltaBuilder(inst).anchor(static_cast<int>(k), [&](int kk, int b, const Rational& d, int g) {
    out.push_back({Side::L, static_cast<std::size_t>(kk), static_cast<std::size_t>(b), d,
                   static_cast<std::size_t>(g)});
  });
  return out;
}

inline Scenario delta_to_scenario(const PathInstance& inst, const DeltaEntry& e) {
  return PseudoBipartite{e.side, e.b, inst.w_lower[e.b] + e.delta};
}

struct CriticalScenarioSet {
  // weights[L][b], weights[R][b]: sorted distinct values of w(v_b) for the
  // scenarios L(b, .) and R(b, .); both interval bounds always present.
  std::vector<std::vector<Rational>> left;
  std::vector<std::vector<Rational>> right;
  std::vector<DeltaEntry> entries;          // sorted by (side, b, delta)
  std::vector<PseudoBipartite> scenarios;   // distinct weight vectors; L side then R side, each by (b, wb)

  [[nodiscard]] const std::vector<Rational>& group(Side side, std::size_t b) const {
    return side == Side::L ? left[b] : right[b];
  }
  [[nodiscard]] std::size_t group_total() const {
    std::size_t t = 0;
    for (const auto& g : left) t += g.size();
    for (const auto& g : right) t += g.size();
    return t;
  }
};

inline CriticalScenarioSet enumerate_S_star(const PathInstance& inst) {
  const std::size_t n = inst.size();
  CriticalScenarioSet out;
  out.left.resize(n);
  out.right.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    for (auto* g : {&out.left[b], &out.right[b]}) {
      g->push_back(inst.w_lower[b]);
      g->push_back(inst.w_upper[b]);
    }
  }
  {
    detail::DeltaBuilder builder(inst);
    for (std::size_t k = 0; k < n; ++k) {
      builder.anchor(static_cast<int>(k), [&](int kk, int b, const Rational& d, int g) {
        out.entries.push_back({Side::L, static_cast<std::size_t>(kk), static_cast<std::size_t>(b), d,
                               static_cast<std::size_t>(g)});
        out.left[b].push_back(inst.w_lower[b] + d);
      });
    }
  }
  {
    const PathInstance m = mirror(inst);
    detail::DeltaBuilder builder(m);
    for (std::size_t k = 0; k < n; ++k) {
      builder.anchor(static_cast<int>(k), [&](int kk, int b, const Rational& d, int g) {
        const std::size_t ob = n - 1 - static_cast<std::size_t>(b);
        out.entries.push_back({Side::R, n - 1 - static_cast<std::size_t>(kk), ob, d,
                               n - 1 - static_cast<std::size_t>(g)});
        out.right[ob].push_back(inst.w_lower[ob] + d);
      });
    }
  }
  for (auto* side : {&out.left, &out.right}) {
    for (auto& g : *side) {
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const DeltaEntry& a, const DeltaEntry& b) {
    if (a.side != b.side) return a.side == Side::L;
    if (a.b != b.b) return a.b < b.b;
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.k != b.k) return a.k < b.k;
    return a.merged_until < b.merged_until;
  });

  // Distinct weight vectors. L(b, w_upper[b]) is L(b+1, w_lower[b+1]) and
  // R(b, w_upper[b]) is R(b-1, w_lower[b-1]), so only w < w_upper[b] is kept
  // except at the far end. An R scenario repeats an L one only when it is the
  // all-lower or all-upper vector, or when it has a single free vertex.
  std::vector<std::size_t> free_prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    free_prefix[i + 1] = free_prefix[i] + (inst.w_lower[i] < inst.w_upper[i] ? 1 : 0);
  }
  for (std::size_t b = 0; b < n; ++b) {
    for (const auto& w : out.left[b]) {
      if (w < inst.w_upper[b] || b + 1 == n) out.scenarios.push_back({Side::L, b, w});
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t free_left = free_prefix[b];
    const std::size_t free_right = free_prefix[n] - free_prefix[b + 1];
    for (const auto& w : out.right[b]) {
      if (!(w < inst.w_upper[b]) && b != 0) continue;
      if (free_right == 0 && w == inst.w_lower[b]) continue;
      if (free_left == 0 && w == inst.w_upper[b]) continue;
      if (free_left == 0 && free_right == 0 &&
          std::binary_search(out.left[b].begin(), out.left[b].end(), w)) {
        continue;
      }
      out.scenarios.push_back({Side::R, b, w});
    }
  }
  return out;
}

}  // namespace mmr
