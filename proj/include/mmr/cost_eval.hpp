#pragma once

// Aggregate evacuation time Phi^s.
//
// phi_naive walks the clusters of an arbitrary scenario directly. EvalContext
// answers the same question for pseudo-bipartite scenarios in O(log n) using
// the cluster chains of the all-lower and all-upper scenarios: left of the
// boundary the upper chain is exact, right of it the lower chain is exact,
// and only the one cluster straddling the boundary has to be rebuilt.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "clusters.hpp"
#include "path_model.hpp"

namespace mmr {

namespace detail {

// Greedy R-clusters of vertices f..n-1 evacuating toward x <= x_f.
inline Rational r_chain_cost(const PathInstance& inst, const std::vector<Rational>& w, std::size_t f,
                             const Rational& x) {
  const std::size_t n = inst.size();
  const Rational tc = inst.tau * inst.capacity;
  Rational total = 0;
  std::size_t j = f;
  while (j < n) {
    const std::size_t front = j;
    Rational lam = w[j++];
    while (j < n && (inst.x[j] - inst.x[front]) * tc <= lam) lam += w[j++];
    total += (inst.x[front] - x) * lam * inst.tau + intra_cost(lam, inst.capacity);
  }
  return total;
}

// Greedy L-clusters of vertices f, f-1, ..., 0 evacuating toward x >= x_f.
inline Rational l_chain_cost(const PathInstance& inst, const std::vector<Rational>& w, std::ptrdiff_t f,
                             const Rational& x) {
  const Rational tc = inst.tau * inst.capacity;
  Rational total = 0;
  std::ptrdiff_t j = f;
  while (j >= 0) {
    const std::ptrdiff_t front = j;
    Rational lam = w[j--];
    while (j >= 0 && (inst.x[front] - inst.x[j]) * tc <= lam) lam += w[j--];
    total += (x - inst.x[front]) * lam * inst.tau + intra_cost(lam, inst.capacity);
  }
  return total;
}

}  // namespace detail

inline Rational phi_naive(const PathInstance& inst, const std::vector<Rational>& w, const Location& loc) {
  const auto k = static_cast<std::ptrdiff_t>(loc.index);
  if (loc.is_vertex()) {
    return detail::l_chain_cost(inst, w, k - 1, loc.x) + detail::r_chain_cost(inst, w, loc.index + 1, loc.x);
  }
  return detail::l_chain_cost(inst, w, k, loc.x) + detail::r_chain_cost(inst, w, loc.index + 1, loc.x);
}

inline Rational phi_naive(const PathInstance& inst, const Scenario& s, const Location& loc) {
  return phi_naive(inst, scenario_weights(inst, s), loc);
}

// All vertex costs and all edge lines of one scenario in O(n).
struct ScenarioCosts {
  std::vector<Rational> vertex;
  std::vector<Line> edge;
};

inline ScenarioCosts scenario_costs(const PathInstance& inst, const std::vector<Rational>& w) {
  const ClusterChains r(inst, w, ChainDir::R);
  const ClusterChains l(inst, w, ChainDir::L);
  const int n = static_cast<int>(inst.size());
  ScenarioCosts out;
  out.vertex.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Rational left = i > 0 ? l.chain_cost(i - 1, inst.x[i]) : Rational(0);
    const Rational right = i + 1 < n ? r.chain_cost(i + 1, inst.x[i]) : Rational(0);
    out.vertex.push_back(left + right);
  }
  for (int k = 0; k + 1 < n; ++k) out.edge.push_back(l.chain_line(k) + r.chain_line(k + 1));
  return out;
}

inline SinkResult leftmost_min_vertex(const PathInstance& inst, const std::vector<Rational>& cost) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cost.size(); ++i) {
    if (cost[i] < cost[best]) best = i;
  }
  return {Location::vertex(inst, best), cost[best]};
}

inline SinkResult minsum_naive(const PathInstance& inst, const Scenario& s) {
  return leftmost_min_vertex(inst, scenario_costs(inst, scenario_weights(inst, s)).vertex);
}

// Fast evaluation for L-type scenarios on one orientation of the path.
class SideContext {
 public:
  explicit SideContext(PathInstance inst)
      : inst_(std::move(inst)),
        n_(static_cast<int>(inst_.size())),
        tc_(inst_.tau * inst_.capacity),
        half_inv_cap_(Rational(1) / (Rational(2) * inst_.capacity)),
        r0_(inst_, inst_.w_lower, ChainDir::R),
        rm_(inst_, inst_.w_upper, ChainDir::R),
        l0_(inst_, inst_.w_lower, ChainDir::L),
        lm_(inst_, inst_.w_upper, ChainDir::L) {
    wl_.assign(n_ + 1, Rational(0));
    wu_.assign(n_ + 1, Rational(0));
    for (int i = 0; i < n_; ++i) {
      wl_[i + 1] = wl_[i] + inst_.w_lower[i];
      wu_[i + 1] = wu_[i] + inst_.w_upper[i];
    }
    key0_.resize(n_);
    keym_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      key0_[i] = inst_.x[i] * tc_ - wl_[i];
      keym_[i] = wu_[i + 1] - inst_.x[i] * tc_;
    }
  }

  [[nodiscard]] const PathInstance& instance() const { return inst_; }
  [[nodiscard]] int size() const { return n_; }

  // Cost of the vertices f..n-1 toward a sink at x <= x_f under L(b, w).
  [[nodiscard]] Line right_part(int f, int b, const Rational& w) const {
    if (f >= n_) return {};
    if (f > b) return r0_.chain_line(f);
    const int u = right_front(f, b);
    return right_prefix(f, u) + right_tail(u, b, w);
  }

  // Cost of the vertices f, f-1, ..., 0 toward a sink at x >= x_f under L(b, w).
  [[nodiscard]] Line left_part(int f, int b, const Rational& w) const {
    if (f < 0) return {};
    if (f < b) return lm_.chain_line(f);
    const int u = left_front(f, b);
    return left_prefix(f, u) + left_tail(u, b, w);
  }

  // Building blocks of right_part for f <= b: the clusters before the one
  // holding b follow the upper chain; the rest depends on w.
  [[nodiscard]] int right_front(int f, int b) const { return rm_.last_front_within(f, b); }
  [[nodiscard]] Line right_prefix(int f, int u) const { return rm_.range_line(f, u); }
  [[nodiscard]] Line right_tail(int u, int b, const Rational& w) const {
    const Rational carried = wu_[b] - wu_[u];
    const Rational bound = w + carried + inst_.x[u] * tc_ - wl_[b + 1];
    const int h = b + 1 < n_ ? r0_.first_key_above(b + 1, key0_, bound) : n_;
    const Rational lam = carried + w + (wl_[h] - wl_[b + 1]);
    const Rational tl = inst_.tau * lam;
    return Line{-tl, tl * inst_.x[u] + lam * lam * half_inv_cap_} + r0_.chain_line(h);
  }

  // Same for left_part with f >= b, mirrored roles of the chains.
  [[nodiscard]] int left_front(int f, int b) const { return l0_.last_front_within(f, b); }
  [[nodiscard]] Line left_prefix(int f, int u) const { return l0_.range_line(f, u); }
  [[nodiscard]] Line left_tail(int u, int b, const Rational& w) const {
    const Rational carried = wl_[u + 1] - wl_[b + 1];
    const Rational bound = w + carried - inst_.x[u] * tc_ + wu_[b];
    const int g = b >= 1 ? lm_.first_key_above(b - 1, keym_, bound) : -1;
    const Rational lam = carried + w + (wu_[b] - wu_[g + 1]);
    const Rational tl = inst_.tau * lam;
    return Line{tl, lam * lam * half_inv_cap_ - tl * inst_.x[u]} + lm_.chain_line(g);
  }

  [[nodiscard]] Line lower_right_chain(int f) const { return r0_.chain_line(f); }
  [[nodiscard]] Line upper_left_chain(int f) const { return lm_.chain_line(f); }
  [[nodiscard]] const ClusterChains& lower_r() const { return r0_; }
  [[nodiscard]] const ClusterChains& upper_r() const { return rm_; }
  [[nodiscard]] const ClusterChains& lower_l() const { return l0_; }
  [[nodiscard]] const ClusterChains& upper_l() const { return lm_; }

  [[nodiscard]] Rational vertex_cost(int b, const Rational& w, int i) const {
    const Rational& x = inst_.x[i];
    return left_part(i - 1, b, w).at(x) + right_part(i + 1, b, w).at(x);
  }

  // Phi on the open edge between k and k+1.
  [[nodiscard]] Line edge_line(int b, const Rational& w, int k) const {
    return left_part(k, b, w) + right_part(k + 1, b, w);
  }

 private:
  PathInstance inst_;
  int n_;
  Rational tc_;
  Rational half_inv_cap_;
  ClusterChains r0_;
  ClusterChains rm_;
  ClusterChains l0_;
  ClusterChains lm_;
  std::vector<Rational> wl_;  // wl_[i] = w_lower[0] + ... + w_lower[i-1]
  std::vector<Rational> wu_;
  std::vector<Rational> key0_;
  std::vector<Rational> keym_;
};

// SideContext specialised to one boundary b. The fronts of the clusters
// holding b and the weight-independent prefixes are tabulated once, and the
// weight-dependent tails are memoised per front until the weight changes.
// Not thread-safe: the memo is mutable.
class BoundaryView {
 public:
  BoundaryView(const SideContext& ctx, int b) : ctx_(&ctx), b_(b), n_(ctx.size()) {
    const auto& rm = ctx.upper_r();
    const auto& l0 = ctx.lower_l();
    r_front_.assign(b + 1, 0);
    r_prefix_.resize(b + 1);
    for (int f = b; f >= 0; --f) {
      const int nx = rm.next(f);
      r_front_[f] = nx > b ? f : r_front_[nx];
      r_prefix_[f] = ctx.right_prefix(f, r_front_[f]);
    }
    l_front_.assign(n_ - b, 0);
    l_prefix_.resize(n_ - b);
    for (int f = b; f < n_; ++f) {
      const int nx = l0.next(f);
      l_front_[f - b] = nx < b ? f : l_front_[nx - b];
      l_prefix_[f - b] = ctx.left_prefix(f, l_front_[f - b]);
    }
    r_tail_.resize(n_);
    l_tail_.resize(n_);
    r_stamp_.assign(n_, 0);
    l_stamp_.assign(n_, 0);
  }

  [[nodiscard]] int boundary() const { return b_; }
  [[nodiscard]] const SideContext& context() const { return *ctx_; }

  [[nodiscard]] Line right_part(int f, const Rational& w) const {
    if (f >= n_) return {};
    if (f > b_) return ctx_->lower_right_chain(f);
    use(w);
    const int u = r_front_[f];
    if (r_stamp_[u] != gen_) {
      r_tail_[u] = ctx_->right_tail(u, b_, w);
      r_stamp_[u] = gen_;
    }
    return r_prefix_[f] + r_tail_[u];
  }

  [[nodiscard]] Line left_part(int f, const Rational& w) const {
    if (f < 0) return {};
    if (f < b_) return ctx_->upper_left_chain(f);
    use(w);
    const int u = l_front_[f - b_];
    if (l_stamp_[u] != gen_) {
      l_tail_[u] = ctx_->left_tail(u, b_, w);
      l_stamp_[u] = gen_;
    }
    return l_prefix_[f - b_] + l_tail_[u];
  }

  [[nodiscard]] Rational vertex_cost(const Rational& w, int i) const {
    const Rational& x = ctx_->instance().x[i];
    return left_part(i - 1, w).at(x) + right_part(i + 1, w).at(x);
  }

  [[nodiscard]] Line edge_line(const Rational& w, int k) const { return left_part(k, w) + right_part(k + 1, w); }

 private:
  void use(const Rational& w) const {
    if (gen_ == 0 || !(w == w_)) {
      w_ = w;
      ++gen_;
    }
  }

  const SideContext* ctx_;
  int b_;
  int n_;
  std::vector<int> r_front_;
  std::vector<Line> r_prefix_;
  std::vector<int> l_front_;
  std::vector<Line> l_prefix_;
  mutable std::vector<Line> r_tail_;
  mutable std::vector<Line> l_tail_;
  mutable std::vector<std::uint64_t> r_stamp_;
  mutable std::vector<std::uint64_t> l_stamp_;
  mutable std::uint64_t gen_ = 0;
  mutable Rational w_;
};

class EvalContext {
 public:
  explicit EvalContext(const PathInstance& inst) : inst_(inst), frames_{SideContext(inst), SideContext(mirror(inst))} {
    inst_.validate();
  }

  [[nodiscard]] const PathInstance& instance() const { return inst_; }
  [[nodiscard]] int size() const { return static_cast<int>(inst_.size()); }

  // The frame in which a scenario of the given side is L-type.
  [[nodiscard]] const SideContext& frame(Side side) const { return frames_[side == Side::L ? 0 : 1]; }

  [[nodiscard]] Rational phi_vertex(const PseudoBipartite& s, std::size_t i) const {
    check(s);
    const int n = size();
    if (s.side == Side::L) return frames_[0].vertex_cost(static_cast<int>(s.b), s.wb, static_cast<int>(i));
    return frames_[1].vertex_cost(n - 1 - static_cast<int>(s.b), s.wb, n - 1 - static_cast<int>(i));
  }

  // Phi on the open edge k as a line in the original coordinate.
  [[nodiscard]] Line edge_line(const PseudoBipartite& s, std::size_t k) const {
    check(s);
    const int n = size();
    if (s.side == Side::L) return frames_[0].edge_line(static_cast<int>(s.b), s.wb, static_cast<int>(k));
    const Line m = frames_[1].edge_line(n - 1 - static_cast<int>(s.b), s.wb, n - 2 - static_cast<int>(k));
    return unmirror(m);
  }

  [[nodiscard]] Rational phi_point(const PseudoBipartite& s, const Rational& x) const {
    const Location loc = Location::at(inst_, x);
    if (loc.is_vertex()) return phi_vertex(s, loc.index);
    return edge_line(s, loc.index).at(x);
  }

  // A line a'x' + c' in mirrored coordinates, rewritten in x = X - x'.
  [[nodiscard]] Line unmirror(const Line& m) const {
    return {-m.slope, m.slope * inst_.x.back() + m.intercept};
  }

 private:
  void check(const PseudoBipartite& s) const {
    if (s.b >= inst_.size() || s.wb < inst_.w_lower[s.b] || inst_.w_upper[s.b] < s.wb) {
      throw std::invalid_argument("scenario outside the weight intervals");
    }
  }

  PathInstance inst_;
  SideContext frames_[2];
};

inline Rational phi_vertex_fast(const EvalContext& ctx, const Scenario& s, std::size_t i) {
  const auto* p = std::get_if<PseudoBipartite>(&s);
  if (p == nullptr) throw std::invalid_argument("fast evaluation needs a pseudo-bipartite scenario");
  return ctx.phi_vertex(*p, i);
}

inline Rational phi_point_fast(const EvalContext& ctx, const Scenario& s, const Rational& x) {
  const auto* p = std::get_if<PseudoBipartite>(&s);
  if (p == nullptr) throw std::invalid_argument("fast evaluation needs a pseudo-bipartite scenario");
  return ctx.phi_point(*p, x);
}

}  // namespace mmr
