#pragma once

// Cluster sequences under a fixed weight vector.
//
// An R-chain starting at vertex f lists the clusters formed by vertices
// f, f+1, ..., n-1 when they evacuate leftwards; an L-chain starting at f
// covers f, f-1, ..., 0 evacuating rightwards. The cluster fronted by f is
// the same in every chain that contains f as a front, so all chains of one
// direction share a single next-front array and suffix sums over it.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "path_model.hpp"

namespace mmr {

enum class ChainDir { R, L };

struct Cluster {
  std::size_t front = 0;
  std::size_t last = 0;
  Rational lambda;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ClusterSeq {
  ChainDir dir = ChainDir::R;
  std::size_t anchor = 0;
  std::vector<Cluster> clusters;
};

// Affine function slope * x + intercept.
struct Line {
  Rational slope;
  Rational intercept;

  [[nodiscard]] Rational at(const Rational& x) const { return slope * x + intercept; }

  friend Line operator+(const Line& a, const Line& b) {
    return {a.slope + b.slope, a.intercept + b.intercept};
  }
  friend Line operator-(const Line& a, const Line& b) {
    return {a.slope - b.slope, a.intercept - b.intercept};
  }
  friend bool operator==(const Line&, const Line&) = default;
};

inline Rational intra_cost(const Rational& lambda, const Rational& capacity) {
  return lambda * lambda / (Rational(2) * capacity);
}

class ClusterChains {
 public:
  ClusterChains(const PathInstance& inst, const std::vector<Rational>& w, ChainDir dir)
      : dir_(dir), n_(static_cast<int>(inst.size())), tau_(inst.tau), cap_(inst.capacity) {
    const int n = n_;
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("weight vector size mismatch");
    const Rational tc = inst.tau * inst.capacity;
    std::vector<Rational> pre(n + 1);  // pre[i] = w[0] + ... + w[i-1]
    for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] + w[i];
    next_.assign(n, end());
    lambda_.assign(n, Rational(0));
    sl_.assign(n + 1, Rational(0));
    sxl_.assign(n + 1, Rational(0));
    si_.assign(n + 1, Rational(0));
    auto absorb = [&](int f) {
      if (dir_ == ChainDir::R) {
        int j = f + 1;
        while (j < n && (inst.x[j] - inst.x[f]) * tc <= pre[j] - pre[f]) j = next_[j];
        next_[f] = j;
        lambda_[f] = pre[j] - pre[f];
      } else {
        int j = f - 1;
        while (j >= 0 && (inst.x[f] - inst.x[j]) * tc <= pre[f + 1] - pre[j + 1]) j = next_[j];
        next_[f] = j;
        lambda_[f] = pre[f + 1] - pre[j + 1];
      }
      ++created_;
      const int s = slot(f);
      const int t = slot(next_[f]);
      sl_[s] = lambda_[f] + sl_[t];
      sxl_[s] = inst.x[f] * lambda_[f] + sxl_[t];
      si_[s] = intra_cost(lambda_[f], cap_) + si_[t];
    };
    if (dir_ == ChainDir::R) {
      for (int f = n - 1; f >= 0; --f) absorb(f);
    } else {
      for (int f = 0; f < n; ++f) absorb(f);
    }
    build_jumps();
  }

  [[nodiscard]] ChainDir dir() const { return dir_; }
  [[nodiscard]] int size() const { return n_; }
  // Sentinel past the last vertex in chain direction: n for R, -1 for L.
  [[nodiscard]] int end() const { return dir_ == ChainDir::R ? n_ : -1; }
  [[nodiscard]] int next(int f) const { return next_[f]; }
  [[nodiscard]] const Rational& lambda(int f) const { return lambda_[f]; }
  [[nodiscard]] int last(int f) const { return dir_ == ChainDir::R ? next_[f] - 1 : next_[f] + 1; }
  [[nodiscard]] std::size_t clusters_created() const { return created_; }

  // Suffix sums along the chain from f (f may be the sentinel).
  [[nodiscard]] const Rational& sum_lambda(int f) const { return sl_[slot(f)]; }
  [[nodiscard]] const Rational& sum_x_lambda(int f) const { return sxl_[slot(f)]; }
  [[nodiscard]] const Rational& sum_intra(int f) const { return si_[slot(f)]; }

  // Cost of the chain from f as a function of the sink coordinate x, valid
  // for x on the sink side of f (x <= x_f for R, x >= x_f for L).
  [[nodiscard]] Line chain_line(int f) const { return range_line(f, end()); }

  // Same, restricted to the clusters from f up to (excluding) front u.
  [[nodiscard]] Line range_line(int f, int u) const {
    const Rational l = sum_lambda(f) - sum_lambda(u);
    const Rational xl = sum_x_lambda(f) - sum_x_lambda(u);
    const Rational in = sum_intra(f) - sum_intra(u);
    if (dir_ == ChainDir::R) return {-(tau_ * l), tau_ * xl + in};
    return {tau_ * l, in - tau_ * xl};
  }

  [[nodiscard]] Rational chain_cost(int f, const Rational& x) const { return chain_line(f).at(x); }

  // Last front on the chain from f that does not pass b (f must not pass b).
  // For R this is the front of the cluster containing b.
  [[nodiscard]] int last_front_within(int f, int b) const {
    auto within = [&](int v) { return dir_ == ChainDir::R ? (v != n_ && v <= b) : (v != -1 && v >= b); };
    int h = f;
    for (int l = static_cast<int>(jump_.size()) - 1; l >= 0; --l) {
      const int t = jump_[l][slot(h)];
      if (within(t)) h = t;
    }
    return h;
  }

  // First front h on the chain from g (g itself included) with key[h] > bound,
  // or the sentinel. key must increase strictly along every chain.
  [[nodiscard]] int first_key_above(int g, const std::vector<Rational>& key, const Rational& bound) const {
    if (g == end() || bound < key[g]) return g;
    int h = g;
    for (int l = static_cast<int>(jump_.size()) - 1; l >= 0; --l) {
      const int t = jump_[l][slot(h)];
      if (t != end() && !(bound < key[t])) h = t;
    }
    return next_[h];
  }

  // As above with key[h] >= bound.
  [[nodiscard]] int first_key_at_least(int g, const std::vector<Rational>& key, const Rational& bound) const {
    if (g == end() || !(key[g] < bound)) return g;
    int h = g;
    for (int l = static_cast<int>(jump_.size()) - 1; l >= 0; --l) {
      const int t = jump_[l][slot(h)];
      if (t != end() && key[t] < bound) h = t;
    }
    return next_[h];
  }

  [[nodiscard]] ClusterSeq sequence(std::size_t anchor) const {
    ClusterSeq seq;
    seq.dir = dir_;
    seq.anchor = anchor;
    for (int f = static_cast<int>(anchor); f != end(); f = next_[f]) {
      seq.clusters.push_back({static_cast<std::size_t>(f), static_cast<std::size_t>(last(f)), lambda_[f]});
    }
    return seq;
  }

 private:
  [[nodiscard]] int slot(int f) const { return dir_ == ChainDir::R ? f : f + 1; }

  void build_jumps() {
    const int slots = n_ + 1;
    std::vector<int> base(slots);
    for (int f = 0; f < n_; ++f) base[slot(f)] = next_[f];
    base[slot(end())] = end();
    jump_.push_back(std::move(base));
    for (int span = 2; span < slots; span *= 2) {
      const auto& prev = jump_.back();
      std::vector<int> up(slots);
      for (int s = 0; s < slots; ++s) up[s] = prev[slot(prev[s])];
      jump_.push_back(std::move(up));
    }
  }

  ChainDir dir_;
  int n_;
  Rational tau_;
  Rational cap_;
  std::vector<int> next_;
  std::vector<Rational> lambda_;
  std::vector<Rational> sl_;
  std::vector<Rational> sxl_;
  std::vector<Rational> si_;
  std::vector<std::vector<int>> jump_;
  std::size_t created_ = 0;
};

inline ClusterChains build_clusters(const PathInstance& inst, const Scenario& s, ChainDir dir) {
  return ClusterChains(inst, scenario_weights(inst, s), dir);
}

// Transit part of a cluster's cost toward a sink at x.
inline Rational extra_cost(const Cluster& c, const Rational& x, const PathInstance& inst, ChainDir dir) {
  const Rational& xf = inst.x.at(c.front);
  if (dir == ChainDir::R ? xf < x : x < xf) {
    throw std::invalid_argument("sink lies beyond the cluster front");
  }
  const Rational d = dir == ChainDir::R ? xf - x : x - xf;
  return d * c.lambda * inst.tau;
}

// Per anchor k: E_R/I_R cover vertices k..n-1 observed at x_k, E_L/I_L cover
// 0..k observed at x_k.
struct CostArrays {
  std::vector<Rational> E_R;
  std::vector<Rational> I_R;
  std::vector<Rational> E_L;
  std::vector<Rational> I_L;
};

inline CostArrays cost_arrays(const PathInstance& inst, const std::vector<Rational>& w) {
  const ClusterChains r(inst, w, ChainDir::R);
  const ClusterChains l(inst, w, ChainDir::L);
  CostArrays out;
  const int n = static_cast<int>(inst.size());
  for (int k = 0; k < n; ++k) {
    out.I_R.push_back(r.sum_intra(k));
    out.E_R.push_back(inst.tau * (r.sum_x_lambda(k) - inst.x[k] * r.sum_lambda(k)));
    out.I_L.push_back(l.sum_intra(k));
    out.E_L.push_back(inst.tau * (inst.x[k] * l.sum_lambda(k) - l.sum_x_lambda(k)));
  }
  return out;
}

inline CostArrays cost_arrays(const PathInstance& inst, const Scenario& s) {
  return cost_arrays(inst, scenario_weights(inst, s));
}

// For every anchor k, the running intra-cost sums along the s_0 R-chain from
// k and along the s_M L-chain from k.
struct IntraPrefixSums {
  std::vector<std::vector<Rational>> r_lower;
  std::vector<std::vector<Rational>> l_upper;
};

inline IntraPrefixSums intra_prefix_sums(const PathInstance& inst) {
  const ClusterChains r(inst, inst.w_lower, ChainDir::R);
  const ClusterChains l(inst, inst.w_upper, ChainDir::L);
  IntraPrefixSums out;
  const int n = static_cast<int>(inst.size());
  out.r_lower.resize(n);
  out.l_upper.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int f = k; f != r.end(); f = r.next(f)) out.r_lower[k].push_back(r.sum_intra(k) - r.sum_intra(r.next(f)));
    for (int f = k; f != l.end(); f = l.next(f)) out.l_upper[k].push_back(l.sum_intra(k) - l.sum_intra(l.next(f)));
  }
  return out;
}

}  // namespace mmr
