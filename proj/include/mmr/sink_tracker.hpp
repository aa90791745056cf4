#pragma once

// Minsum sinks for every critical scenario sharing a boundary vertex b.
//
// Sweep the critical weights of v_b upwards. Scanning outward from b on each
// side, keep the vertices that beat everything between them and b. Raising
// w(v_b) adds cost faster the farther a vertex is from b, so a kept vertex
// can only ever lose to its nearer kept neighbour, and the kept lists only
// shrink. Each adjacent pair is scheduled on a heap at the first weight where
// the farther one stops winning, found by binary search over the weights.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <tuple>
#include <vector>

#include "cost_eval.hpp"
#include "scenario_gen.hpp"

namespace mmr {

struct TrackerOptions {
  bool audit = false;  // cross-check every binary search with a linear scan
};

struct TrackerStats {
  std::size_t events = 0;
  std::size_t searches = 0;
  std::size_t audit_mismatches = 0;
};

// Sinks of L(b, ws[t]) in the frame of `view`, as frame vertex indices with
// their costs. prefer_low: on equal cost the smaller frame index wins
// (original frame); otherwise the larger one (mirrored frame).
struct FrameSinks {
  std::vector<int> vertex;
  std::vector<Rational> cost;
};

namespace detail {

class BoundaryTracker {
 public:
  BoundaryTracker(const BoundaryView& view, const std::vector<Rational>& ws, bool prefer_low,
                  const TrackerOptions& opt, TrackerStats& stats)
      : view_(view), ws_(ws), prefer_low_(prefer_low), opt_(opt), stats_(stats),
        n_(view.context().size()), b_(view.boundary()) {}

  FrameSinks run() {
    const int m = static_cast<int>(ws_.size());
    FrameSinks out;
    out.vertex.resize(m);
    out.cost.resize(m);
    nearer_.assign(n_, -1);
    farther_.assign(n_, -1);
    alive_.assign(n_, 0);

    // Kept lists at the first weight. Left list runs b, ..., toward 0; right
    // list runs b+1, ..., toward n-1.
    auto scan = [&](int from, int step) {
      int tail = -1;
      Rational best;
      for (int i = from; i >= 0 && i < n_; i += step) {
        const Rational c = cost(0, i);
        if (tail < 0 || better(c, i, best, tail)) {
          alive_[i] = 1;
          if (tail >= 0) {
            farther_[tail] = i;
            nearer_[i] = tail;
          }
          tail = i;
          best = c;
        }
      }
      return tail;
    };
    tails_[0] = scan(b_, -1);
    tails_[1] = b_ + 1 < n_ ? scan(b_ + 1, 1) : -1;
    for (int head : {b_, b_ + 1}) {
      if (head >= n_) continue;
      for (int i = head; farther_[i] >= 0; i = farther_[i]) schedule(i, farther_[i], 0);
    }

    for (int t = 0; t < m; ++t) {
      while (!heap_.empty() && std::get<0>(heap_.top()) <= t) {
        const auto [et, near, far] = heap_.top();
        heap_.pop();
        if (!alive_[near] || !alive_[far] || farther_[near] != far) continue;
        ++stats_.events;
        alive_[far] = 0;
        const int beyond = farther_[far];
        farther_[near] = beyond;
        if (beyond >= 0) {
          nearer_[beyond] = near;
          schedule(near, beyond, t);
        } else {
          tails_[far <= b_ ? 0 : 1] = near;
        }
      }
      int sink = tails_[0];
      Rational c = cost(t, sink);
      if (tails_[1] >= 0) {
        const Rational cr = cost(t, tails_[1]);
        if (better(cr, tails_[1], c, sink)) {
          sink = tails_[1];
          c = cr;
        }
      }
      out.vertex[t] = sink;
      out.cost[t] = c;
    }
    return out;
  }

 private:
  [[nodiscard]] bool better(const Rational& ca, int a, const Rational& cb, int b) const {
    if (ca != cb) return ca < cb;
    return prefer_low_ ? a < b : a > b;
  }

  [[nodiscard]] Rational cost(int t, int i) const { return view_.vertex_cost(ws_[t], i); }

  [[nodiscard]] bool far_loses(int t, int near, int far) const {
    return !better(cost(t, far), far, cost(t, near), near);
  }

  // First weight index >= from at which `far` stops beating `near`.
  void schedule(int near, int far, int from) {
    const int m = static_cast<int>(ws_.size());
    ++stats_.searches;
    int found = m;
    if (far_loses(m - 1, near, far)) {
      int lo = from;
      int hi = m - 1;
      while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (far_loses(mid, near, far)) hi = mid; else lo = mid + 1;
      }
      found = lo;
    }
    if (opt_.audit) {
      int linear = m;
      for (int t = from; t < m; ++t) {
        if (far_loses(t, near, far)) {
          linear = t;
          break;
        }
      }
      if (linear != found) {
        ++stats_.audit_mismatches;
        found = linear;
      }
    }
    if (found < m) heap_.emplace(found, near, far);
  }

  const BoundaryView& view_;
  const std::vector<Rational>& ws_;
  bool prefer_low_;
  const TrackerOptions& opt_;
  TrackerStats& stats_;
  int n_;
  int b_;
  std::vector<int> nearer_;
  std::vector<int> farther_;
  std::vector<char> alive_;
  int tails_[2] = {-1, -1};
  using Event = std::tuple<int, int, int>;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap_;
};

}  // namespace detail

inline FrameSinks track_frame_sinks(const BoundaryView& view, const std::vector<Rational>& ws, bool prefer_low,
                                    const TrackerOptions& opt, TrackerStats& stats) {
  return detail::BoundaryTracker(view, ws, prefer_low, opt, stats).run();
}

// Sinks of the scenarios side(b, .) for every weight of the group, in
// original vertex numbering.
inline std::vector<SinkResult> track_sinks_for_b(const EvalContext& ctx, const CriticalScenarioSet& S, Side side,
                                                 std::size_t b, const TrackerOptions& opt, TrackerStats& stats) {
  const int n = ctx.size();
  const int fb = side == Side::L ? static_cast<int>(b) : n - 1 - static_cast<int>(b);
  const BoundaryView view(ctx.frame(side), fb);
  const auto fs = track_frame_sinks(view, S.group(side, b), side == Side::L, opt, stats);
  std::vector<SinkResult> out;
  out.reserve(fs.vertex.size());
  for (std::size_t t = 0; t < fs.vertex.size(); ++t) {
    const int v = side == Side::L ? fs.vertex[t] : n - 1 - fs.vertex[t];
    out.push_back({Location::vertex(ctx.instance(), static_cast<std::size_t>(v)), fs.cost[t]});
  }
  return out;
}

// sinks[side][b][t] is the sink of side(b, S.group(side, b)[t]).
struct SinkTable {
  std::vector<std::vector<SinkResult>> left;
  std::vector<std::vector<SinkResult>> right;
  TrackerStats stats;

  [[nodiscard]] const std::vector<SinkResult>& group(Side side, std::size_t b) const {
    return side == Side::L ? left[b] : right[b];
  }
};

inline SinkTable all_sinks(const EvalContext& ctx, const CriticalScenarioSet& S, const TrackerOptions& opt = {}) {
  SinkTable out;
  const std::size_t n = ctx.instance().size();
  out.left.resize(n);
  out.right.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    out.left[b] = track_sinks_for_b(ctx, S, Side::L, b, opt, out.stats);
    out.right[b] = track_sinks_for_b(ctx, S, Side::R, b, opt, out.stats);
  }
  return out;
}

// Sink of one member of S, looked up by its group position.
inline const SinkResult& sink_of(const CriticalScenarioSet& S, const SinkTable& table, const PseudoBipartite& s) {
  const auto& g = S.group(s.side, s.b);
  const auto it = std::lower_bound(g.begin(), g.end(), s.wb);
  if (it == g.end() || *it != s.wb) throw std::invalid_argument("scenario is not critical");
  return table.group(s.side, s.b)[static_cast<std::size_t>(it - g.begin())];
}

}  // namespace mmr
