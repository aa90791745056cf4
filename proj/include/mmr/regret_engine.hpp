#pragma once

// Regret functions, their upper envelope and the minmax-regret sink.
//
// For one boundary b the critical scenarios are ordered by w(v_b). Between
// two of them the cost difference only grows walking away from v_b, so on
// each side of v_b a later regret function, once above an earlier one, stays
// above. The per-b envelope is therefore a stack: a new function either
// dominates the top entry from the entry's start (pop it) or takes over from
// a single crossing found by binary search. The global envelope is folded
// edge by edge from the per-b stacks without materialising them.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "cost_eval.hpp"
#include "pwl.hpp"
#include "scenario_gen.hpp"
#include "sink_tracker.hpp"

namespace mmr {

struct RegretFunction {
  Scenario scenario;
  SinkResult sink;
  PWLFunction f;  // Phi^s(x) - Phi^s(sink)
};

inline RegretFunction regret_function(const EvalContext& ctx, const PseudoBipartite& s, const SinkResult& sink) {
  const auto& inst = ctx.instance();
  const std::size_t n = inst.size();
  std::vector<Rational> vval(n);
  for (std::size_t i = 0; i < n; ++i) vval[i] = ctx.phi_vertex(s, i) - sink.value;
  std::vector<EdgePieces> edges(n - 1);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    edges[e] = {{inst.x[e], inst.x[e + 1], ctx.edge_line(s, e) - Line{0, sink.value}}};
  }
  return {s, sink, PWLFunction(inst.x, std::move(vval), std::move(edges))};
}

// Any scenario, through the O(n) cluster pass.
inline RegretFunction regret_function(const PathInstance& inst, const Scenario& s) {
  const auto costs = scenario_costs(inst, scenario_weights(inst, s));
  const SinkResult sink = leftmost_min_vertex(inst, costs.vertex);
  const std::size_t n = inst.size();
  std::vector<Rational> vval(n);
  for (std::size_t i = 0; i < n; ++i) vval[i] = costs.vertex[i] - sink.value;
  std::vector<EdgePieces> edges(n - 1);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    edges[e] = {{inst.x[e], inst.x[e + 1], costs.edge[e] - Line{0, sink.value}}};
  }
  return {s, sink, PWLFunction(inst.x, std::move(vval), std::move(edges))};
}

namespace detail {

// A point of one half of the path, walking away from v_b. Ordinal q counts
// v_b, the first edge, the next vertex, ...; x is the coordinate (an edge end
// stands for the one-sided limit).
struct WalkPos {
  int q = 0;
  Rational x;
};

class HalfWalk {
 public:
  HalfWalk(const PathInstance& inst, int b, bool right) : x_(&inst.x), b_(b), right_(right) {
    const int n = static_cast<int>(inst.size());
    qmax_ = right ? 2 * (n - 1 - b) : 2 * b;
  }

  [[nodiscard]] int qmax() const { return qmax_; }
  [[nodiscard]] bool right() const { return right_; }
  [[nodiscard]] static bool is_vertex(int q) { return q % 2 == 0; }
  [[nodiscard]] int vertex(int q) const { return right_ ? b_ + q / 2 : b_ - q / 2; }
  [[nodiscard]] int edge(int q) const { return right_ ? b_ + (q - 1) / 2 : b_ - 1 - (q - 1) / 2; }
  [[nodiscard]] int edge_ordinal(int e) const { return right_ ? 2 * (e - b_) + 1 : 2 * (b_ - 1 - e) + 1; }
  [[nodiscard]] int vertex_ordinal(int v) const { return right_ ? 2 * (v - b_) : 2 * (b_ - v); }
  [[nodiscard]] const Rational& near(int q) const { return (*x_)[right_ ? edge(q) : edge(q) + 1]; }
  [[nodiscard]] const Rational& far(int q) const { return (*x_)[right_ ? edge(q) + 1 : edge(q)]; }

  [[nodiscard]] WalkPos far_pos(int q) const {
    return is_vertex(q) ? WalkPos{q, (*x_)[vertex(q)]} : WalkPos{q, far(q)};
  }

  // a strictly before b along the walk
  [[nodiscard]] bool before(const WalkPos& a, const WalkPos& b) const {
    if (a.q != b.q) return a.q < b.q;
    return right_ ? a.x < b.x : b.x < a.x;
  }

 private:
  const std::vector<Rational>* x_;
  int b_;
  bool right_;
  int qmax_;
};

}  // namespace detail

struct StackEntry {
  int q = 0;
  Rational x;
  int t = 0;  // index into the boundary's weight group
};

// Envelope of the regret functions L(b, ws[t]) - m[t], t ascending, in the
// frame of `view`.
class BoundaryEnvelope {
 public:
  BoundaryEnvelope(const BoundaryView& view, const std::vector<Rational>& ws, std::vector<Rational> sink_cost)
      : view_(&view),
        ws_(&ws),
        m_(std::move(sink_cost)),
        b_(view.boundary()),
        halves_{detail::HalfWalk(view.context().instance(), view.boundary(), false),
                detail::HalfWalk(view.context().instance(), view.boundary(), true)} {
    const Rational phi_b = view.vertex_cost(ws.front(), b_);
    vb_value_ = phi_b - *std::min_element(m_.begin(), m_.end());
    for (int t = 0; t < static_cast<int>(ws.size()); ++t) {
      add(0, t);
      add(1, t);
    }
  }

  [[nodiscard]] int boundary() const { return b_; }
  [[nodiscard]] const std::vector<StackEntry>& stack(bool right) const { return stacks_[right ? 1 : 0]; }
  [[nodiscard]] std::size_t stack_size() const { return stacks_[0].size() + stacks_[1].size(); }

  [[nodiscard]] Line line(int t, int e) const { return view_->edge_line((*ws_)[t], e) - Line{0, m_[t]}; }

  [[nodiscard]] Rational vertex_value(int v) const {
    if (v == b_) return vb_value_;
    const int h = v > b_ ? 1 : 0;
    const auto& hw = halves_[h];
    const detail::WalkPos p{hw.vertex_ordinal(v), view_->context().instance().x[v]};
    return value(hw, stacks_[h][covering(h, p)].t, p);
  }

  // Envelope on frame edge e, ascending x.
  [[nodiscard]] EdgePieces edge_pieces(int e) const {
    const int h = e >= b_ ? 1 : 0;
    const auto& hw = halves_[h];
    const auto& st = stacks_[h];
    const int q = hw.edge_ordinal(e);
    const detail::WalkPos far{q, hw.far(q)};
    EdgePieces out;
    for (std::size_t i = covering(h, {q, hw.near(q)}); i < st.size(); ++i) {
      const bool first = out.empty();
      const detail::WalkPos start{st[i].q, st[i].x};
      if (!first && !hw.before(start, far)) break;
      const Rational& from = (first || st[i].q != q) ? hw.near(q) : st[i].x;
      const bool cut = i + 1 < st.size() && hw.before({st[i + 1].q, st[i + 1].x}, far);
      const Rational& to = cut ? st[i + 1].x : hw.far(q);
      if (from != to) {
        const Line l = line(st[i].t, e);
        if (hw.right()) out.push_back({from, to, l}); else out.push_back({to, from, l});
      }
      if (!cut) break;
    }
    if (!hw.right()) std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  [[nodiscard]] Rational value(const detail::HalfWalk& hw, int t, const detail::WalkPos& p) const {
    const Rational& w = (*ws_)[t];
    if (detail::HalfWalk::is_vertex(p.q)) return view_->vertex_cost(w, hw.vertex(p.q)) - m_[t];
    return view_->edge_line(w, hw.edge(p.q)).at(p.x) - m_[t];
  }

  // Last entry starting at or before p.
  [[nodiscard]] std::size_t covering(int h, const detail::WalkPos& p) const {
    const auto& st = stacks_[h];
    const auto& hw = halves_[h];
    std::size_t lo = 0;
    std::size_t hi = st.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (hw.before(p, {st[mid].q, st[mid].x})) hi = mid - 1; else lo = mid;
    }
    return lo;
  }

  void add(int h, int t) {
    auto& st = stacks_[h];
    const auto& hw = halves_[h];
    while (!st.empty()) {
      const StackEntry top = st.back();
      const detail::WalkPos start{top.q, top.x};
      auto diff = [&](const detail::WalkPos& p) { return value(hw, t, p) - value(hw, top.t, p); };
      if (diff(start).sign() >= 0) {
        st.pop_back();
        continue;
      }
      if (diff(hw.far_pos(hw.qmax())).sign() < 0) return;
      int lo = top.q;
      int hi = hw.qmax();
      while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (diff(hw.far_pos(mid)).sign() >= 0) hi = mid; else lo = mid + 1;
      }
      if (detail::HalfWalk::is_vertex(lo)) {
        st.push_back({lo, hw.far_pos(lo).x, t});
        return;
      }
      const int e = hw.edge(lo);
      const Line d = line(t, e) - line(top.t, e);
      const Rational& from = lo == top.q ? top.x : hw.near(lo);
      if (d.at(from).sign() >= 0) {
        st.push_back({lo, from, t});
      } else {
        st.push_back({lo, -d.intercept / d.slope, t});
      }
      return;
    }
    st.push_back({0, view_->context().instance().x[b_], t});
  }

  const BoundaryView* view_;
  const std::vector<Rational>* ws_;
  std::vector<Rational> m_;
  int b_;
  detail::HalfWalk halves_[2];
  std::vector<StackEntry> stacks_[2];
  Rational vb_value_;
};

namespace detail {

// Pieces of a frame-1 edge rewritten in original coordinates.
inline EdgePieces unmirror_pieces(const EvalContext& ctx, const EdgePieces& ps) {
  const Rational& X = ctx.instance().x.back();
  EdgePieces out;
  out.reserve(ps.size());
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) out.push_back({X - it->x1, X - it->x0, ctx.unmirror(it->line)});
  return out;
}

inline std::vector<Rational> frame_sink_costs(const SinkTable& sinks, Side side, std::size_t b) {
  std::vector<Rational> m;
  for (const auto& s : sinks.group(side, b)) m.push_back(s.value);
  return m;
}

}  // namespace detail

// Per-boundary envelope as a full function in original coordinates.
inline PWLFunction envelope_for_b(const EvalContext& ctx, const CriticalScenarioSet& S, const SinkTable& sinks,
                                  Side side, std::size_t b) {
  const auto& inst = ctx.instance();
  const int n = ctx.size();
  const bool mirrored = side == Side::R;
  const int fb = mirrored ? n - 1 - static_cast<int>(b) : static_cast<int>(b);
  const BoundaryView view(ctx.frame(side), fb);
  const BoundaryEnvelope env(view, S.group(side, b), detail::frame_sink_costs(sinks, side, b));
  std::vector<Rational> vval(n);
  for (int v = 0; v < n; ++v) vval[v] = env.vertex_value(mirrored ? n - 1 - v : v);
  std::vector<EdgePieces> edges(n - 1);
  for (int e = 0; e + 1 < n; ++e) {
    edges[e] = mirrored ? detail::unmirror_pieces(ctx, env.edge_pieces(n - 2 - e)) : env.edge_pieces(e);
  }
  return PWLFunction(inst.x, std::move(vval), std::move(edges));
}

// Reference for envelope_for_b: generic envelope of every regret function.
inline PWLFunction envelope_for_b_generic(const EvalContext& ctx, const CriticalScenarioSet& S,
                                          const SinkTable& sinks, Side side, std::size_t b) {
  std::vector<PWLFunction> fs;
  const auto& ws = S.group(side, b);
  for (std::size_t t = 0; t < ws.size(); ++t) {
    fs.push_back(regret_function(ctx, {side, b, ws[t]}, sinks.group(side, b)[t]).f);
  }
  return upper_envelope(fs);
}

inline PWLFunction global_envelope(const std::vector<PWLFunction>& per_b) { return upper_envelope(per_b); }

struct RegretOptions {
  TrackerOptions tracker;
};

struct RegretResult {
  SinkResult sink;
  PWLFunction envelope;          // R_max; empty for the naive route
  std::size_t envelope_pieces = 0;
  std::size_t scenarios = 0;     // distinct critical scenarios
  std::size_t stack_entries = 0; // total per-boundary envelope entries
  TrackerStats tracker;
};

inline SinkResult pwl_min_to_sink(const PathInstance& inst, const PWLMin& m) {
  if (m.at_vertex) return {Location::vertex(inst, m.index), m.value};
  return {Location::on_edge(inst, m.index, m.x), m.value};
}

inline RegretResult minmax_regret_sink(const PathInstance& inst, const RegretOptions& opt = {}) {
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  const int n = ctx.size();
  RegretResult out;
  out.scenarios = S.scenarios.size();
  std::vector<EdgePieces> env(n - 1);
  std::vector<Rational> vmax(n);
  bool first = true;
  for (Side side : {Side::L, Side::R}) {
    const bool mirrored = side == Side::R;
    for (int b = 0; b < n; ++b) {
      const int fb = mirrored ? n - 1 - b : b;
      const auto& ws = S.group(side, static_cast<std::size_t>(b));
      const BoundaryView view(ctx.frame(side), fb);
      auto fs = track_frame_sinks(view, ws, !mirrored, opt.tracker, out.tracker);
      const BoundaryEnvelope be(view, ws, std::move(fs.cost));
      out.stack_entries += be.stack_size();
      for (int v = 0; v < n; ++v) {
        const Rational r = be.vertex_value(mirrored ? n - 1 - v : v);
        if (first || vmax[v] < r) vmax[v] = r;
      }
      for (int e = 0; e + 1 < n; ++e) {
        const EdgePieces ps = mirrored ? detail::unmirror_pieces(ctx, be.edge_pieces(n - 2 - e)) : be.edge_pieces(e);
        env[e] = merge_max(env[e], ps);
      }
      first = false;
    }
  }
  out.envelope = PWLFunction(inst.x, std::move(vmax), std::move(env));
  out.envelope_pieces = out.envelope.piece_count();
  out.sink = pwl_min_to_sink(inst, min_point(out.envelope));
  return out;
}

namespace detail {

// Leftmost minimum strictly inside [x0, x1] of the upper envelope of lines.
inline std::optional<std::pair<Rational, Rational>> envelope_walk_min(const std::vector<Line>& lines,
                                                                      const Rational& x0, const Rational& x1) {
  std::size_t cur = 0;
  for (std::size_t j = 1; j < lines.size(); ++j) {
    const Rational vj = lines[j].at(x0);
    const Rational vc = lines[cur].at(x0);
    if (vc < vj || (vj == vc && lines[cur].slope < lines[j].slope)) cur = j;
  }
  Rational x = x0;
  for (;;) {
    if (lines[cur].slope.sign() >= 0) {
      if (x == x0) return std::nullopt;
      return std::make_pair(x, lines[cur].at(x));
    }
    std::optional<std::size_t> nxt;
    Rational nx;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (!(lines[cur].slope < lines[j].slope)) continue;
      const Rational xc = (lines[cur].intercept - lines[j].intercept) / (lines[j].slope - lines[cur].slope);
      if (xc < x) continue;
      if (!nxt || xc < nx || (xc == nx && lines[*nxt].slope < lines[j].slope)) {
        nxt = j;
        nx = xc;
      }
    }
    if (!nxt || !(nx < x1)) return std::nullopt;
    x = nx;
    cur = *nxt;
  }
}

}  // namespace detail

// Baseline: every critical scenario through the O(n) cluster pass, the
// maximum regret evaluated directly at vertices and by an envelope walk on
// each edge. Lines are generated in blocks of edges to bound memory.
inline RegretResult minmax_regret_naive(const PathInstance& inst, std::size_t line_budget = std::size_t(1) << 21) {
  inst.validate();
  const auto S = enumerate_S_star(inst);
  const std::size_t n = inst.size();
  const auto& flat = S.scenarios;
  RegretResult out;
  out.scenarios = flat.size();

  std::vector<Rational> sink_cost(flat.size());
  std::vector<Rational> vmax(n);
  for (std::size_t k = 0; k < flat.size(); ++k) {
    const auto costs = scenario_costs(inst, scenario_weights(inst, flat[k]));
    sink_cost[k] = leftmost_min_vertex(inst, costs.vertex).value;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational r = costs.vertex[i] - sink_cost[k];
      if (k == 0 || vmax[i] < r) vmax[i] = r;
    }
  }

  SinkResult best{Location::vertex(inst, 0), vmax[0]};
  std::vector<std::optional<std::pair<Rational, Rational>>> edge_min(n > 0 ? n - 1 : 0);
  const std::size_t block = std::max<std::size_t>(1, line_budget / std::max<std::size_t>(1, flat.size()));
  for (std::size_t e0 = 0; e0 + 1 < n; e0 += block) {
    const std::size_t e1 = std::min(n - 1, e0 + block);
    std::vector<std::vector<Line>> lines(e1 - e0);
    for (std::size_t k = 0; k < flat.size(); ++k) {
      const auto costs = scenario_costs(inst, scenario_weights(inst, flat[k]));
      for (std::size_t e = e0; e < e1; ++e) lines[e - e0].push_back(costs.edge[e] - Line{0, sink_cost[k]});
    }
    for (std::size_t e = e0; e < e1; ++e) edge_min[e] = detail::envelope_walk_min(lines[e - e0], inst.x[e], inst.x[e + 1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && edge_min[i - 1] && edge_min[i - 1]->second < best.value) {
      best = {Location::on_edge(inst, i - 1, edge_min[i - 1]->first), edge_min[i - 1]->second};
    }
    if (vmax[i] < best.value) best = {Location::vertex(inst, i), vmax[i]};
  }
  out.sink = best;
  return out;
}

struct MonotoneReport {
  bool monotone = true;
  int sign_changes_left = 0;
  int sign_changes_right = 0;

  [[nodiscard]] bool ok() const { return monotone && sign_changes_left <= 1 && sign_changes_right <= 1; }
};

// D = Phi^{s2} - Phi^{s1} for s1 before s2 (same side and b) sampled at
// every vertex as left limit, point value, right limit. Left of v_b D must
// not increase with x, right of it D must not decrease. Also counts sign
// changes of R^{s2} - R^{s1} on each half.
inline MonotoneReport check_monotone_difference(const EvalContext& ctx, const PseudoBipartite& s1,
                                                const PseudoBipartite& s2) {
  if (s1.side != s2.side || s1.b != s2.b || s2.wb < s1.wb) {
    throw std::invalid_argument("scenarios must share side and boundary, in weight order");
  }
  const auto& inst = ctx.instance();
  const std::size_t n = inst.size();
  const Rational m1 = minsum_naive(inst, s1).value;
  const Rational m2 = minsum_naive(inst, s2).value;
  std::vector<Rational> left;
  std::vector<Rational> right;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& x = inst.x[i];
    auto push = [&](const Rational& d, bool on_left, bool on_right) {
      if (on_left) left.push_back(d);
      if (on_right) right.push_back(d);
    };
    if (i > 0) push(ctx.edge_line(s2, i - 1).at(x) - ctx.edge_line(s1, i - 1).at(x), i <= s1.b, i > s1.b);
    push(ctx.phi_vertex(s2, i) - ctx.phi_vertex(s1, i), i <= s1.b, i >= s1.b);
    if (i + 1 < n) push(ctx.edge_line(s2, i).at(x) - ctx.edge_line(s1, i).at(x), i < s1.b, i >= s1.b);
  }
  MonotoneReport rep;
  for (std::size_t k = 1; k < left.size(); ++k) rep.monotone = rep.monotone && !(left[k - 1] < left[k]);
  for (std::size_t k = 1; k < right.size(); ++k) rep.monotone = rep.monotone && !(right[k] < right[k - 1]);
  auto changes = [&](const std::vector<Rational>& ds) {
    int c = 0;
    int last = 0;
    for (const auto& d : ds) {
      const int s = (d - (m2 - m1)).sign();
      if (s != 0) {
        if (last != 0 && s != last) ++c;
        last = s;
      }
    }
    return c;
  };
  rep.sign_changes_left = changes(left);
  rep.sign_changes_right = changes(right);
  return rep;
}

}  // namespace mmr
