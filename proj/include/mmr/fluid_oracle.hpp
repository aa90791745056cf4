#pragma once

// Brute-force reference for the aggregate evacuation time. Evacuees are a
// fluid; every vertex is a FIFO queue that drains at rate c into the edge
// toward the sink. Nothing here knows about clusters.

#include <cstddef>
#include <vector>

#include "path_model.hpp"

namespace mmr {

struct FlowInterval {
  Rational t0;
  Rational t1;
  Rational rate;
};

using FlowProfile = std::vector<FlowInterval>;

enum class Direction { TowardLeft, TowardRight };

namespace detail {

inline void push_interval(FlowProfile& out, const Rational& t0, const Rational& t1, const Rational& rate) {
  if (!(t0 < t1) || rate.sign() == 0) return;
  if (!out.empty() && out.back().t1 == t0 && out.back().rate == rate) {
    out.back().t1 = t1;
    return;
  }
  out.push_back({t0, t1, rate});
}

// Outflow of a queue that holds `mass` at time 0 and receives `in`.
inline FlowProfile drain(const Rational& mass, const FlowProfile& in, const Rational& c) {
  FlowProfile out;
  Rational backlog = mass;
  Rational t = 0;
  auto run = [&](const Rational& until, const Rational& rate) {
    // Segment [t, until) with inflow `rate`.
    if (backlog.sign() > 0) {
      const Rational net = c - rate;
      if (net.sign() > 0) {
        const Rational empty_at = t + backlog / net;
        if (empty_at < until) {
          push_interval(out, t, empty_at, c);
          push_interval(out, empty_at, until, rate);
          backlog = 0;
        } else {
          push_interval(out, t, until, c);
          backlog -= net * (until - t);
        }
      } else {
        push_interval(out, t, until, c);
      }
    } else {
      push_interval(out, t, until, rate);
    }
    t = until;
  };
  for (const auto& iv : in) {
    if (t < iv.t0) run(iv.t0, Rational(0));
    run(iv.t1, iv.rate);
  }
  if (backlog.sign() > 0) {
    push_interval(out, t, t + backlog / c, c);
  }
  return out;
}

}  // namespace detail

// Arrival profile at sink_coord of the vertices first..last (inclusive), all
// on one side of the sink. TowardLeft means flow moves to smaller x.
inline FlowProfile simulate_side(const PathInstance& inst, const std::vector<Rational>& w, std::size_t first,
                                 std::size_t last, const Rational& sink_coord, Direction dir) {
  FlowProfile profile;
  if (first > last) return profile;
  // Walk from the farthest vertex to the nearest.
  const bool left_flow = dir == Direction::TowardLeft;
  std::size_t i = left_flow ? last : first;
  const std::size_t stop = left_flow ? first : last;
  for (;;) {
    profile = detail::drain(w[i], profile, inst.capacity);
    const Rational next_x = (i == stop) ? sink_coord : inst.x[left_flow ? i - 1 : i + 1];
    const Rational delay = (left_flow ? inst.x[i] - next_x : next_x - inst.x[i]) * inst.tau;
    for (auto& iv : profile) {
      iv.t0 += delay;
      iv.t1 += delay;
    }
    if (i == stop) break;
    i = left_flow ? i - 1 : i + 1;
  }
  return profile;
}

inline FlowProfile simulate_side(const PathInstance& inst, const Scenario& s, std::size_t first, std::size_t last,
                                 const Rational& sink_coord, Direction dir) {
  return simulate_side(inst, scenario_weights(inst, s), first, last, sink_coord, dir);
}

inline Rational profile_mass(const FlowProfile& p) {
  Rational m = 0;
  for (const auto& iv : p) m += iv.rate * (iv.t1 - iv.t0);
  return m;
}

// Integral of t * rate dt over the profile.
inline Rational profile_time(const FlowProfile& p) {
  Rational total = 0;
  for (const auto& iv : p) total += iv.rate * (iv.t1 * iv.t1 - iv.t0 * iv.t0) / Rational(2);
  return total;
}

inline Rational aggregate_time(const PathInstance& inst, const Scenario& s, const Location& sink) {
  const auto w = scenario_weights(inst, s);
  const std::size_t n = inst.size();
  Rational total = 0;
  if (sink.is_vertex()) {
    const std::size_t k = sink.index;
    if (k > 0) total += profile_time(simulate_side(inst, w, 0, k - 1, sink.x, Direction::TowardRight));
    if (k + 1 < n) total += profile_time(simulate_side(inst, w, k + 1, n - 1, sink.x, Direction::TowardLeft));
  } else {
    const std::size_t e = sink.index;
    total += profile_time(simulate_side(inst, w, 0, e, sink.x, Direction::TowardRight));
    total += profile_time(simulate_side(inst, w, e + 1, n - 1, sink.x, Direction::TowardLeft));
  }
  return total;
}

}  // namespace mmr
