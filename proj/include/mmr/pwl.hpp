#pragma once

// Piecewise-linear functions over [x_0, x_{n-1}] that are affine between
// breakpoints, continuous inside every edge, and carry a separate point value
// at each vertex (never above the neighbouring limits).

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusters.hpp"

namespace mmr {

struct Piece {
  Rational x0;
  Rational x1;
  Line line;

  friend bool operator==(const Piece&, const Piece&) = default;
};

// Upper envelope of continuous pieces covering one interval, kept as a
// sorted list. Used per edge.
using EdgePieces = std::vector<Piece>;

namespace detail {

inline void append_piece(EdgePieces& out, const Rational& x0, const Rational& x1, const Line& l) {
  if (!(x0 < x1)) return;
  if (!out.empty() && out.back().line == l && out.back().x1 == x0) {
    out.back().x1 = x1;
    return;
  }
  out.push_back({x0, x1, l});
}

}  // namespace detail

// Pointwise maximum of two continuous piece lists over the same interval.
inline EdgePieces merge_max(const EdgePieces& a, const EdgePieces& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  EdgePieces out;
  out.reserve(a.size() + b.size() + 2);
  std::size_t i = 0;
  std::size_t j = 0;
  Rational x = std::max(a.front().x0, b.front().x0);
  while (i < a.size() && j < b.size()) {
    const Rational end = std::min(a[i].x1, b[j].x1);
    const Line& la = a[i].line;
    const Line& lb = b[j].line;
    if (x < end) {
      const Line d = la - lb;
      const Rational d0 = d.at(x);
      const Rational d1 = d.at(end);
      if (d0.sign() >= 0 && d1.sign() >= 0) {
        detail::append_piece(out, x, end, la);
      } else if (d0.sign() <= 0 && d1.sign() <= 0) {
        detail::append_piece(out, x, end, lb);
      } else {
        const Rational cross = -d.intercept / d.slope;
        detail::append_piece(out, x, cross, d0.sign() > 0 ? la : lb);
        detail::append_piece(out, cross, end, d0.sign() > 0 ? lb : la);
      }
      x = end;
    }
    if (a[i].x1 == end) ++i;
    if (j < b.size() && b[j].x1 == end) ++j;
  }
  return out;
}

// Divide and conquer over the lists.
inline EdgePieces upper_envelope_pieces(std::vector<EdgePieces> lists) {
  if (lists.empty()) return {};
  while (lists.size() > 1) {
    std::vector<EdgePieces> next;
    next.reserve((lists.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < lists.size(); i += 2) next.push_back(merge_max(lists[i], lists[i + 1]));
    if (lists.size() % 2 == 1) next.push_back(std::move(lists.back()));
    lists = std::move(next);
  }
  return std::move(lists.front());
}

struct PWLMin {
  bool at_vertex = true;
  std::size_t index = 0;  // vertex index, or edge index for an interior point
  Rational x;
  Rational value;
};

class PWLFunction {
 public:
  PWLFunction() = default;

  // edges[e] must cover [vx[e], vx[e+1]] contiguously.
  PWLFunction(std::vector<Rational> vx, std::vector<Rational> vval, std::vector<EdgePieces> edges)
      : vx_(std::move(vx)), vval_(std::move(vval)), edges_(std::move(edges)) {
    validate();
  }

  [[nodiscard]] std::size_t vertex_count() const { return vx_.size(); }
  [[nodiscard]] const std::vector<Rational>& vertex_x() const { return vx_; }
  [[nodiscard]] const std::vector<Rational>& vertex_values() const { return vval_; }
  [[nodiscard]] const EdgePieces& edge(std::size_t e) const { return edges_.at(e); }
  [[nodiscard]] const std::vector<EdgePieces>& edges() const { return edges_; }

  [[nodiscard]] std::size_t piece_count() const {
    std::size_t c = 0;
    for (const auto& e : edges_) c += e.size();
    return c;
  }

  void validate() const {
    if (vx_.empty() || vval_.size() != vx_.size() || edges_.size() + 1 != vx_.size()) {
      throw std::invalid_argument("PWLFunction: inconsistent sizes");
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& ps = edges_[e];
      if (ps.empty() || ps.front().x0 != vx_[e] || ps.back().x1 != vx_[e + 1]) {
        throw std::invalid_argument("PWLFunction: edge " + std::to_string(e) + " not covered");
      }
      for (std::size_t k = 0; k < ps.size(); ++k) {
        if (!(ps[k].x0 < ps[k].x1)) throw std::invalid_argument("PWLFunction: empty piece");
        if (k > 0 && ps[k - 1].x1 != ps[k].x0) throw std::invalid_argument("PWLFunction: gap in edge");
      }
    }
  }

  [[nodiscard]] Rational eval(const Rational& x) const {
    if (x < vx_.front() || vx_.back() < x) throw std::out_of_range("PWLFunction: x outside the domain");
    const auto it = std::lower_bound(vx_.begin(), vx_.end(), x);
    if (it != vx_.end() && *it == x) return vval_[static_cast<std::size_t>(it - vx_.begin())];
    const std::size_t e = static_cast<std::size_t>(it - vx_.begin()) - 1;
    return piece_at(edges_[e], x).line.at(x);
  }

  // Limit from the left (x > x_0) or right (x < x_{n-1}).
  [[nodiscard]] Rational left_limit(const Rational& x) const {
    const auto it = std::lower_bound(vx_.begin(), vx_.end(), x);
    const std::size_t e = static_cast<std::size_t>(it - vx_.begin()) - 1;
    return edges_.at(e).back().x1 == x ? edges_[e].back().line.at(x) : piece_at(edges_[e], x).line.at(x);
  }
  [[nodiscard]] Rational right_limit(const Rational& x) const {
    const auto it = std::upper_bound(vx_.begin(), vx_.end(), x);
    const std::size_t e = static_cast<std::size_t>(it - vx_.begin()) - 1;
    return piece_at(edges_.at(e), x).line.at(x);
  }

 private:
  static const Piece& piece_at(const EdgePieces& ps, const Rational& x) {
    auto it = std::upper_bound(ps.begin(), ps.end(), x, [](const Rational& v, const Piece& p) { return v < p.x1; });
    if (it == ps.end()) --it;
    return *it;
  }

  std::vector<Rational> vx_;
  std::vector<Rational> vval_;
  std::vector<EdgePieces> edges_;
};

inline Rational eval(const PWLFunction& f, const Rational& x) { return f.eval(x); }

inline PWLFunction upper_envelope(const std::vector<PWLFunction>& fs) {
  if (fs.empty()) throw std::invalid_argument("upper_envelope of nothing");
  const auto& vx = fs.front().vertex_x();
  std::vector<Rational> vval = fs.front().vertex_values();
  for (const auto& f : fs) {
    if (f.vertex_x() != vx) throw std::invalid_argument("upper_envelope: domains differ");
    for (std::size_t i = 0; i < vx.size(); ++i) vval[i] = std::max(vval[i], f.vertex_values()[i]);
  }
  std::vector<EdgePieces> edges(vx.size() - 1);
  for (std::size_t e = 0; e + 1 < vx.size(); ++e) {
    std::vector<EdgePieces> lists;
    lists.reserve(fs.size());
    for (const auto& f : fs) lists.push_back(f.edge(e));
    edges[e] = upper_envelope_pieces(std::move(lists));
  }
  return PWLFunction(vx, std::move(vval), std::move(edges));
}

// Leftmost minimum of an edge's pieces at a point strictly inside the edge,
// if one exists. Minima approached only at the ends are left to the vertices.
inline bool interior_min(const EdgePieces& ps, Rational& x, Rational& value) {
  bool found = false;
  for (std::size_t k = 1; k < ps.size(); ++k) {
    const Rational v = ps[k].line.at(ps[k].x0);
    if (!found || v < value) {
      found = true;
      x = ps[k].x0;
      value = v;
    }
  }
  return found;
}

// Leftmost global minimiser over vertex point values and edge interiors.
inline PWLMin min_point(const PWLFunction& f) {
  PWLMin best;
  best.at_vertex = true;
  best.index = 0;
  best.x = f.vertex_x()[0];
  best.value = f.vertex_values()[0];
  for (std::size_t i = 0; i < f.vertex_count(); ++i) {
    if (i > 0) {
      Rational x;
      Rational v;
      if (interior_min(f.edge(i - 1), x, v) && v < best.value) best = {false, i - 1, x, v};
    }
    if (f.vertex_values()[i] < best.value) best = {true, i, f.vertex_x()[i], f.vertex_values()[i]};
  }
  return best;
}

// Rows "piece,x0,x1,slope,intercept" then "vertex,x,value".
inline std::string to_csv(const PWLFunction& f) {
  std::ostringstream os;
  os << "kind,x0,x1,slope,intercept,value\n";
  for (const auto& e : f.edges()) {
    for (const auto& p : e) {
      os << "piece," << p.x0 << ',' << p.x1 << ',' << p.line.slope << ',' << p.line.intercept << ",\n";
    }
  }
  for (std::size_t i = 0; i < f.vertex_count(); ++i) {
    os << "vertex," << f.vertex_x()[i] << ",,,," << f.vertex_values()[i] << '\n';
  }
  return os.str();
}

}  // namespace mmr
