#pragma once

// Path network with interval vertex weights, scenarios, locations and
// instance I/O. Vertex indices are 0-based throughout the library; the CLI
// and CSV output translate to 1-based numbering.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rational.hpp"

namespace mmr {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathInstance {
  std::vector<Rational> x;        // vertex coordinates, x[0] == 0
  std::vector<Rational> w_lower;
  std::vector<Rational> w_upper;
  Rational capacity = 1;
  Rational tau = 1;

  [[nodiscard]] std::size_t size() const { return x.size(); }

  // Throws InvalidInstance naming the offending index.
  void validate() const {
    const std::size_t n = x.size();
    if (n == 0) throw InvalidInstance("instance has no vertices");
    if (w_lower.size() != n || w_upper.size() != n) {
      throw InvalidInstance("w_lower/w_upper must have " + std::to_string(n) + " entries");
    }
    if (x[0] != Rational(0)) throw InvalidInstance("x[1] must be 0");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(x[i] < x[i + 1])) {
        throw InvalidInstance("coords not strictly increasing at edge " + std::to_string(i + 1));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (w_lower[i].sign() <= 0) {
        throw InvalidInstance("w_lower[" + std::to_string(i + 1) + "] must be positive");
      }
      if (w_upper[i] < w_lower[i]) {
        throw InvalidInstance("w_lower > w_upper at vertex " + std::to_string(i + 1));
      }
    }
    if (capacity.sign() <= 0) throw InvalidInstance("capacity must be positive");
    if (tau.sign() <= 0) throw InvalidInstance("tau must be positive");
  }
};

enum class Side { L, R };

inline char side_char(Side s) { return s == Side::L ? 'L' : 'R'; }

// Upper weights on one side of b, lower weights on the other.
// L: upper left of b, lower right of b. R: the reverse.
struct PseudoBipartite {
  Side side = Side::L;
  std::size_t b = 0;
  Rational wb;

  friend bool operator==(const PseudoBipartite&, const PseudoBipartite&) = default;
};

struct ExplicitScenario {
  std::vector<Rational> weights;

  friend bool operator==(const ExplicitScenario&, const ExplicitScenario&) = default;
};

using Scenario = std::variant<ExplicitScenario, PseudoBipartite>;

inline Scenario lower_scenario(const PathInstance& inst) {
  return PseudoBipartite{Side::L, 0, inst.w_lower[0]};
}

inline Scenario upper_scenario(const PathInstance& inst) {
  return PseudoBipartite{Side::L, inst.size() - 1, inst.w_upper.back()};
}

inline Rational scenario_weight(const PathInstance& inst, const Scenario& s, std::size_t i) {
  if (i >= inst.size()) throw std::out_of_range("vertex index " + std::to_string(i + 1) + " out of range");
  if (const auto* e = std::get_if<ExplicitScenario>(&s)) return e->weights.at(i);
  const auto& p = std::get<PseudoBipartite>(s);
  if (i == p.b) return p.wb;
  const bool left = i < p.b;
  return (left == (p.side == Side::L)) ? inst.w_upper[i] : inst.w_lower[i];
}

inline std::vector<Rational> scenario_weights(const PathInstance& inst, const Scenario& s) {
  if (const auto* e = std::get_if<ExplicitScenario>(&s)) return e->weights;
  std::vector<Rational> w(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) w[i] = scenario_weight(inst, s, i);
  return w;
}

inline bool scenario_valid(const PathInstance& inst, const Scenario& s) {
  if (const auto* e = std::get_if<ExplicitScenario>(&s)) {
    if (e->weights.size() != inst.size()) return false;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (e->weights[i] < inst.w_lower[i] || inst.w_upper[i] < e->weights[i]) return false;
    }
    return true;
  }
  const auto& p = std::get<PseudoBipartite>(s);
  return p.b < inst.size() && !(p.wb < inst.w_lower[p.b]) && !(inst.w_upper[p.b] < p.wb);
}

struct PrefixWeights {
  std::vector<Rational> W_lower;  // W_lower[i] = sum of w_lower[0..i]
  std::vector<Rational> W_upper;
};

inline PrefixWeights prefix_weights(const PathInstance& inst) {
  PrefixWeights p;
  p.W_lower.reserve(inst.size());
  p.W_upper.reserve(inst.size());
  Rational lo = 0;
  Rational up = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    lo += inst.w_lower[i];
    up += inst.w_upper[i];
    p.W_lower.push_back(lo);
    p.W_upper.push_back(up);
  }
  return p;
}

// The path read right to left: x'[i] = x[n-1] - x[n-1-i]. An R-type scenario
// with boundary b is the L-type scenario with boundary n-1-b here.
inline PathInstance mirror(const PathInstance& inst) {
  const std::size_t n = inst.size();
  PathInstance m;
  m.capacity = inst.capacity;
  m.tau = inst.tau;
  m.x.resize(n);
  m.w_lower.resize(n);
  m.w_upper.resize(n);
  const Rational& end = inst.x.back();
  for (std::size_t i = 0; i < n; ++i) {
    m.x[i] = end - inst.x[n - 1 - i];
    m.w_lower[i] = inst.w_lower[n - 1 - i];
    m.w_upper[i] = inst.w_upper[n - 1 - i];
  }
  return m;
}

// A point on the path. Edge i joins vertex i and i+1; an edge location lies
// strictly inside it. x is always the absolute coordinate.
struct Location {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  std::size_t index = 0;
  Rational x;

  static Location vertex(const PathInstance& inst, std::size_t i) {
    return {Kind::Vertex, i, inst.x.at(i)};
  }

  static Location on_edge(const PathInstance& inst, std::size_t e, Rational at) {
    if (e + 1 >= inst.size() || !(inst.x[e] < at) || !(at < inst.x[e + 1])) {
      throw std::invalid_argument("edge location outside the open edge");
    }
    return {Kind::Edge, e, std::move(at)};
  }

  // Vertex if at is a vertex coordinate, otherwise the enclosing edge.
  static Location at(const PathInstance& inst, const Rational& at) {
    if (at < inst.x.front() || inst.x.back() < at) throw std::out_of_range("point outside the path");
    std::size_t lo = 0;
    std::size_t hi = inst.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (inst.x[mid] <= at) lo = mid; else hi = mid - 1;
    }
    if (inst.x[lo] == at) return vertex(inst, lo);
    return {Kind::Edge, lo, at};
  }

  [[nodiscard]] bool is_vertex() const { return kind == Kind::Vertex; }

  // "v3" or "e2@17/2" in 1-based numbering.
  [[nodiscard]] std::string label() const {
    if (is_vertex()) return "v" + std::to_string(index + 1);
    return "e" + std::to_string(index + 1) + "@" + x.str();
  }

  friend bool operator==(const Location& a, const Location& b) {
    return a.kind == b.kind && a.index == b.index && a.x == b.x;
  }
};

struct SinkResult {
  Location location;
  Rational value;

  friend bool operator==(const SinkResult&, const SinkResult&) = default;
};

// ---- instance file I/O ----

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& field) {
  try {
    if (v.is_number_integer()) return Rational(static_cast<long long>(v.get<std::int64_t>()));
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(field + ": " + e.what());
  }
  throw ParseError(field + ": expected an integer or a \"p/q\" string");
}

inline std::vector<Rational> json_rational_array(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError("missing field \"" + key + "\"");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError("field \"" + key + "\" must be an array");
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(json_rational(arr[i], key + "[" + std::to_string(i + 1) + "]"));
  }
  return out;
}

inline nlohmann::json rational_json(const Rational& r) {
  if (r.is_integer() && r.num() >= std::numeric_limits<std::int64_t>::min() &&
      r.num() <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(r.num());
  }
  return r.str();
}

}  // namespace detail

inline PathInstance load_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  PathInstance inst;
  const auto lengths = detail::json_rational_array(doc, "edge_lengths");
  inst.w_lower = detail::json_rational_array(doc, "w_lower");
  inst.w_upper = detail::json_rational_array(doc, "w_upper");
  for (const char* key : {"capacity", "tau"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  }
  inst.capacity = detail::json_rational(doc.at("capacity"), "capacity");
  inst.tau = detail::json_rational(doc.at("tau"), "tau");
  if (inst.w_lower.empty()) throw InvalidInstance("instance has no vertices");
  if (lengths.size() + 1 != inst.w_lower.size()) {
    throw InvalidInstance("edge_lengths must have n-1 = " + std::to_string(inst.w_lower.size() - 1) +
                          " entries");
  }
  inst.x.reserve(inst.w_lower.size());
  inst.x.emplace_back(0);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i].sign() <= 0) {
      throw InvalidInstance("coords not strictly increasing: edge_lengths[" + std::to_string(i + 1) +
                            "] must be positive");
    }
    inst.x.push_back(inst.x.back() + lengths[i]);
  }
  inst.validate();
  return inst;
}

inline std::string save_instance(const PathInstance& inst) {
  nlohmann::ordered_json doc;
  auto lengths = nlohmann::json::array();
  for (std::size_t i = 0; i + 1 < inst.size(); ++i) {
    lengths.push_back(detail::rational_json(inst.x[i + 1] - inst.x[i]));
  }
  auto lo = nlohmann::json::array();
  auto up = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    lo.push_back(detail::rational_json(inst.w_lower[i]));
    up.push_back(detail::rational_json(inst.w_upper[i]));
  }
  doc["edge_lengths"] = lengths;
  doc["w_lower"] = lo;
  doc["w_upper"] = up;
  doc["capacity"] = detail::rational_json(inst.capacity);
  doc["tau"] = detail::rational_json(inst.tau);
  return doc.dump() + "\n";
}

// ---- random generation ----

struct RandomSpec {
  int w_min = 1;
  int w_max = 9;
  int len_min = 1;
  int len_max = 9;
  // When set, w_upper = w_lower + U[spread]; otherwise the two bounds are two
  // independent draws from [w_min, w_max], sorted.
  std::optional<std::pair<int, int>> spread;
  Rational capacity = 1;
  Rational tau = 1;
};

inline PathInstance random_instance(std::size_t n, std::uint64_t seed, const RandomSpec& spec = {}) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (spec.w_min < 1 || spec.w_max < spec.w_min) throw std::invalid_argument("empty weight range");
  if (spec.len_min < 1 || spec.len_max < spec.len_min) throw std::invalid_argument("empty length range");
  if (spec.spread && (spec.spread->first < 0 || spec.spread->second < spec.spread->first)) {
    throw std::invalid_argument("empty spread range");
  }
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  PathInstance inst;
  inst.capacity = spec.capacity;
  inst.tau = spec.tau;
  inst.x.emplace_back(0);
  for (std::size_t i = 1; i < n; ++i) inst.x.push_back(inst.x.back() + draw(spec.len_min, spec.len_max));
  for (std::size_t i = 0; i < n; ++i) {
    int lo;
    int up;
    if (spec.spread) {
      lo = draw(spec.w_min, spec.w_max);
      up = lo + draw(spec.spread->first, spec.spread->second);
    } else {
      lo = draw(spec.w_min, spec.w_max);
      up = draw(spec.w_min, spec.w_max);
      if (up < lo) std::swap(lo, up);
    }
    inst.w_lower.emplace_back(lo);
    inst.w_upper.emplace_back(up);
  }
  inst.validate();
  return inst;
}

}  // namespace mmr
