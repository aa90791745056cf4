#pragma once

#include <random>
#include <vector>

#include "mmr/mmr.hpp"

namespace testing_support {

using mmr::PathInstance;
using mmr::Rational;

inline std::vector<Rational> rats(std::initializer_list<long long> v) {
  std::vector<Rational> out;
  for (long long a : v) out.emplace_back(a);
  return out;
}

inline PathInstance make_instance(std::initializer_list<long long> x, std::initializer_list<long long> lo,
                                  std::initializer_list<long long> up, Rational c = 1, Rational tau = 1) {
  PathInstance inst{rats(x), rats(lo), rats(up), c, tau};
  inst.validate();
  return inst;
}

// Fixed-weight reconstruction of the worked example.
inline PathInstance e1() { return make_instance({0, 4, 8, 11}, {8, 2, 4, 8}, {8, 2, 4, 8}); }

// Small random instance with mixed capacity and transit rate.
inline PathInstance random_small(std::uint64_t seed, std::size_t max_n) {
  std::mt19937_64 rng(seed * 7919 + 13);
  const std::size_t n = 1 + rng() % max_n;
  mmr::RandomSpec spec;
  if (rng() % 2) spec.spread = std::make_pair(0, 6);
  static const Rational factors[] = {Rational(1), Rational(2), Rational(1, 2)};
  spec.capacity = factors[rng() % 3];
  spec.tau = factors[rng() % 3];
  return mmr::random_instance(n, seed, spec);
}

inline std::vector<Rational> random_weights(const PathInstance& inst, std::mt19937_64& rng) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rational span = inst.w_upper[i] - inst.w_lower[i];
    w.push_back(inst.w_lower[i] + span * Rational(static_cast<long long>(rng() % 5), 4));
  }
  return w;
}

inline Rational random_point(const PathInstance& inst, std::mt19937_64& rng) {
  const Rational& X = inst.x.back();
  return X * Rational(static_cast<long long>(rng() % 97), 96);
}

}  // namespace testing_support
