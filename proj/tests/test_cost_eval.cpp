#include <gtest/gtest.h>

#include "support.hpp"

using namespace mmr;
using testing_support::e1;
using testing_support::make_instance;

TEST(CostEval, E1InteriorFormula) {
  const auto inst = e1();
  const auto s = lower_scenario(inst);
  for (long long num = 1; num < 16; ++num) {
    const Rational x(num, 4);
    EXPECT_EQ(phi_naive(inst, s, Location::at(inst, x)), Rational(210) - Rational(6) * x);
  }
}

TEST(CostEval, E1VertexCosts) {
  const auto inst = e1();
  const auto s = lower_scenario(inst);
  const long long expect[] = {178, 184, 162, 156};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(phi_naive(inst, s, Location::vertex(inst, i)), Rational(expect[i]));
    EXPECT_EQ(aggregate_time(inst, s, Location::vertex(inst, i)), Rational(expect[i]));
  }
  EXPECT_EQ(minsum_naive(inst, s), (SinkResult{Location::vertex(inst, 3), Rational(156)}));
}

TEST(CostEval, MinsumEdgeCases) {
  const auto one = make_instance({0}, {2}, {4});
  EXPECT_EQ(minsum_naive(one, upper_scenario(one)), (SinkResult{Location::vertex(one, 0), Rational(0)}));
  const auto sym = make_instance({0, 3}, {2, 2}, {2, 2});
  EXPECT_EQ(minsum_naive(sym, lower_scenario(sym)).location.index, 0u);
}

TEST(CostEval, ScenarioCostsMatchNaive) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = testing_support::random_small(seed, 12);
    const auto w = testing_support::random_weights(inst, rng);
    const auto sc = scenario_costs(inst, w);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      EXPECT_EQ(sc.vertex[i], phi_naive(inst, w, Location::vertex(inst, i)));
    }
    for (std::size_t e = 0; e + 1 < inst.size(); ++e) {
      const Rational mid = (inst.x[e] + inst.x[e + 1]) / Rational(2);
      EXPECT_EQ(sc.edge[e].at(mid), phi_naive(inst, w, Location::at(inst, mid)));
    }
  }
}

TEST(CostEval, NegativeSpikesAndAffineEdges) {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const auto w = testing_support::random_weights(inst, rng);
    const auto sc = scenario_costs(inst, w);
    const std::size_t n = inst.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        EXPECT_LE(sc.vertex[i], sc.edge[i - 1].at(inst.x[i]));
      }
      if (i + 1 < n) {
        EXPECT_LE(sc.vertex[i], sc.edge[i].at(inst.x[i]));
      }
    }
    for (std::size_t e = 0; e + 1 < n; ++e) {
      const Rational d = inst.x[e + 1] - inst.x[e];
      const Rational a = inst.x[e] + d / Rational(4);
      const Rational b = inst.x[e] + d / Rational(2);
      const Rational c = inst.x[e] + d * Rational(3, 4);
      const Rational fa = phi_naive(inst, w, Location::at(inst, a));
      const Rational fb = phi_naive(inst, w, Location::at(inst, b));
      const Rational fc = phi_naive(inst, w, Location::at(inst, c));
      EXPECT_EQ(fb - fa, fc - fb);
    }
  }
}

TEST(CostEval, FastMatchesNaiveOnCriticalScenarios) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = testing_support::random_small(seed, 8);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    for (const auto& s : S.scenarios) {
      for (std::size_t i = 0; i < inst.size(); ++i) {
        ASSERT_EQ(phi_vertex_fast(ctx, s, i), phi_naive(inst, s, Location::vertex(inst, i)));
      }
    }
  }
}

TEST(CostEval, FastAcceptsAnyPseudoBipartite) {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const EvalContext ctx(inst);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t b = rng() % inst.size();
      const Side side = rng() % 2 ? Side::L : Side::R;
      const Rational w = inst.w_lower[b] + (inst.w_upper[b] - inst.w_lower[b]) * Rational(rng() % 7, 6);
      const PseudoBipartite s{side, b, w};
      for (int k = 0; k < 5; ++k) {
        const Rational x = testing_support::random_point(inst, rng);
        ASSERT_EQ(phi_point_fast(ctx, s, x), phi_naive(inst, s, Location::at(inst, x)));
      }
    }
  }
}

TEST(CostEval, FastExtremesAndE1Point) {
  const auto inst = e1();
  const EvalContext ctx(inst);
  const PseudoBipartite s0{Side::L, 0, inst.w_lower[0]};
  EXPECT_EQ(phi_point_fast(ctx, s0, Rational(2)), Rational(198));
  EXPECT_EQ(phi_point_fast(ctx, s0, Rational(8)), Rational(162));
  EXPECT_THROW(phi_vertex_fast(ctx, ExplicitScenario{inst.w_lower}, 0), std::invalid_argument);
}

TEST(CostEval, BoundaryVertexCostIgnoresItsWeight) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const EvalContext ctx(inst);
    for (std::size_t b = 0; b < inst.size(); ++b) {
      const PseudoBipartite lo{Side::L, b, inst.w_lower[b]};
      const PseudoBipartite up{Side::L, b, inst.w_upper[b]};
      EXPECT_EQ(ctx.phi_vertex(lo, b), ctx.phi_vertex(up, b));
    }
  }
}

TEST(CostEval, BoundaryViewMatchesContext) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testing_support::random_small(seed, 12);
    const SideContext sc(inst);
    const int n = static_cast<int>(inst.size());
    for (int b = 0; b < n; ++b) {
      const BoundaryView view(sc, b);
      for (int t = 0; t < 4; ++t) {
        const Rational w = inst.w_lower[b] + (inst.w_upper[b] - inst.w_lower[b]) * Rational(rng() % 5, 4);
        for (int i = 0; i < n; ++i) EXPECT_EQ(view.vertex_cost(w, i), sc.vertex_cost(b, w, i));
        for (int k = 0; k + 1 < n; ++k) EXPECT_EQ(view.edge_line(w, k), sc.edge_line(b, w, k));
      }
    }
  }
}
