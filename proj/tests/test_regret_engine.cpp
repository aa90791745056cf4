#include <gtest/gtest.h>

#include "support.hpp"

using namespace mmr;
using testing_support::e1;
using testing_support::make_instance;
using testing_support::rats;

TEST(RegretEngine, E1FixedWeights) {
  const auto inst = e1();
  const auto rf = regret_function(inst, lower_scenario(inst));
  EXPECT_EQ(rf.f.vertex_values(), rats({22, 28, 6, 0}));
  const auto r = minmax_regret_sink(inst);
  EXPECT_EQ(r.sink, (SinkResult{Location::vertex(inst, 3), Rational(0)}));
  EXPECT_EQ(r.scenarios, 1u);
  EXPECT_EQ(minmax_regret_naive(inst).sink, r.sink);
}

TEST(RegretEngine, SingleVertex) {
  const auto inst = make_instance({0}, {1}, {9});
  EXPECT_EQ(minmax_regret_sink(inst).sink, (SinkResult{Location::vertex(inst, 0), Rational(0)}));
  EXPECT_EQ(minmax_regret_naive(inst).sink, (SinkResult{Location::vertex(inst, 0), Rational(0)}));
}

TEST(RegretEngine, RegretNonnegativeAndZeroAtSink) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const ExplicitScenario s{testing_support::random_weights(inst, rng)};
    const auto rf = regret_function(inst, s);
    EXPECT_EQ(rf.f.eval(rf.sink.location.x), Rational(0));
    EXPECT_EQ(rf.sink, minsum_naive(inst, s));
    for (int k = 0; k < 50; ++k) EXPECT_GE(rf.f.eval(testing_support::random_point(inst, rng)), Rational(0));
  }
}

TEST(RegretEngine, SingleScenarioGivesMinsumSink) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_instance(8, seed);
    inst.w_upper = inst.w_lower;
    const auto r = minmax_regret_sink(inst);
    EXPECT_EQ(r.sink.value, Rational(0));
    EXPECT_EQ(r.sink.location, minsum_naive(inst, lower_scenario(inst)).location);
  }
}

TEST(RegretEngine, TwoOrderedScenariosSwitchOncePerSide) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200 && checked < 40; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    const auto sinks = all_sinks(ctx, S);
    for (std::size_t b = 0; b < inst.size(); ++b) {
      const auto& g = S.group(Side::L, b);
      if (g.size() < 2) continue;
      const std::size_t t = rng() % (g.size() - 1);
      const PseudoBipartite s1{Side::L, b, g[t]};
      const PseudoBipartite s2{Side::L, b, g[t + 1]};
      const auto f1 = regret_function(ctx, s1, sinks.group(Side::L, b)[t]).f;
      const auto f2 = regret_function(ctx, s2, sinks.group(Side::L, b)[t + 1]).f;
      const auto env = upper_envelope({f1, f2});
      // Owner of each piece, walking away from v_b, changes at most once per side.
      for (int half = 0; half < 2; ++half) {
        int changes = 0;
        int owner = -1;
        for (std::size_t e = 0; e + 1 < inst.size(); ++e) {
          if ((half == 0) != (e < b)) continue;
          for (const auto& p : env.edge(e)) {
            const Rational mid = (p.x0 + p.x1) / Rational(2);
            const Rational d = f2.eval(mid) - f1.eval(mid);
            const int o = d.sign() > 0 ? 2 : d.sign() < 0 ? 1 : 0;
            if (o == 0) continue;
            if (owner != -1 && o != owner) ++changes;
            owner = o;
          }
        }
        EXPECT_LE(changes, 1);
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(RegretEngine, BoundaryEnvelopeMatchesGeneric) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    const auto sinks = all_sinks(ctx, S);
    std::mt19937_64 rng(seed);
    for (Side side : {Side::L, Side::R}) {
      for (std::size_t b = 0; b < inst.size(); ++b) {
        const auto fast = envelope_for_b(ctx, S, sinks, side, b);
        const auto ref = envelope_for_b_generic(ctx, S, sinks, side, b);
        EXPECT_EQ(fast.vertex_values(), ref.vertex_values());
        for (int k = 0; k < 500; ++k) {
          const Rational x = testing_support::random_point(inst, rng);
          ASSERT_EQ(fast.eval(x), ref.eval(x)) << "seed " << seed << " b " << b;
        }
        EXPECT_LE(fast.piece_count(), 4 * (S.group(side, b).size() + inst.size()));
      }
    }
  }
}

TEST(RegretEngine, SingleFunctionEnvelope) {
  const auto inst = make_instance({0, 3, 7}, {2, 1, 3}, {2, 4, 3});
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  const auto sinks = all_sinks(ctx, S);
  const auto env = envelope_for_b(ctx, S, sinks, Side::L, 0);
  ASSERT_EQ(S.group(Side::L, 0).size(), 1u);
  const auto rf = regret_function(ctx, {Side::L, 0, Rational(2)}, sinks.group(Side::L, 0)[0]).f;
  EXPECT_EQ(env.vertex_values(), rf.vertex_values());
  EXPECT_EQ(env.edges(), rf.edges());
}

TEST(RegretEngine, GlobalEnvelopeDominatesAndMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing_support::random_small(seed, 10);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    const auto sinks = all_sinks(ctx, S);
    std::vector<PWLFunction> per_b;
    for (Side side : {Side::L, Side::R}) {
      for (std::size_t b = 0; b < inst.size(); ++b) per_b.push_back(envelope_for_b(ctx, S, sinks, side, b));
    }
    const auto global = global_envelope(per_b);
    const auto streamed = minmax_regret_sink(inst);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 1000; ++k) {
      const Rational x = testing_support::random_point(inst, rng);
      Rational best = 0;
      for (const auto& s : S.scenarios) {
        const auto r = phi_naive(inst, s, Location::at(inst, x)) - minsum_naive(inst, s).value;
        best = std::max(best, r);
      }
      ASSERT_EQ(global.eval(x), best);
      ASSERT_EQ(streamed.envelope.eval(x), best);
    }
    EXPECT_LE(global.piece_count(), 10 * inst.size() * inst.size());
  }
}

TEST(RegretEngine, FastMatchesNaive) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testing_support::random_small(seed, 25);
    const auto a = minmax_regret_sink(inst);
    const auto b = minmax_regret_naive(inst);
    ASSERT_EQ(a.sink, b.sink) << save_instance(inst);
  }
}

TEST(RegretEngine, NaiveBlockSizeDoesNotMatter) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing_support::random_small(seed, 15);
    EXPECT_EQ(minmax_regret_naive(inst, 1).sink, minmax_regret_naive(inst).sink);
  }
}

TEST(RegretEngine, MonotoneDifference) {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = testing_support::random_small(seed, 12);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    for (int k = 0; k < 5; ++k) {
      const Side side = rng() % 2 ? Side::L : Side::R;
      const std::size_t b = rng() % inst.size();
      const auto& g = S.group(side, b);
      std::size_t i = rng() % g.size();
      std::size_t j = rng() % g.size();
      if (j < i) std::swap(i, j);
      const auto rep = check_monotone_difference(ctx, {side, b, g[i]}, {side, b, g[j]});
      EXPECT_TRUE(rep.ok()) << "seed " << seed;
    }
  }
  const auto inst = testing_support::e1();
  const EvalContext ctx(inst);
  const PseudoBipartite s{Side::L, 1, Rational(2)};
  EXPECT_TRUE(check_monotone_difference(ctx, s, s).ok());
  EXPECT_THROW(check_monotone_difference(ctx, s, {Side::R, 1, Rational(2)}), std::invalid_argument);
}
