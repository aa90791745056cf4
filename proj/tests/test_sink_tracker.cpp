#include <gtest/gtest.h>

#include "support.hpp"

using namespace mmr;
using testing_support::make_instance;
using testing_support::rats;

TEST(SinkTracker, FixedWeightsSingleScenario) {
  const auto inst = make_instance({0, 4, 8, 11}, {8, 2, 4, 8}, {8, 2, 4, 8});
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  const auto table = all_sinks(ctx, S);
  ASSERT_EQ(S.scenarios.size(), 1u);
  EXPECT_EQ(sink_of(S, table, S.scenarios[0]), minsum_naive(inst, S.scenarios[0]));
}

TEST(SinkTracker, SingleVertex) {
  const auto inst = make_instance({0}, {1}, {3});
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  TrackerStats stats;
  const auto r = track_sinks_for_b(ctx, S, Side::L, 0, {}, stats);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& s : r) EXPECT_EQ(s, (SinkResult{Location::vertex(inst, 0), Rational(0)}));
}

TEST(SinkTracker, SinkJumpsAcrossBoundaryAtHandSolvedWeight) {
  // Weights (6, w, 7): the cost at v_1 is w + w^2/2 + 189/2 and at v_3 it
  // is 9(w + 6) + (w + 6)^2/2; they meet at w = 45/28, where v_1 wins the tie.
  const auto inst = make_instance({0, 1, 10}, {5, 1, 7}, {6, 4, 8});
  const EvalContext ctx(inst);
  const BoundaryView view(ctx.frame(Side::L), 1);
  const std::vector<Rational> ws{Rational(1), Rational(3, 2), Rational(45, 28), Rational(2), Rational(4)};
  TrackerStats stats;
  const auto fs = track_frame_sinks(view, ws, true, {true}, stats);
  EXPECT_EQ(fs.vertex, (std::vector<int>{2, 2, 0, 0, 0}));
  EXPECT_EQ(fs.cost[2], Rational(45, 28) + Rational(45 * 45, 28 * 28 * 2) + Rational(189, 2));
  EXPECT_EQ(stats.audit_mismatches, 0u);
}

TEST(SinkTracker, TwoVertices) {
  const auto inst = make_instance({0, 2}, {1, 1}, {5, 5});
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  const auto table = all_sinks(ctx, S);
  for (const auto& s : S.scenarios) EXPECT_EQ(sink_of(S, table, s), minsum_naive(inst, s));
}

TEST(SinkTracker, AuditAgainstNaive) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testing_support::random_small(seed, 30);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    const auto table = all_sinks(ctx, S, {true});
    EXPECT_EQ(table.stats.audit_mismatches, 0u);
    for (Side side : {Side::L, Side::R}) {
      for (std::size_t b = 0; b < inst.size(); ++b) {
        const auto& g = S.group(side, b);
        for (std::size_t t = 0; t < g.size(); ++t) {
          ASSERT_EQ(table.group(side, b)[t], minsum_naive(inst, PseudoBipartite{side, b, g[t]}))
              << "seed " << seed << " side " << side_char(side) << " b " << b << " w " << g[t];
        }
      }
    }
  }
}

TEST(SinkTracker, UnknownScenarioRejected) {
  const auto inst = make_instance({0, 2}, {1, 1}, {5, 5});
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  const auto table = all_sinks(ctx, S);
  EXPECT_THROW(sink_of(S, table, {Side::L, 0, Rational(7, 3)}), std::invalid_argument);
}
