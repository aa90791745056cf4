#include <gtest/gtest.h>

#include "support.hpp"

using namespace mmr;
using testing_support::rats;

namespace {

PWLFunction affine(const std::vector<Rational>& vx, const Line& l) {
  std::vector<Rational> vv;
  for (const auto& x : vx) vv.push_back(l.at(x));
  std::vector<EdgePieces> edges;
  for (std::size_t e = 0; e + 1 < vx.size(); ++e) edges.push_back({{vx[e], vx[e + 1], l}});
  return PWLFunction(vx, vv, edges);
}

Rational brute_max(const std::vector<PWLFunction>& fs, const Rational& x) {
  Rational m = fs[0].eval(x);
  for (const auto& f : fs) m = std::max(m, f.eval(x));
  return m;
}

}  // namespace

TEST(Pwl, EvalAffine) {
  const auto f = affine(rats({0, 10}), {Rational(2), Rational(1)});
  EXPECT_EQ(f.eval(Rational(3)), Rational(7));
  EXPECT_THROW((void)f.eval(Rational(11)), std::out_of_range);
}

TEST(Pwl, SpikeSemantics) {
  const PWLFunction f(rats({0, 5, 10}), rats({0, 5, 0}),
                      {{{Rational(0), Rational(5), {Rational(8, 5), Rational(0)}}},
                       {{Rational(5), Rational(10), {Rational(0), Rational(9)}}}});
  EXPECT_EQ(f.eval(Rational(5)), Rational(5));
  EXPECT_EQ(f.left_limit(Rational(5)), Rational(8));
  EXPECT_EQ(f.right_limit(Rational(5)), Rational(9));
}

TEST(Pwl, E1CostAsFunction) {
  const auto inst = testing_support::e1();
  const auto sc = scenario_costs(inst, inst.w_lower);
  std::vector<EdgePieces> edges;
  for (std::size_t e = 0; e + 1 < inst.size(); ++e) edges.push_back({{inst.x[e], inst.x[e + 1], sc.edge[e]}});
  const PWLFunction f(inst.x, sc.vertex, edges);
  EXPECT_EQ(f.left_limit(Rational(4)), Rational(186));
  EXPECT_EQ(f.eval(Rational(4)), Rational(184));
}

TEST(Pwl, EnvelopeOfSingleIsIdentity) {
  const auto f = affine(rats({0, 3, 10}), {Rational(-1), Rational(4)});
  const auto g = upper_envelope({f});
  EXPECT_EQ(g.edges(), f.edges());
  EXPECT_EQ(g.vertex_values(), f.vertex_values());
}

TEST(Pwl, CrossingLines) {
  const auto a = affine(rats({0, 10}), {Rational(1), Rational(0)});
  const auto b = affine(rats({0, 10}), {Rational(-1), Rational(10)});
  const auto env = upper_envelope({a, b});
  ASSERT_EQ(env.edge(0).size(), 2u);
  EXPECT_EQ(env.edge(0)[0].x1, Rational(5));
  const auto m = min_point(env);
  EXPECT_FALSE(m.at_vertex);
  EXPECT_EQ(m.x, Rational(5));
  EXPECT_EQ(m.value, Rational(5));
}

TEST(Pwl, MinPointRules) {
  const auto flat = affine(rats({0, 4, 9}), {Rational(0), Rational(3)});
  const auto m = min_point(flat);
  EXPECT_TRUE(m.at_vertex);
  EXPECT_EQ(m.index, 0u);
  // A spike below the edge minimum wins.
  const PWLFunction v(rats({0, 5, 10}), rats({10, 1, 10}),
                      {{{Rational(0), Rational(5), {Rational(-1), Rational(10)}}},
                       {{Rational(5), Rational(10), {Rational(1), Rational(0)}}}});
  const auto mv = min_point(v);
  EXPECT_TRUE(mv.at_vertex);
  EXPECT_EQ(mv.index, 1u);
  EXPECT_EQ(mv.value, Rational(1));
}

TEST(Pwl, RandomEnvelopesMatchSampling) {
  std::mt19937_64 rng(77);
  auto r = [&](int lo, int hi) { return Rational(lo + static_cast<long long>(rng() % (hi - lo + 1))); };
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    std::vector<Rational> vx{Rational(0)};
    for (std::size_t i = 1; i < n; ++i) vx.push_back(vx.back() + r(1, 6));
    std::vector<PWLFunction> fs;
    const std::size_t m = 1 + rng() % 6;
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<EdgePieces> edges;
      std::vector<Rational> vv;
      for (std::size_t e = 0; e + 1 < n; ++e) {
        // up to three continuous pieces per edge
        EdgePieces ps;
        Rational x0 = vx[e];
        Rational y0 = r(-10, 10);
        const int cuts = static_cast<int>(rng() % 3);
        for (int c = 0; c <= cuts; ++c) {
          const Rational x1 = c == cuts ? vx[e + 1] : x0 + (vx[e + 1] - x0) * Rational(1, 2);
          const Rational y1 = r(-10, 10);
          const Rational slope = (y1 - y0) / (x1 - x0);
          ps.push_back({x0, x1, {slope, y0 - slope * x0}});
          x0 = x1;
          y0 = y1;
        }
        edges.push_back(ps);
      }
      for (std::size_t i = 0; i < n; ++i) {
        Rational lim = i > 0 ? edges[i - 1].back().line.at(vx[i]) : edges[0].front().line.at(vx[0]);
        if (i + 1 < n) lim = std::min(lim, edges[i].front().line.at(vx[i]));
        vv.push_back(lim - r(0, 3));
      }
      fs.emplace_back(vx, vv, edges);
    }
    const auto env = upper_envelope(fs);
    for (int s = 0; s < 1000; ++s) {
      const Rational x = vx.back() * Rational(static_cast<long long>(rng() % 10007), 10006);
      ASSERT_EQ(env.eval(x), brute_max(fs, x));
    }
    for (const auto& x : vx) EXPECT_EQ(env.eval(x), brute_max(fs, x));
    const auto mp = min_point(env);
    for (std::size_t e = 0; e + 1 < n; ++e) {
      for (const auto& p : env.edge(e)) {
        EXPECT_LE(mp.value, p.line.at(p.x0));
        EXPECT_LE(mp.value, p.line.at(p.x1));
      }
    }
    for (const auto& v : env.vertex_values()) EXPECT_LE(mp.value, v);
  }
}

TEST(Pwl, CsvExport) {
  const auto f = affine(rats({0, 2}), {Rational(1, 2), Rational(1)});
  EXPECT_EQ(to_csv(f), "kind,x0,x1,slope,intercept,value\npiece,0,2,1/2,1,\nvertex,0,,,,1\nvertex,2,,,,2\n");
}

TEST(Pwl, RejectsGaps) {
  EXPECT_THROW(PWLFunction(rats({0, 4}), rats({0, 0}), {{{Rational(0), Rational(3), {Rational(0), Rational(0)}}}}),
               std::invalid_argument);
}
