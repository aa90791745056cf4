#pragma once

// Randomised cross-check suites and the scaling benchmark, shared by the CLI
// and the acceptance runner.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fluid_oracle.hpp"
#include "regret_engine.hpp"

namespace mmr::verify {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;  // detail plus the instance JSON, for replay

  [[nodiscard]] bool ok() const { return failed == 0 && passed > 0; }

  void record(bool good, const PathInstance& inst, const std::string& detail) {
    if (good) {
      ++passed;
      return;
    }
    if (failed++ == 0) first_failure = detail + "\n" + save_instance(inst);
  }
};

// Integer weights <= 9 and lengths <= 9, c and tau from {1, 2, 1/2}; half
// of the instances draw the upper weight as lower + [0, 9].
inline PathInstance small_instance(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n) {
  static const Rational factors[] = {Rational(1), Rational(2), Rational(1, 2)};
  const std::size_t n = min_n + rng() % (max_n - min_n + 1);
  RandomSpec spec;
  spec.capacity = factors[rng() % 3];
  spec.tau = factors[rng() % 3];
  if (rng() % 2) spec.spread = std::make_pair(0, 9);
  PathInstance inst = random_instance(n, rng(), spec);
  for (auto& w : inst.w_upper) w = std::min(w, Rational(9));
  return inst;
}

inline std::vector<Rational> random_scenario(const PathInstance& inst, std::mt19937_64& rng) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rational span = inst.w_upper[i] - inst.w_lower[i];
    w.push_back(inst.w_lower[i] + span * Rational(static_cast<long long>(rng() % 9), 8));
  }
  return w;
}

// A vertex one time in three, otherwise a rational point.
inline Rational random_point(const PathInstance& inst, std::mt19937_64& rng) {
  if (rng() % 3 == 0) return inst.x[rng() % inst.size()];
  return inst.x.back() * Rational(static_cast<long long>(rng() % 1001), 1000);
}

inline SuiteResult oracle_suite(std::uint64_t seed, std::size_t trials, std::size_t max_n) {
  SuiteResult r;
  r.name = "oracle equivalence";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = small_instance(rng, 2, std::max<std::size_t>(2, max_n));
    for (int k = 0; k < 5; ++k) {
      const ExplicitScenario s{random_scenario(inst, rng)};
      for (int j = 0; j < 5; ++j) {
        const Location loc = Location::at(inst, random_point(inst, rng));
        const Rational a = aggregate_time(inst, s, loc);
        const Rational b = phi_naive(inst, s, loc);
        r.record(a == b, inst, "at " + loc.label() + ": simulation " + a.str() + " vs formula " + b.str());
      }
    }
  }
  return r;
}

inline SuiteResult evaluator_suite(std::uint64_t seed, std::size_t trials, std::size_t max_n) {
  SuiteResult r;
  r.name = "fast evaluator";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = small_instance(rng, 1, max_n);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    for (const auto& s : S.scenarios) {
      for (std::size_t i = 0; i < inst.size(); ++i) {
        const Rational a = phi_vertex_fast(ctx, s, i);
        const Rational b = phi_naive(inst, s, Location::vertex(inst, i));
        r.record(a == b, inst,
                 std::string(1, side_char(s.side)) + "(" + std::to_string(s.b + 1) + ", " + s.wb.str() + ") at v" +
                     std::to_string(i + 1) + ": fast " + a.str() + " vs naive " + b.str());
      }
    }
  }
  return r;
}

inline SuiteResult sink_suite(std::uint64_t seed, std::size_t trials, std::size_t max_n, bool audit = true) {
  SuiteResult r;
  r.name = "sink audit";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = small_instance(rng, 1, max_n);
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    const auto table = all_sinks(ctx, S, {audit});
    for (Side side : {Side::L, Side::R}) {
      for (std::size_t b = 0; b < inst.size(); ++b) {
        const auto& g = S.group(side, b);
        for (std::size_t k = 0; k < g.size(); ++k) {
          const auto& got = table.group(side, b)[k];
          const auto want = minsum_naive(inst, PseudoBipartite{side, b, g[k]});
          r.record(got == want, inst,
                   std::string(1, side_char(side)) + "(" + std::to_string(b + 1) + ", " + g[k].str() +
                       "): tracked " + got.location.label() + " " + got.value.str() + " vs naive " +
                       want.location.label() + " " + want.value.str());
        }
      }
    }
    if (table.stats.audit_mismatches > 0) {
      r.record(false, inst, "binary search disagreed with the linear scan");
    }
  }
  return r;
}

inline SuiteResult pipeline_suite(std::uint64_t seed, std::size_t trials, std::size_t max_n) {
  SuiteResult r;
  r.name = "pipeline vs naive";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = small_instance(rng, 1, max_n);
    const auto a = minmax_regret_sink(inst).sink;
    const auto b = minmax_regret_naive(inst).sink;
    r.record(a == b, inst,
             "fast " + a.location.label() + " " + a.value.str() + " vs naive " + b.location.label() + " " +
                 b.value.str());
  }
  return r;
}

// Random scenarios of the whole box against R_max from the critical set.
inline SuiteResult dominance_suite(std::uint64_t seed, std::size_t pairs, std::size_t max_n) {
  SuiteResult r;
  r.name = "dominance";
  std::mt19937_64 rng(seed);
  std::size_t done = 0;
  while (done < pairs) {
    const auto inst = small_instance(rng, 1, max_n);
    const auto rmax = minmax_regret_sink(inst).envelope;
    for (int k = 0; k < 10 && done < pairs; ++k, ++done) {
      const ExplicitScenario s{random_scenario(inst, rng)};
      const auto rf = regret_function(inst, s);
      const Rational x = random_point(inst, rng);
      const Rational a = rf.f.eval(x);
      const Rational b = rmax.eval(x);
      r.record(!(b < a), inst, "at x = " + x.str() + ": regret " + a.str() + " above envelope " + b.str());
    }
  }
  return r;
}

inline SuiteResult monotone_suite(std::uint64_t seed, std::size_t pairs, std::size_t max_n) {
  SuiteResult r;
  r.name = "monotone difference";
  std::mt19937_64 rng(seed);
  std::size_t done = 0;
  while (done < pairs) {
    const auto inst = small_instance(rng, 2, std::max<std::size_t>(2, max_n));
    const EvalContext ctx(inst);
    const auto S = enumerate_S_star(inst);
    for (int k = 0; k < 5 && done < pairs; ++k) {
      const Side side = rng() % 2 ? Side::L : Side::R;
      const std::size_t b = rng() % inst.size();
      const auto& g = S.group(side, b);
      if (g.size() < 2) continue;
      std::size_t i = rng() % g.size();
      std::size_t j = rng() % g.size();
      if (i == j) continue;
      if (j < i) std::swap(i, j);
      const auto rep = check_monotone_difference(ctx, {side, b, g[i]}, {side, b, g[j]});
      r.record(rep.ok(), inst,
               std::string(1, side_char(side)) + "(" + std::to_string(b + 1) + ") weights " + g[i].str() + " < " +
                   g[j].str() + ": monotone " + (rep.monotone ? "yes" : "no") + ", sign changes " +
                   std::to_string(rep.sign_changes_left) + "/" + std::to_string(rep.sign_changes_right));
      ++done;
    }
  }
  return r;
}

// ---- scaling benchmark ----

// Benchmark distribution: c = 1/2 and tau = 2 keep every cost integral.
inline RandomSpec bench_spec() {
  RandomSpec spec;
  spec.w_min = 1;
  spec.w_max = 10;
  spec.spread = std::make_pair(0, 20);
  spec.len_min = 5;
  spec.len_max = 15;
  spec.capacity = Rational(1, 2);
  spec.tau = Rational(2);
  return spec;
}

struct BenchRow {
  std::size_t n = 0;
  double seconds = 0;  // median
  std::size_t scenarios = 0;
  std::size_t pieces = 0;
  SinkResult sink;
};

inline double median_seconds(int runs, const std::function<void()>& work) {
  std::vector<double> t;
  for (int k = 0; k < runs; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    work();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

inline BenchRow bench_fast(std::size_t n, std::uint64_t seed, int runs) {
  const auto inst = random_instance(n, seed, bench_spec());
  BenchRow row;
  row.n = n;
  row.seconds = median_seconds(runs, [&] {
    const auto res = minmax_regret_sink(inst);
    row.scenarios = res.scenarios;
    row.pieces = res.envelope_pieces;
    row.sink = res.sink;
  });
  return row;
}

inline BenchRow bench_naive(std::size_t n, std::uint64_t seed, int runs) {
  const auto inst = random_instance(n, seed, bench_spec());
  BenchRow row;
  row.n = n;
  row.seconds = median_seconds(runs, [&] {
    const auto res = minmax_regret_naive(inst);
    row.scenarios = res.scenarios;
    row.sink = res.sink;
  });
  return row;
}

// Least-squares slope of log(seconds) against log(n).
inline double loglog_slope(const std::vector<BenchRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace mmr::verify
