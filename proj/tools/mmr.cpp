// mmr: command-line front end.
//
// Exit status: 0 success, 1 bad input (parse or validation), 2 a
// verification or audit found a disagreement.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mmr/mmr.hpp"
#include "mmr/verify.hpp"

using namespace mmr;

namespace {

constexpr int kBadInput = 1;
constexpr int kVerifyFailed = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PathInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

// Opens `path` for writing, or returns stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError("cannot write " + path);
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string exact_and_decimal(const Rational& r) { return r.str() + " (" + r.decimal(6) + ")"; }

// lower | upper | L:b:w | R:b:w (b 1-based) | w1,w2,...
Scenario parse_scenario(const PathInstance& inst, const std::string& text) {
  if (text == "lower") return lower_scenario(inst);
  if (text == "upper") return upper_scenario(inst);
  Scenario s;
  try {
    if (text.size() > 2 && (text[0] == 'L' || text[0] == 'R') && text[1] == ':') {
      const auto colon = text.find(':', 2);
      if (colon == std::string::npos) throw InputError("expected side:b:w");
      const long b = std::stol(text.substr(2, colon - 2));
      if (b < 1 || static_cast<std::size_t>(b) > inst.size()) throw InputError("boundary vertex out of range");
      s = PseudoBipartite{text[0] == 'L' ? Side::L : Side::R, static_cast<std::size_t>(b - 1),
                          Rational::parse(text.substr(colon + 1))};
    } else {
      ExplicitScenario e;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) e.weights.push_back(Rational::parse(item));
      s = e;
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError("bad scenario '" + text + "': " + e.what());
  }
  if (!scenario_valid(inst, s)) throw InputError("scenario '" + text + "' is outside the weight intervals");
  return s;
}

int cmd_gen(std::size_t n, std::uint64_t seed, const RandomSpec& spec, const std::string& out) {
  Output o(out);
  o.get() << save_instance(random_instance(n, seed, spec));
  return 0;
}

int cmd_minsum(const std::string& path, const std::string& scenario) {
  const auto inst = read_instance(path);
  const auto r = minsum_naive(inst, parse_scenario(inst, scenario));
  std::cout << "sink " << r.location.label() << " cost " << exact_and_decimal(r.value) << "\n";
  return 0;
}

int cmd_scenarios(const std::string& path, const std::string& out) {
  const auto inst = read_instance(path);
  const auto S = enumerate_S_star(inst);
  Output o(out);
  o.get() << "side,b,wb,wb_decimal\n";
  for (const auto& s : S.scenarios) {
    o.get() << side_char(s.side) << ',' << s.b + 1 << ',' << s.wb << ',' << s.wb.decimal(6) << '\n';
  }
  return 0;
}

int cmd_sinks(const std::string& path, const std::string& out, bool audit) {
  const auto inst = read_instance(path);
  const EvalContext ctx(inst);
  const auto S = enumerate_S_star(inst);
  const auto table = all_sinks(ctx, S, {audit});
  Output o(out);
  o.get() << "side,b,wb,sink,cost,cost_decimal\n";
  std::size_t bad = 0;
  for (const auto& s : S.scenarios) {
    const auto& r = sink_of(S, table, s);
    o.get() << side_char(s.side) << ',' << s.b + 1 << ',' << s.wb << ',' << r.location.label() << ',' << r.value
            << ',' << r.value.decimal(6) << '\n';
    if (audit && !(r == minsum_naive(inst, s))) ++bad;
  }
  if (audit) {
    std::cerr << "audit: " << S.scenarios.size() - bad << "/" << S.scenarios.size() << " sinks match, "
              << table.stats.audit_mismatches << " search mismatches\n";
    if (bad > 0 || table.stats.audit_mismatches > 0) return kVerifyFailed;
  }
  return 0;
}

int cmd_regret(const std::string& path, const std::string& envelope, bool naive, bool audit) {
  const auto inst = read_instance(path);
  const RegretResult r = naive ? minmax_regret_naive(inst) : minmax_regret_sink(inst);
  std::cout << "sink " << r.sink.location.label() << " regret " << exact_and_decimal(r.sink.value) << "\n";
  std::cout << "scenarios " << r.scenarios << "\n";
  if (!naive) std::cout << "envelope pieces " << r.envelope_pieces << "\n";
  if (!envelope.empty()) {
    if (naive) throw InputError("--envelope needs the fast pipeline");
    Output o(envelope);
    o.get() << to_csv(r.envelope);
  }
  if (audit) {
    const auto other = naive ? minmax_regret_sink(inst).sink : minmax_regret_naive(inst).sink;
    const bool same = other == r.sink;
    std::cout << "audit " << (same ? "agree" : "DISAGREE") << ": " << other.location.label() << " "
              << other.value << "\n";
    if (!same) return kVerifyFailed;
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, std::size_t trials, std::size_t max_n) {
  const std::size_t pairs = trials * 10;
  const verify::SuiteResult results[] = {
      verify::oracle_suite(seed, trials, max_n),
      verify::evaluator_suite(seed + 1, trials, max_n),
      verify::sink_suite(seed + 2, trials, max_n),
      verify::pipeline_suite(seed + 3, trials, max_n),
      verify::dominance_suite(seed + 4, pairs, max_n),
      verify::monotone_suite(seed + 5, pairs, max_n),
  };
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.ok() ? "pass " : "FAIL ") << r.name << ": " << r.passed << " passed, " << r.failed
              << " failed\n";
    if (!r.ok()) {
      ok = false;
      std::cout << "  " << r.first_failure;
    }
  }
  return ok ? 0 : kVerifyFailed;
}

int cmd_bench(const std::vector<std::size_t>& sizes, int runs, std::uint64_t seed, std::size_t naive_n) {
  std::vector<verify::BenchRow> rows;
  std::printf("%8s %12s %10s %10s\n", "n", "fast_s", "scenarios", "pieces");
  for (std::size_t n : sizes) {
    rows.push_back(verify::bench_fast(n, seed, runs));
    const auto& r = rows.back();
    std::printf("%8zu %12.4f %10zu %10zu\n", r.n, r.seconds, r.scenarios, r.pieces);
    std::fflush(stdout);
  }
  if (rows.size() >= 2) std::printf("log-log slope %.3f\n", verify::loglog_slope(rows));
  if (naive_n > 0) {
    const auto nv = verify::bench_naive(naive_n, seed, runs);
    const auto fast = verify::bench_fast(naive_n, seed, runs);
    std::printf("naive n=%zu %.4f s, fast %.4f s, ratio %.2f\n", naive_n, nv.seconds, fast.seconds,
                nv.seconds / fast.seconds);
    if (!(nv.sink == fast.sink)) {
      std::printf("naive and fast sinks differ\n");
      return kVerifyFailed;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minmax-regret aggregate-time sink on a dynamic flow path"};
  app.require_subcommand(1);

  std::string instance;
  std::string out;

  auto* gen = app.add_subcommand("gen", "write a random instance");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  RandomSpec spec;
  std::string cap = "1";
  std::string tau = "1";
  std::vector<int> spread;
  gen->add_option("--n", gen_n, "number of vertices")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--w-min", spec.w_min);
  gen->add_option("--w-max", spec.w_max);
  gen->add_option("--len-min", spec.len_min);
  gen->add_option("--len-max", spec.len_max);
  gen->add_option("--spread", spread, "upper = lower + U[a, b]")->expected(2);
  gen->add_option("--c", cap, "capacity");
  gen->add_option("--tau", tau, "transit time per unit distance");
  gen->add_option("-o,--output", out);

  auto* minsum = app.add_subcommand("minsum", "minsum sink of one scenario");
  std::string scenario = "lower";
  minsum->add_option("--instance", instance)->required();
  minsum->add_option("--scenario", scenario, "lower | upper | L:b:w | R:b:w | w1,w2,...");

  auto* scen = app.add_subcommand("scenarios", "list the critical scenarios as CSV");
  scen->add_option("--instance", instance)->required();
  scen->add_option("-o,--output", out);

  auto* sinks = app.add_subcommand("sinks", "sink of every critical scenario as CSV");
  bool audit = false;
  sinks->add_option("--instance", instance)->required();
  sinks->add_option("-o,--output", out);
  sinks->add_flag("--audit", audit, "compare against the direct computation");

  auto* regret = app.add_subcommand("regret", "minmax-regret sink");
  std::string envelope;
  bool naive = false;
  regret->add_option("--instance", instance)->required();
  regret->add_option("--envelope", envelope, "write the maximum-regret function as CSV");
  regret->add_flag("--naive", naive, "use the baseline");
  regret->add_flag("--audit", audit, "run both routes and compare");

  auto* ver = app.add_subcommand("verify", "randomised cross-check suites");
  std::uint64_t vseed = 1;
  std::size_t trials = 50;
  std::size_t max_n = 10;
  ver->add_option("--seed", vseed);
  ver->add_option("--trials", trials)->check(CLI::PositiveNumber);
  ver->add_option("--max-n", max_n)->check(CLI::Range(2, 200));

  auto* bench = app.add_subcommand("bench", "time fast and naive routes");
  std::vector<std::size_t> sizes{250, 500, 1000, 2000};
  int runs = 3;
  std::uint64_t bseed = 2024;
  std::size_t naive_n = 500;
  bench->add_option("--sizes", sizes)->delimiter(',');
  bench->add_option("--runs", runs)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bseed);
  bench->add_option("--naive-n", naive_n, "0 skips the baseline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (*gen) {
      spec.capacity = Rational::parse(cap);
      spec.tau = Rational::parse(tau);
      if (!spread.empty()) spec.spread = std::make_pair(spread[0], spread[1]);
      if (spec.capacity.sign() <= 0 || spec.tau.sign() <= 0) throw InputError("c and tau must be positive");
      return cmd_gen(gen_n, gen_seed, spec, out);
    }
    if (*minsum) return cmd_minsum(instance, scenario);
    if (*scen) return cmd_scenarios(instance, out);
    if (*sinks) return cmd_sinks(instance, out, audit);
    if (*regret) return cmd_regret(instance, envelope, naive, audit);
    if (*ver) return cmd_verify(vseed, trials, max_n);
    if (*bench) return cmd_bench(sizes, runs, bseed, naive_n);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidInstance& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return 0;
}
