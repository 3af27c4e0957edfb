#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "l1match/convolve.hpp"
#include "l1match/counters.hpp"
#include "l1match/hamapprox.hpp"
#include "l1match/kangaroo.hpp"
#include "l1match/kernel.hpp"
#include "l1match/l1approx.hpp"
#include "l1match/oracle.hpp"
#include "l1match/reduce.hpp"
#include "l1match/rledist.hpp"
#include "l1match/rng.hpp"
#include "l1match/seq.hpp"

namespace {

using json = nlohmann::json;
using namespace l1match;

constexpr std::uint64_t kDefaultSeed = 1729;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitOracle = 3;

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> read_integers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open '" + path + "'");
  std::vector<std::int64_t> values;
  std::int64_t v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw ParseFailure("'" + path + "' is not whitespace-separated integers");
  if (values.empty()) throw ParseFailure("'" + path + "' is empty");
  return values;
}

void write_output(const DistanceArray& result, const std::string& format,
                  const std::string& out_path) {
  std::ostringstream body;
  if (format == "csv") {
    body << "position,distance\n";
    for (std::size_t i = 0; i < result.size(); ++i) {
      body << i << ',';
      if (result[i].is_infinite())
        body << "inf";
      else
        body << result[i].value();
      body << '\n';
    }
  } else {
    json values = json::array();
    for (const Distance& d : result) {
      if (d.is_infinite())
        values.push_back(nullptr);
      else
        values.push_back(d.value());
    }
    body << json{{"positions", values}}.dump() << '\n';
  }
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseFailure("cannot open '" + out_path + "' for writing");
    out << body.str();
  }
}

struct LoadedPair {
  IntSequence text;
  IntSequence pattern;
};

LoadedPair load_pair(const std::string& text_path, const std::string& pattern_path) {
  const std::vector<std::int64_t> raw_text = read_integers(text_path);
  const std::vector<std::int64_t> raw_pattern = read_integers(pattern_path);
  NormalizedPair norm = normalize_pair(raw_text, raw_pattern);
  std::cerr << "normalization shift " << norm.shift << ", bound "
            << norm.text.max_value << "\n";
  if (norm.pattern.size() > norm.text.size())
    throw std::invalid_argument("pattern longer than text");
  return {std::move(norm.text), std::move(norm.pattern)};
}

DistanceArray exact_array(const IntSequence& text, const IntSequence& pattern,
                          oracle::Metric metric) {
  const Symbol domain = std::max(text.max_value, pattern.max_value) + 1;
  const WeightFunction weight = metric == oracle::Metric::kL1
                                    ? WeightFunction::abs_diff(domain)
                                    : WeightFunction::inequality(domain);
  const ScoreArray raw = weighted_mismatches(text, pattern, weight);
  DistanceArray out;
  out.reserve(raw.size());
  for (std::int64_t v : raw) out.push_back(Distance::finite(v));
  return out;
}

int check_exact(const DistanceArray& got, const DistanceArray& want) {
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < got.size(); ++i) mismatches += got[i] != want[i];
  std::cerr << "oracle-check: " << mismatches << " mismatching positions\n";
  return mismatches == 0 ? kExitOk : kExitOracle;
}

int check_approx(const DistanceArray& got, const DistanceArray& want,
                 double epsilon) {
  double max_rel = 0.0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double truth = static_cast<double>(want[i].value());
    const double est = static_cast<double>(got[i].value());
    if (truth == 0.0) {
      if (est != 0.0) ++violations;
      continue;
    }
    const double rel = std::abs(est - truth) / truth;
    max_rel = std::max(max_rel, rel);
    if (est < (1.0 - epsilon) * truth || est > (1.0 + epsilon) * truth)
      ++violations;
  }
  std::cerr << "oracle-check: max relative error " << max_rel << ", "
            << violations << " positions outside (1±" << epsilon << ")\n";
  return violations == 0 ? kExitOk : kExitOracle;
}

int run_selftest();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text-to-pattern L1/Hamming distances: exact, (1±eps)-approximate, k-approximated"};
  app.require_subcommand(1);

  std::string text_path, pattern_path, out_path;
  std::string metric_name = "l1";
  std::string format = "csv";
  double epsilon = 0.0;
  std::int64_t k = -1;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> reps;
  bool oracle_check = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_inputs) {
    if (needs_inputs) {
      cmd->add_option("--text", text_path, "text file (whitespace-separated integers)")
          ->required();
      cmd->add_option("--pattern", pattern_path, "pattern file")->required();
      cmd->add_option("--metric", metric_name, "l1 or ham")
          ->check(CLI::IsMember({"l1", "ham"}));
      cmd->add_flag("--oracle-check", oracle_check,
                    "also run the brute-force oracle and verify");
    }
    cmd->add_option("--seed", seed, "RNG seed (fixed default: reproducible runs)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };

  CLI::App* cmd_exact = app.add_subcommand("exact", "exact distance array");
  add_common(cmd_exact, true);

  CLI::App* cmd_approx = app.add_subcommand("approx", "(1±eps)-approximate distances");
  add_common(cmd_approx, true);
  cmd_approx->add_option("--epsilon", epsilon, "accuracy in (0, 1]")->required();
  std::size_t reps_value = 0;
  CLI::Option* reps_opt =
      cmd_approx->add_option("--reps", reps_value, "repetition override (l1 metric)");

  CLI::App* cmd_kapprox =
      app.add_subcommand("kapprox", "values <= k exact, larger ones reported as inf");
  add_common(cmd_kapprox, true);
  cmd_kapprox->add_option("--k", k, "cap (>= 0)")->required();

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a synthetic sequence");
  std::size_t gen_length = 0;
  Symbol gen_alphabet = 2;
  std::optional<std::size_t> gen_period;
  std::size_t gen_corruption = 0;
  cmd_gen->add_option("--length", gen_length, "sequence length")->required();
  cmd_gen->add_option("--alphabet", gen_alphabet, "alphabet size (symbols 0..a-1)");
  std::size_t gen_period_value = 0;
  CLI::Option* period_opt = cmd_gen->add_option("--period", gen_period_value, "plant this period");
  cmd_gen->add_option("--corruption", gen_corruption, "positions overwritten at random");
  add_common(cmd_gen, false);

  CLI::App* cmd_bench =
      app.add_subcommand("bench", "instrumented estimator run; JSON counters report");
  std::size_t bench_n = 4096, bench_m = 512;
  Symbol bench_max = Symbol{1} << 20;
  double bench_eps = 0.4;
  std::size_t bench_reps = 1;
  cmd_bench->add_option("--length", bench_n, "text length");
  cmd_bench->add_option("--pattern-length", bench_m, "pattern length");
  cmd_bench->add_option("--max-value", bench_max, "value bound M");
  cmd_bench->add_option("--epsilon", bench_eps, "accuracy in (0, 1]")->required();
  cmd_bench->add_option("--reps", bench_reps, "estimator repetitions");
  cmd_bench->add_option("--seed", seed, "RNG seed");
  cmd_bench->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* cmd_selftest = app.add_subcommand("selftest", "built-in smoke checks");
  (void)cmd_selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConstraint;
  }

  try {
    const oracle::Metric metric =
        metric_name == "l1" ? oracle::Metric::kL1 : oracle::Metric::kHamming;
    Rng rng(seed);

    if (cmd_exact->parsed()) {
      const LoadedPair in = load_pair(text_path, pattern_path);
      const DistanceArray result = exact_array(in.text, in.pattern, metric);
      write_output(result, format, out_path);
      if (oracle_check) {
        const DistanceArray want = metric == oracle::Metric::kL1
                                       ? oracle::naive_l1(in.text, in.pattern)
                                       : oracle::naive_ham(in.text, in.pattern);
        return check_exact(result, want);
      }
      return kExitOk;
    }

    if (cmd_approx->parsed()) {
      if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1]");
      if (reps_opt->count() > 0) reps = reps_value;
      const LoadedPair in = load_pair(text_path, pattern_path);
      DistanceArray result;
      if (metric == oracle::Metric::kL1) {
        ApproxParams params = ApproxParams::from_epsilon(
            epsilon, std::max(in.text.max_value, in.pattern.max_value),
            in.text.size());
        if (reps) params.repetitions = std::max<std::size_t>(1, *reps);
        result = approximate(in.text, in.pattern, params, rng);
      } else {
        const ProjectionEstimate est = approx_ham(in.text, in.pattern, epsilon, rng);
        result.reserve(est.size());
        for (std::size_t i = 0; i < est.size(); ++i)
          result.push_back(Distance::finite(std::llround(est.estimate(i))));
      }
      write_output(result, format, out_path);
      if (oracle_check) {
        const DistanceArray want = metric == oracle::Metric::kL1
                                       ? oracle::naive_l1(in.text, in.pattern)
                                       : oracle::naive_ham(in.text, in.pattern);
        return check_approx(result, want, epsilon);
      }
      return kExitOk;
    }

    if (cmd_kapprox->parsed()) {
      if (k < 0) throw std::invalid_argument("k must be >= 0");
      const LoadedPair in = load_pair(text_path, pattern_path);
      const DistanceArray result = kapprox(in.text, in.pattern, k, metric, rng);
      write_output(result, format, out_path);
      if (oracle_check) {
        const DistanceArray want =
            cap(metric == oracle::Metric::kL1
                    ? oracle::naive_l1(in.text, in.pattern)
                    : oracle::naive_ham(in.text, in.pattern),
                k);
        return check_exact(result, want);
      }
      return kExitOk;
    }

    if (cmd_gen->parsed()) {
      if (period_opt->count() > 0) gen_period = gen_period_value;
      const IntSequence s =
          generate(gen_length, gen_alphabet, gen_period, gen_corruption, seed);
      std::ostringstream body;
      for (std::size_t i = 0; i < s.size(); ++i) body << s.data[i] << '\n';
      if (out_path.empty()) {
        std::cout << body.str();
      } else {
        std::ofstream out(out_path);
        if (!out) throw ParseFailure("cannot open '" + out_path + "' for writing");
        out << body.str();
      }
      return kExitOk;
    }

    if (cmd_bench->parsed()) {
      if (!(bench_eps > 0.0) || bench_eps > 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1]");
      if (bench_m > bench_n)
        throw std::invalid_argument("pattern longer than text");
      const IntSequence text =
          generate(bench_n, bench_max + 1, std::nullopt, 0, mix64(seed));
      const IntSequence pattern =
          generate(bench_m, bench_max + 1, std::nullopt, 0, mix64(seed ^ 0xabcdULL));
      ApproxParams params =
          ApproxParams::from_epsilon(bench_eps, bench_max, bench_n);
      params.repetitions = std::max<std::size_t>(1, bench_reps);

      counters().reset();
      const auto start = std::chrono::steady_clock::now();
      const DistanceArray result = approximate(
          text, pattern, params, rng, WeightedPolicy::kPerSymbolCorrelation);
      const auto stop = std::chrono::steady_clock::now();
      const CounterSnapshot snap = snapshot_counters();

      json report{
          {"command", "bench"},
          {"n", bench_n},
          {"m", bench_m},
          {"max_value", bench_max},
          {"epsilon", bench_eps},
          {"window_bits", params.window_bits},
          {"alphabet", std::int64_t{1} << params.window_bits},
          {"levels", params.levels},
          {"repetitions", params.repetitions},
          {"wall_ms",
           std::chrono::duration<double, std::milli>(stop - start).count()},
          {"checksum", result.empty() || result[0].is_infinite()
                           ? 0
                           : result[0].value()},
          {"counters",
           {{"correlations", snap.correlations},
            {"block_pairs", snap.block_pairs},
            {"kangaroo_jumps", snap.kangaroo_jumps},
            {"repetitions", snap.repetitions}}}};
      const std::string body = report.dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << body;
      } else {
        std::ofstream out(out_path);
        if (!out) throw ParseFailure("cannot open '" + out_path + "' for writing");
        out << body;
      }
      return kExitOk;
    }

    if (cmd_selftest->parsed()) return run_selftest();

    return kExitConstraint;
  } catch (const ParseFailure& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstraint;
  }
}

namespace {

int run_selftest() {
  std::size_t failures = 0;
  const auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    failures += !ok;
  };

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const IntSequence text = generate(96, 8, std::nullopt, 0, rng.u64());
    const IntSequence pattern = generate(16, 8, std::nullopt, 0, rng.u64());
    const DistanceArray l1 = oracle::naive_l1(text, pattern);
    const DistanceArray ham = oracle::naive_ham(text, pattern);

    bool ok = true;
    const ScoreArray fast_l1 =
        weighted_mismatches(text, pattern, WeightFunction::abs_diff(8));
    const ScoreArray fast_ham =
        weighted_mismatches(text, pattern, WeightFunction::inequality(8));
    for (std::size_t i = 0; i < l1.size(); ++i)
      ok = ok && fast_l1[i] == l1[i].value() && fast_ham[i] == ham[i].value();
    check(ok, "weighted mismatches vs naive oracles");

    const RleSequence rt = rle_encode(to_wildcard(text));
    const RleSequence rp = rle_encode(to_wildcard(pattern));
    const DistanceArray rl1 = rle_l1(rt, rp);
    const DistanceArray rham = rle_ham(rt, rp);
    ok = true;
    for (std::size_t i = 0; i < l1.size(); ++i)
      ok = ok && rl1[i] == l1[i] && rham[i] == ham[i];
    check(ok, "rle distances vs naive oracles");

    const LcpIndex index(text, pattern);
    const DistanceArray capped = cap(l1, 12);
    ok = true;
    for (std::size_t i = 0; i < l1.size(); ++i)
      ok = ok && verify_alignment(index, text, pattern, i, 12) == capped[i];
    check(ok, "kangaroo verification vs capped oracle");

    Rng krng = rng.derive(trial);
    const DistanceArray kd = kapprox_l1(text, pattern, 12, krng);
    ok = true;
    for (std::size_t i = 0; i < l1.size(); ++i) ok = ok && kd[i] == capped[i];
    check(ok, "k-approximated pipeline vs capped oracle");
  }

  bool identity = true;
  for (Symbol x = 0; x <= 32 && identity; ++x)
    for (Symbol y = 0; y <= 32; ++y) {
      const std::int64_t lhs = 2 * (x != y ? 1 : 0);
      const std::int64_t rhs =
          2 + 2 * std::abs(x - y) - std::abs(x + 1 - y) - std::abs(x - y - 1);
      if (lhs != rhs) {
        identity = false;
        break;
      }
    }
  check(identity, "hamming-from-l1 pointwise identity");

  Rng arng(11);
  const IntSequence text = generate(256, 512, std::nullopt, 0, 99);
  const IntSequence pattern = generate(32, 512, std::nullopt, 0, 100);
  const DistanceArray approx_out = approximate(text, pattern, 0.5, arng);
  const DistanceArray truth = oracle::naive_l1(text, pattern);
  bool in_band = true;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double t = static_cast<double>(truth[i].value());
    const double a = static_cast<double>(approx_out[i].value());
    if (t == 0.0 ? a != 0.0 : (a < 0.5 * t || a > 1.5 * t)) in_band = false;
  }
  check(in_band, "estimator within (1±0.5) of oracle");

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? kExitOk : kExitOracle;
}

}  // namespace
