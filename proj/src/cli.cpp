#include "amoebot/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "amoebot/config.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/scheduler.hpp"

namespace amoebot::cli {

namespace {

struct ShapeArgs {
  std::string name = "parallelogram";
  int n = 0;
  int w = 0;
  int h = 0;
  int outer = 0;
  int hole = 0;
};

ShapeSpec shape_of(const ShapeArgs& s) {
  if (s.name == "line") return LineShape{s.n};
  if (s.name == "parallelogram") return ParallelogramShape{s.w, s.h};
  if (s.name == "annulus") return AnnulusShape{s.outer, s.hole};
  if (s.name == "random" || s.name == "random_connected") return RandomConnectedShape{s.n};
  throw InvalidShapeParams("unknown shape '" + s.name + "'");
}

/// Bench families are indexed by one size parameter.
ShapeSpec sized_shape(const std::string& name, int size) {
  if (name == "line") return LineShape{size};
  if (name == "parallelogram") return ParallelogramShape{size, size};
  if (name == "annulus") return AnnulusShape{size, std::max(1, size / 2)};
  if (name == "random" || name == "random_connected") return RandomConnectedShape{size};
  throw InvalidShapeParams("unknown shape '" + name + "'");
}

struct RunArgs {
  std::uint64_t seed = 1;
  int radix = 256;
  std::string scheduler = "permutation";
  std::int64_t max_rounds = 0;
  bool almost_sure = false;
  bool broadcast = false;
  bool expanded = false;
  bool unsafe_hooks = false;
  std::string coin = "fair";
};

void add_run_flags(CLI::App* cmd, RunArgs& r) {
  cmd->add_option("--seed", r.seed, "RNG seed");
  cmd->add_option("--radix", r.radix, "identifier digit radix");
  cmd->add_option("--scheduler", r.scheduler, "activation policy")->check(CLI::IsMember({"permutation", "uniform"}));
  cmd->add_option("--max-rounds", r.max_rounds, "round budget (default 200*L)");
  cmd->add_flag("--almost-sure", r.almost_sure, "run the almost-sure election in parallel");
  cmd->add_flag("--broadcast-termination", r.broadcast, "broadcast termination from the leader");
  cmd->add_flag("--expanded", r.expanded, "allow expanded particles");
  cmd->add_flag("--unsafe-hooks", r.unsafe_hooks, "enable degenerate test hooks");
  cmd->add_option("--coin", r.coin, "segment-setup coin (needs --unsafe-hooks)")
      ->check(CLI::IsMember({"fair", "all-heads", "all-tails"}));
}

RunOptions options_of(const RunArgs& r) {
  if ((r.radix < 2 || r.coin != "fair") && !r.unsafe_hooks) {
    throw ConfigError(ConfigErrorKind::syntax, 0, "--radix below 2 and non-fair --coin require --unsafe-hooks");
  }
  if (r.radix < 1) throw ConfigError(ConfigErrorKind::syntax, 0, "--radix must be positive");
  RunOptions o;
  o.params.seed = r.seed;
  o.params.radix = r.radix;
  o.params.almost_sure = r.almost_sure;
  o.params.termination_broadcast = r.broadcast;
  o.params.expanded = r.expanded;
  o.params.coin = r.coin == "all-heads" ? CoinMode::all_heads : r.coin == "all-tails" ? CoinMode::all_tails : CoinMode::fair;
  o.scheduler = r.scheduler == "uniform" ? SchedulerKind::uniform : SchedulerKind::permutation;
  if (r.max_rounds > 0) o.max_rounds = r.max_rounds;
  o.check_invariants = false;
  return o;
}

std::string invocation(const std::string& input, const RunArgs& r) {
  std::ostringstream s;
  s << "amoebot run -i " << input << " --seed " << r.seed << " --radix " << r.radix << " --scheduler " << r.scheduler;
  if (r.max_rounds > 0) s << " --max-rounds " << r.max_rounds;
  if (r.almost_sure) s << " --almost-sure";
  if (r.broadcast) s << " --broadcast-termination";
  if (r.expanded) s << " --expanded";
  if (r.unsafe_hooks) s << " --unsafe-hooks --coin " << r.coin;
  return s.str();
}

Configuration load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigErrorKind::syntax, 0, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_configuration(text.str());
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v <= 0) throw InvalidShapeParams("bad size '" + item + "'");
    sizes.push_back(v);
  }
  return sizes;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int cmd_generate(const ShapeArgs& shape, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  const auto cfg = generate(shape_of(shape), seed);
  const auto text = serialize_configuration(cfg);
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw ConfigError(ConfigErrorKind::syntax, 0, "cannot write '" + out_path + "'");
    f << text;
  }
  return kExitOk;
}

int cmd_run(const std::string& input, const RunArgs& r, const std::string& trace_path, const std::string& metrics_path,
            std::ostream& out) {
  const auto cfg = load(input);
  auto opts = options_of(r);
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw ConfigError(ConfigErrorKind::syntax, 0, "cannot write '" + trace_path + "'");
    opts.trace = &trace;
  }
  const auto o = run(cfg, opts);
  out << "# " << invocation(input, r) << '\n';
  out << "n=" << o.n << " L=" << o.L << " C=" << o.C << " D=" << o.D << '\n';
  if (o.leader) {
    out << "leader " << o.leader->x << ' ' << o.leader->y << " round " << o.rounds << " activations " << o.activations
        << (o.success ? "" : " (rejected by oracle)") << '\n';
  } else {
    out << "no leader within " << o.rounds << " rounds (" << failure_cause_name(o.failure) << ")\n";
  }
  if (o.termination_round) out << "all particles terminated in round " << *o.termination_round << '\n';
  if (!metrics_path.empty()) {
    std::ofstream m(metrics_path);
    if (!m) throw ConfigError(ConfigErrorKind::syntax, 0, "cannot write '" + metrics_path + "'");
    m << metrics_header() << '\n' << metrics_row(o) << '\n';
  }
  return o.success ? kExitOk : kExitNoLeader;
}

int cmd_bench(const std::string& shape, const std::string& sizes_csv, int trials, const RunArgs& r, int jobs,
              const std::string& out_path, std::ostream& out) {
  const auto sizes = parse_sizes(sizes_csv);
  if (trials < 0) throw InvalidShapeParams("--trials must be non-negative");
  const auto base = options_of(r);

  struct Job {
    int size;
    int trial;
    RunOutcome outcome;
  };
  std::vector<Job> work;
  for (int s : sizes)
    for (int t = 0; t < trials; ++t) work.push_back({s, t, {}});
  for (const auto& job : work) generate(sized_shape(shape, job.size), 0);  // validate parameters up front

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      auto& job = work[i];
      auto opts = base;
      opts.params.seed = splitmix64(r.seed ^ (static_cast<std::uint64_t>(job.size) << 32) ^ static_cast<std::uint64_t>(job.trial));
      const auto cfg = generate(sized_shape(shape, job.size), opts.params.seed);
      job.outcome = run(cfg, opts);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(jobs, 1); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream* csv = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw ConfigError(ConfigErrorKind::syntax, 0, "cannot write '" + out_path + "'");
    csv = &file;
  }
  *csv << metrics_header() << '\n';
  for (const auto& job : work) *csv << metrics_row(job.outcome) << '\n';

  std::ostream& summary = csv == &out ? std::cerr : out;
  for (int s : sizes) {
    std::vector<double> ratios;  // successful runs only
    int ok = 0;
    int total = 0;
    for (const auto& job : work) {
      if (job.size != s) continue;
      ++total;
      if (!job.outcome.success) continue;
      ++ok;
      ratios.push_back(static_cast<double>(job.outcome.rounds) / std::max(job.outcome.L, 1));
    }
    if (total == 0) continue;
    summary << "size " << s << ": success " << ok << '/' << total << ", median rounds/L ";
    if (ratios.empty()) {
      summary << "n/a\n";
    } else {
      summary << std::fixed << std::setprecision(3) << median(ratios) << '\n';
    }
  }
  return kExitOk;
}

int cmd_check(const std::string& input, bool csv, std::ostream& out) {
  const auto cfg = load(input);
  const auto report = oracle::classify_boundaries(cfg);
  if (csv) {
    out << "n,L,C,D,inner,sqrt_bound\n"
        << report.n << ',' << report.L << ',' << report.C << ',' << report.D << ',' << report.inner_count() << ','
        << (oracle::sqrt_bound_check(report) ? 1 : 0) << '\n';
  } else {
    out << oracle::format_report(report);
  }
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leader election on the triangular grid: simulator, oracle and benchmarks"};
  app.require_subcommand(1);

  ShapeArgs shape;
  std::uint64_t gen_seed = 1;
  std::string out_path;
  auto* gen = app.add_subcommand("generate", "write a generated configuration");
  gen->set_help_flag("--help", "print help");
  gen->add_option("--shape", shape.name, "line | parallelogram | annulus | random")->required();
  gen->add_option("--n", shape.n, "particle count (line, random)");
  gen->add_option("--w", shape.w, "parallelogram width");
  gen->add_option("--h", shape.h, "parallelogram height");
  gen->add_option("--outer", shape.outer, "annulus outer radius");
  gen->add_option("--hole", shape.hole, "annulus hole radius");
  gen->add_option("--seed", gen_seed, "seed (random shapes)");
  gen->add_option("-o,--output", out_path, "output file (default stdout)");

  std::string input;
  std::string trace_path;
  std::string metrics_path;
  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run one election");
  run_cmd->add_option("-i,--input", input, "configuration file")->required();
  add_run_flags(run_cmd, run_args);
  run_cmd->add_option("--trace", trace_path, "event trace output");
  run_cmd->add_option("--metrics", metrics_path, "metrics CSV output");

  std::string bench_shape = "parallelogram";
  std::string sizes = "4,6,8";
  int trials = 10;
  int jobs = 1;
  std::string bench_out;
  RunArgs bench_args;
  auto* bench = app.add_subcommand("bench", "scaling sweep over a shape family");
  bench->add_option("--shape", bench_shape, "line | parallelogram | annulus | random");
  bench->add_option("--sizes", sizes, "comma separated size list");
  bench->add_option("--trials", trials, "runs per size");
  bench->add_option("--jobs", jobs, "worker threads");
  bench->add_option("-o,--metrics", bench_out, "CSV output (default stdout)");
  add_run_flags(bench, bench_args);

  std::string check_input;
  bool check_csv = false;
  auto* check = app.add_subcommand("check", "oracle boundary report");
  check->add_option("-i,--input", check_input, "configuration file")->required();
  check->add_flag("--csv", check_csv, "print CSV instead of text");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*gen) return cmd_generate(shape, gen_seed, out_path, out);
    if (*run_cmd) return cmd_run(input, run_args, trace_path, metrics_path, out);
    if (*bench) return cmd_bench(bench_shape, sizes, trials, bench_args, jobs, bench_out, out);
    if (*check) return cmd_check(check_input, check_csv, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidShapeParams& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace amoebot::cli
