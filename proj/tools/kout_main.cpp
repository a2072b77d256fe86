#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kout/errors.hpp"
#include "kout/expansion.hpp"
#include "kout/experiments.hpp"
#include "kout/matching.hpp"
#include "kout/models.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitFailure = 4;

struct Options {
  std::string host = "complete";
  std::size_t n = 0;
  std::size_t r = 3;
  std::optional<std::size_t> k;
  std::string k_range;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string mode;
  bool strict = false;
  std::optional<double> epsilon;
  std::optional<double> lambda;
  std::optional<double> slack;
  std::string out;
  std::optional<std::size_t> budget;
  std::string input;
  std::string check = "prop3";
  std::string x;
  bool shape = false;
  bool timing = false;
  bool diagnostics = false;
  std::optional<std::size_t> step;
  std::optional<double> mark;
  std::string dump_dir = "counterexamples";
  std::size_t max_n = 10;
};

std::string decimal(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw kout::InputError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

kout::Hypergraph load(const std::string& path) {
  if (path == "-") return kout::read_hypergraph(std::cin);
  std::ifstream in(path);
  if (!in) throw kout::InputError("cannot open " + path);
  return kout::read_hypergraph(in);
}

std::optional<kout::SolveMode> requested_mode(const Options& o) {
  if (o.mode.empty()) return std::nullopt;
  return kout::parse_solve_mode(o.mode);
}

kout::ScanBudget scan_budget(const Options& o) {
  kout::ScanBudget budget;
  budget.seed = o.seed;
  if (o.budget) budget.samples_per_size = *o.budget;
  return budget;
}

std::pair<std::size_t, std::size_t> k_bounds(const Options& o) {
  if (o.k_range.empty()) {
    const std::size_t k = o.k.value_or(1);
    return {k, k};
  }
  const auto dots = o.k_range.find("..");
  if (dots == std::string::npos) throw kout::InputError("--k-range expects a..b");
  try {
    return {std::stoul(o.k_range.substr(0, dots)), std::stoul(o.k_range.substr(dots + 2))};
  } catch (const std::exception&) {
    throw kout::InputError("--k-range expects a..b");
  }
}

int run_sample(const Options& o) {
  const kout::HostModel host{kout::parse_host_kind(o.host), o.n, o.r};
  const auto sample = kout::sample_kout(host, o.k.value_or(1), o.seed);
  Output out(o.out);
  kout::write_kout_sample(out.stream(), sample);
  return kExitOk;
}

int run_solve(const Options& o) {
  const auto h = load(o.input);
  const auto mode = kout::auto_mode(h, requested_mode(o));
  Output output(o.out);
  std::ostream& out = output.stream();
  if (mode == kout::SolveMode::kExact) {
    const auto [matching, cover] = kout::matching_cover_pair(h);
    kout::write_matching(out, matching);
    kout::write_cover(out, cover);
    out << "perfect=" << (matching.total == kout::perfect_value(h) ? "true" : "false") << '\n';
    if (o.shape) {
      const auto shape = kout::cover_shape(h);
      out << "unique_uniform=" << (shape.is_unique_uniform ? "true" : "false") << '\n';
      if (shape.is_block_constant) {
        out << "block_constant=" << (*shape.is_block_constant ? "true" : "false") << '\n';
      }
      for (std::size_t v = 0; v < shape.ranges.size(); ++v) {
        out << "range " << v << ' ' << kout::to_string(shape.ranges[v].first) << ' '
            << kout::to_string(shape.ranges[v].second) << '\n';
      }
    }
  } else {
    if (o.shape) throw kout::InputError("cover shape requires exact mode");
    const auto matching = kout::nu_star_float(h);
    out << "nu_star " << decimal(matching.total) << '\n';
    for (std::size_t e = 0; e < matching.weights.size(); ++e) {
      out << e << ' ' << decimal(matching.weights[e]) << '\n';
    }
    out << "perfect="
        << (kout::solve_nu_star(h, kout::SolveMode::kFloat).perfect ? "true" : "false") << '\n';
  }
  return kExitOk;
}

void print_report(std::ostream& out, const kout::ExpansionReport& report) {
  if (report.verdict) {
    out << "hypothesis holds\n";
  } else {
    out << "hypothesis fails: X=" << kout::to_string(report.witness->first)
        << " Y=" << kout::to_string(report.witness->second) << '\n';
  }
  out << "verdict=" << (report.verdict ? "true" : "false") << '\n';
  if (report.witness) {
    out << "witness_x=" << kout::to_string(report.witness->first) << '\n';
    out << "witness_y=" << kout::to_string(report.witness->second) << '\n';
  }
  out << "pairs_checked=" << report.pairs_checked << '\n';
  out << "exhaustive=" << (report.exhaustive ? "true" : "false") << '\n';
}

int run_expand_check(const Options& o) {
  const auto h = load(o.input);
  Output output(o.out);
  std::ostream& out = output.stream();
  const auto budget = scan_budget(o);
  if (o.check == "prop3") {
    print_report(out, kout::check_prop3_hypothesis(h, o.strict, budget));
  } else if (o.check == "partite") {
    auto params = kout::PartiteExpansionParams::defaults(h.r());
    if (o.epsilon) params.epsilon = *o.epsilon;
    if (o.lambda) params.lambda = *o.lambda;
    print_report(out, kout::check_prop6_hypothesis(h, params, budget));
    out << "params_valid=" << (params.satisfies_bounds(h.r()) ? "true" : "false") << '\n';
  } else if (o.check == "corollary") {
    const auto report = kout::check_graph_corollary(h, budget);
    if (report.verdict) {
      out << "condition holds\n";
    } else {
      out << "condition fails: I=" << kout::to_string(*report.witness) << '\n';
    }
    out << "verdict=" << (report.verdict ? "true" : "false") << '\n';
    if (report.witness) out << "witness_i=" << kout::to_string(*report.witness) << '\n';
    out << "sets_checked=" << report.sets_checked << '\n';
    out << "exhaustive=" << (report.exhaustive ? "true" : "false") << '\n';
  } else if (o.check == "alpha") {
    const auto result = o.budget ? kout::independence_number(h, *o.budget)
                                 : kout::independence_number(h);
    out << "alpha " << result.alpha << ' ' << kout::to_string(result.witness) << '\n';
    out << "alpha=" << result.alpha << '\n';
    out << "witness=" << kout::to_string(result.witness) << '\n';
    out << "exact=" << (result.exact ? "true" : "false") << '\n';
    if (!result.exact) return kExitFailure;
  } else if (o.check == "expansive") {
    if (o.x.empty()) throw kout::InputError("--check expansive needs --x");
    const auto x = kout::parse_vertex_set(o.x);
    const double lambda = o.lambda.value_or(static_cast<double>(h.r() - 1));
    const auto killer = kout::expansion_killer(h, x, lambda);
    out << (killer ? "not expansive: Y=" + kout::to_string(*killer) : std::string("expansive"))
        << '\n';
    out << "verdict=" << (killer ? "false" : "true") << '\n';
    if (killer) out << "witness_y=" << kout::to_string(*killer) << '\n';
  } else {
    throw kout::InputError("unknown check " + o.check);
  }
  return kExitOk;
}

int run_process(const Options& o) {
  kout::StopRule rule = kout::StopRule::at_T();
  if (o.step) rule = kout::StopRule::at_step(*o.step);
  const double g = o.slack.value_or(kout::default_slack(o.n));
  if (o.mark) {
    rule = kout::StopRule::at_mark(*o.mark);
  } else if (o.diagnostics && !o.step) {
    rule = kout::StopRule::at_mark(kout::diagnostic_mark_bound(o.n, o.r, g));
  }
  const auto trace = kout::run_process(o.n, o.r, o.seed, rule);
  Output output(o.out);
  std::ostream& out = output.stream();
  kout::write_process_trace(out, trace);
  if (o.diagnostics) {
    const auto d = kout::threshold_diagnostics(trace, o.epsilon.value_or(0.1), g);
    out << "# c=" << decimal(d.c_threshold) << " sigma=" << decimal(d.sigma)
        << " beta=" << decimal(d.beta) << " Lambda=" << decimal(d.Lambda)
        << " lambda_in_window=" << (d.lambda_in_window ? "true" : "false") << '\n';
    out << "# W_sigma=" << kout::to_string(d.W_sigma) << '\n';
    out << "# N=" << kout::to_string(d.N) << '\n';
  }
  return kExitOk;
}

int run_experiment(const Options& o, const std::string& which) {
  kout::ExperimentConfig config;
  config.host = kout::parse_host_kind(o.host);
  config.n = o.n;
  config.r = o.r;
  std::tie(config.k_min, config.k_max) = k_bounds(o);
  config.trials = o.trials;
  config.seed = o.seed;
  config.mode = requested_mode(o);
  config.epsilon = o.epsilon;
  config.lambda = o.lambda;
  config.scan = scan_budget(o);
  config.timing = o.timing;
  config.implication_max_n = o.max_n;

  kout::ExperimentResult result;
  if (which == "kout-pfm") {
    result = kout::experiment_kout_pfm(config);
  } else if (which == "implication") {
    result = kout::experiment_implication(config, o.dump_dir);
  } else if (which == "stopping") {
    result = kout::experiment_stopping(config);
  } else {
    throw kout::InputError("unknown experiment " + which);
  }
  Output output(o.out);
  kout::write_csv(output.stream(), result.rows);
  for (const auto& line : result.summary) std::cerr << line << '\n';
  for (const auto& path : result.dumps) std::cerr << "counterexample written to " << path << '\n';
  if (result.counterexamples > 0) return kExitCounterexample;
  if (result.failures > 0) return kExitFailure;
  return kExitOk;
}

void add_model_flags(CLI::App* app, Options& o) {
  app->add_option("--host", o.host, "complete or partite")->check(CLI::IsMember({"complete", "partite"}));
  app->add_option("--n", o.n, "vertex count (block size for partite hosts)");
  app->add_option("--r", o.r, "uniformity");
  app->add_option("--seed", o.seed, "master seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-out hypergraphs, fractional matchings and expansion checks"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "draw a k-out sample");
  add_model_flags(sample, o);
  sample->add_option("--k", o.k, "edges chosen per vertex");
  sample->add_option("--out", o.out, "output file");

  auto* solve = app.add_subcommand("solve", "fractional matching and cover of a hypergraph file");
  solve->add_option("input", o.input, "hypergraph file, - for stdin")->required();
  solve->add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  solve->add_flag("--shape", o.shape, "probe the minimum covers");
  solve->add_option("--out", o.out, "output file");

  auto* expand = app.add_subcommand("expand-check", "expansion hypotheses on a hypergraph file");
  expand->add_option("input", o.input, "hypergraph file, - for stdin")->required();
  expand->add_option("--check", o.check, "prop3, partite, corollary, alpha or expansive")
      ->check(CLI::IsMember({"prop3", "partite", "corollary", "alpha", "expansive"}));
  expand->add_flag("--strict", o.strict, "strict size bound |Y| < (r-1)|X|");
  expand->add_option("--epsilon", o.epsilon, "partite epsilon");
  expand->add_option("--lambda", o.lambda, "partite lambda, or lambda for --check expansive");
  expand->add_option("--x", o.x, "set X for --check expansive, e.g. \"{0 1}\"");
  expand->add_option("--budget", o.budget, "samples per size, or search nodes for alpha");
  expand->add_option("--seed", o.seed, "seed for sampled scans");
  expand->add_option("--out", o.out, "output file");

  auto* process = app.add_subcommand("process", "run the random r-graph process");
  process->add_option("--n", o.n, "vertex count")->required();
  process->add_option("--r", o.r, "uniformity");
  process->add_option("--seed", o.seed, "seed");
  process->add_option("--step", o.step, "stop after this many edges");
  process->add_option("--mark", o.mark, "continue until every edge with mark <= this is present");
  process->add_flag("--diagnostics", o.diagnostics, "threshold quantities at the stopping time");
  process->add_option("--epsilon", o.epsilon, "degree cutoff factor (default 0.1)");
  process->add_option("--g", o.slack, "slack g(n) (default log log n)");
  process->add_option("--out", o.out, "output file");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments (CSV)");
  std::string which;
  experiment->add_option("name", which, "kout-pfm, implication or stopping")
      ->required()
      ->check(CLI::IsMember({"kout-pfm", "implication", "stopping"}));
  add_model_flags(experiment, o);
  auto* k_opt = experiment->add_option("--k", o.k, "edges chosen per vertex");
  experiment->add_option("--k-range", o.k_range, "sweep a..b")->excludes(k_opt);
  experiment->add_option("--trials", o.trials, "trials (instances for implication)");
  experiment->add_option("--mode", o.mode, "exact or float (default: by edge count)")
      ->check(CLI::IsMember({"exact", "float"}));
  experiment->add_option("--epsilon", o.epsilon, "partite epsilon / degree cutoff factor");
  experiment->add_option("--lambda", o.lambda, "partite lambda");
  experiment->add_option("--budget", o.budget, "sampled candidate sets per size");
  experiment->add_option("--max-n", o.max_n, "largest implication instance");
  experiment->add_option("--dump-dir", o.dump_dir, "counterexample directory");
  experiment->add_flag("--timing", o.timing, "fill elapsed_ms");
  experiment->add_option("--out", o.out, "CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (sample->parsed()) return run_sample(o);
    if (solve->parsed()) return run_solve(o);
    if (expand->parsed()) return run_expand_check(o);
    if (process->parsed()) return run_process(o);
    return run_experiment(o, which);
  } catch (const kout::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const kout::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitFailure;
  }
}
