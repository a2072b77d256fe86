#include "kout/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "kout/errors.hpp"
#include "kout/rng.hpp"
#include "parallel.hpp"

namespace kout {

namespace {

std::string fixed(double x, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
  return buffer;
}

std::string decimal(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

const char* flag(bool b) { return b ? "1" : "0"; }

std::uint64_t trial_seed(std::uint64_t master, std::size_t group, std::size_t trial) {
  return derive_seed(derive_seed(master, rng_stream::kTrial, group), 0, trial);
}

void record_nu(TrialRecord& rec, const NuStarOutcome& outcome) {
  if (outcome.exact) {
    rec.nu_num = outcome.exact->get_num().get_str();
    rec.nu_den = outcome.exact->get_den().get_str();
  } else {
    rec.nu_num = decimal(outcome.value);
  }
  rec.perfect = flag(outcome.perfect);
}

/// Fraction of set boolean fields equal to "1", or nullopt when none is set.
std::optional<std::string> frequency(const std::vector<TrialRecord>& rows,
                                     std::optional<std::string> TrialRecord::*field) {
  std::size_t set = 0;
  std::size_t ones = 0;
  for (const auto& row : rows) {
    if (!(row.*field)) continue;
    ++set;
    ones += *(row.*field) == "1";
  }
  if (set == 0) return std::nullopt;
  return fixed(static_cast<double>(ones) / static_cast<double>(set));
}

TrialRecord summary_row(const ExperimentConfig& config, std::size_t n, std::size_t r,
                        std::optional<std::size_t> k, const std::vector<TrialRecord>& rows) {
  TrialRecord s;
  s.trial = "summary";
  s.seed = config.seed;
  s.n = n;
  s.r = r;
  s.k = k;
  s.perfect = frequency(rows, &TrialRecord::perfect);
  s.unique_cover = frequency(rows, &TrialRecord::unique_cover);
  s.block_constant = frequency(rows, &TrialRecord::block_constant);
  double t_sum = 0.0;
  std::size_t t_count = 0;
  double ms = 0.0;
  for (const auto& row : rows) {
    if (row.T) {
      t_sum += std::stod(*row.T);
      ++t_count;
    }
    if (row.elapsed_ms) ms += std::stod(*row.elapsed_ms);
  }
  if (t_count > 0) s.T = fixed(t_sum / static_cast<double>(t_count));
  if (config.timing) s.elapsed_ms = fixed(ms, 3);
  return s;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

bool witness_is_valid(const Hypergraph& h, const ExpansionReport& report, std::size_t y_limit) {
  if (report.verdict) return true;
  if (!report.witness) return false;
  const auto& [x, y] = *report.witness;
  return !x.empty() && is_independent(h, x) && x.disjoint_from(y) && y.size() <= y_limit &&
         edges_meeting(h, x, y) == 0;
}

bool partite_witness_is_valid(const Hypergraph& h, const ExpansionReport& report,
                              const PartiteExpansionParams& params) {
  if (report.verdict) return true;
  if (!report.witness) return false;
  const auto& [t, u] = *report.witness;
  if (t.empty() || !t.disjoint_from(u)) return false;
  const std::size_t block = h.block_of(*t.begin());
  const std::size_t b = *h.block_size();
  std::vector<std::size_t> per_block(h.r(), 0);
  for (Vertex v : t) {
    if (h.block_of(v) != block) return false;
  }
  for (Vertex v : u) ++per_block[h.block_of(v)];
  if (per_block[block] != 0) return false;
  const std::size_t limit = t.size() <= floor_scaled(params.epsilon, b)
                                ? std::min(b, floor_scaled(params.lambda, t.size()))
                                : floor_scaled(1.0 - params.epsilon, b);
  for (std::size_t c : per_block) {
    if (c > limit) return false;
  }
  return edges_meeting(h, t, u) == 0;
}

Hypergraph random_edge_set(std::size_t n, std::size_t r, double p, Engine& engine) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  std::vector<Vertex> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = static_cast<Vertex>(i);
  while (true) {
    if (keep(engine)) edges.emplace_back(pick.begin(), pick.end());
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return Hypergraph(n, r, std::move(edges));
}

Hypergraph random_partite(std::size_t r, std::size_t b, double p, Engine& engine) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  std::vector<std::size_t> digit(r, 0);
  while (true) {
    if (keep(engine)) {
      Edge e(r);
      for (std::size_t j = 0; j < r; ++j) e[j] = static_cast<Vertex>(j * b + digit[j]);
      edges.push_back(std::move(e));
    }
    std::size_t j = r;
    while (j > 0 && ++digit[j - 1] == b) digit[--j] = 0;
    if (j == 0) break;
  }
  return Hypergraph::partite(r, b, std::move(edges));
}

}  // namespace

SolveMode auto_mode(const Hypergraph& h, std::optional<SolveMode> requested) {
  if (requested) return *requested;
  return h.num_edges() <= kExactEdgeLimit ? SolveMode::kExact : SolveMode::kFloat;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw InputError("trials must be at least 1");
  if (r < 1) throw InputError("r must be at least 1");
  if (k_min > k_max) throw InputError("empty k range");
  if (epsilon && !(*epsilon > 0.0 && *epsilon < 0.5)) {
    throw InputError("epsilon must lie in (0, 1/2)");
  }
  if (lambda && !(*lambda > 0.0)) throw InputError("lambda must be positive");
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
  out << kCsvHeader << '\n';
  auto field = [&](const std::optional<std::string>& value) {
    out << ',';
    if (value) out << *value;
  };
  for (const auto& row : rows) {
    out << row.trial << ',' << row.seed << ',' << row.n << ',' << row.r << ',';
    if (row.k) out << *row.k;
    field(row.nu_num);
    field(row.nu_den);
    field(row.perfect);
    field(row.unique_cover);
    field(row.block_constant);
    field(row.T);
    field(row.elapsed_ms);
    out << '\n';
  }
}

ExperimentResult experiment_kout_pfm(const ExperimentConfig& config) {
  config.validate();
  const HostModel host{config.host, config.n, config.r};
  host.validate();
  if (config.k_max > host.incident_edge_count()) {
    throw InputError("k exceeds the number of incident host edges");
  }
  ExperimentResult result;
  for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
    std::vector<TrialRecord> rows(config.trials);
    detail::parallel_for(config.trials, config.execution, [&](std::size_t t) {
      Stopwatch clock;
      TrialRecord& rec = rows[t];
      rec.trial = std::to_string(t);
      rec.seed = trial_seed(config.seed, k, t);
      rec.n = host.num_vertices();
      rec.r = host.r;
      rec.k = k;
      try {
        const auto sample = sample_kout(host, k, rec.seed, Execution::kSerial);
        const Hypergraph& h = sample.hypergraph;
        const SolveMode mode = auto_mode(h, config.mode);
        record_nu(rec, solve_nu_star(h, mode));
        if (mode == SolveMode::kExact && h.n() <= config.shape_max_vertices) {
          const auto shape = cover_shape(h, SolveMode::kExact, Execution::kSerial);
          rec.unique_cover = flag(shape.is_unique_uniform);
          if (shape.is_block_constant) rec.block_constant = flag(*shape.is_block_constant);
        }
      } catch (const SolverError& e) {
        rec.error = e.what();
      }
      if (config.timing) rec.elapsed_ms = fixed(clock.ms(), 3);
    });
    std::size_t perfect = 0;
    std::size_t failed = 0;
    for (const auto& rec : rows) {
      perfect += rec.perfect == "1";
      failed += rec.error.has_value();
    }
    result.failures += failed;
    auto summary = summary_row(config, host.num_vertices(), host.r, k, rows);
    result.summary.push_back("k=" + std::to_string(k) + " trials=" + std::to_string(rows.size()) +
                             " perfect=" + std::to_string(perfect) +
                             " pfm_frequency=" + summary.perfect.value_or("") +
                             " failures=" + std::to_string(failed));
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    result.rows.push_back(std::move(summary));
  }
  return result;
}

ImplicationOutcome check_implications(const Hypergraph& h, const PartiteExpansionParams& params,
                                      const ScanBudget& budget, Execution execution) {
  ImplicationOutcome out;
  const auto nu = nu_star(h);
  out.nu = nu.total;
  out.perfect = nu.total == perfect_value(h);
  const auto tau = tau_star(h);
  if (tau.total != nu.total) out.violations.push_back("nu* != tau*");

  const std::size_t r = h.r();
  std::optional<CoverShapeReport> shape;
  auto get_shape = [&]() -> const CoverShapeReport& {
    if (!shape) shape = cover_shape(h, SolveMode::kExact, execution);
    return *shape;
  };

  const auto strict = check_prop3_hypothesis(h, true, budget, execution);
  out.prop3_strict = strict.verdict;
  if (strict.verdict && !out.perfect) {
    out.violations.push_back("strict expansion holds but nu* < n/r");
  }
  if (strict.witness && !witness_is_valid(h, strict, (r - 1) * strict.witness->first.size() - 1)) {
    out.violations.push_back("invalid strict witness");
  }

  const auto loose = check_prop3_hypothesis(h, false, budget, execution);
  out.prop3_nonstrict = loose.verdict;
  if (loose.verdict) {
    out.unique_uniform = get_shape().is_unique_uniform;
    if (!*out.unique_uniform) {
      out.violations.push_back("non-strict expansion holds but the uniform cover is not unique");
    }
  }
  if (loose.witness && !witness_is_valid(h, loose, (r - 1) * loose.witness->first.size())) {
    out.violations.push_back("invalid non-strict witness");
  }

  if (r == 2) {
    const auto corollary = check_graph_corollary(h, budget, execution);
    out.corollary = corollary.verdict;
    if (corollary.verdict != out.perfect) {
      out.violations.push_back("neighbourhood condition disagrees with perfection");
    }
  }

  if (h.is_partite()) {
    const auto report = check_prop6_hypothesis(h, params, budget, execution);
    out.prop6 = report.verdict;
    out.block_constant = get_shape().is_block_constant;
    if (report.verdict && !out.perfect) {
      out.violations.push_back("partite expansion holds but nu* < n/r");
    }
    if (report.verdict && out.block_constant != true) {
      out.violations.push_back("partite expansion holds but a minimum cover is not block-constant");
    }
    if (!partite_witness_is_valid(h, report, params)) {
      out.violations.push_back("invalid partite witness");
    }
  }
  return out;
}

GeneratedInstance implication_instance(std::uint64_t seed, std::size_t index, std::size_t max_n) {
  if (max_n < 3) throw InputError("implication instances need max_n >= 3");
  auto engine = make_engine(seed, rng_stream::kInstance, index);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine);
  };
  auto real = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  };
  switch (index % 5) {
    case 0: {
      const std::size_t n = uniform(3, max_n);
      const double p = real(0.2, 1.0);
      return {"hyper3", std::nullopt, random_edge_set(n, 3, p, engine)};
    }
    case 1: {
      const std::size_t n = uniform(2, max_n);
      const double p = real(0.15, 1.0);
      return {"graph", std::nullopt, random_edge_set(n, 2, p, engine)};
    }
    case 2: {
      const std::size_t r = uniform(2, 3);
      const std::size_t n = uniform(r + 1, max_n);
      const HostModel host{HostKind::kComplete, n, r};
      const std::size_t k = uniform(1, std::min<std::uint64_t>(4, host.incident_edge_count()));
      return {"kout", k, sample_kout(host, k, engine(), Execution::kSerial).hypergraph};
    }
    case 3: {
      const std::size_t r = uniform(2, 3);
      const std::size_t b = uniform(1, std::min<std::size_t>(5, max_n / r));
      const double p = std::bernoulli_distribution(0.6)(engine) ? 1.0 : real(0.5, 1.0);
      return {"partite", std::nullopt, random_partite(r, b, p, engine)};
    }
    default: {
      const std::size_t n = uniform(3, max_n);
      const double p = real(0.7, 1.0);
      return {"dense3", std::nullopt, random_edge_set(n, 3, p, engine)};
    }
  }
}

ExperimentResult experiment_implication(const ExperimentConfig& config,
                                        const std::string& dump_dir) {
  config.validate();
  ExperimentResult result;
  struct Slot {
    GeneratedInstance instance;
    ImplicationOutcome outcome;
    TrialRecord record;
  };
  std::vector<std::optional<Slot>> slots(config.trials);
  detail::parallel_for(config.trials, config.execution, [&](std::size_t i) {
    Stopwatch clock;
    auto instance = implication_instance(config.seed, i, config.implication_max_n);
    const Hypergraph& h = instance.hypergraph;
    auto params = PartiteExpansionParams::defaults(h.r());
    if (config.epsilon) params.epsilon = *config.epsilon;
    if (config.lambda) params.lambda = *config.lambda;
    TrialRecord rec;
    rec.trial = std::to_string(i);
    rec.seed = derive_seed(config.seed, rng_stream::kInstance, i);
    rec.n = h.n();
    rec.r = h.r();
    rec.k = instance.k;
    ImplicationOutcome outcome;
    try {
      outcome = check_implications(h, params, config.scan, Execution::kSerial);
      outcome.family = instance.family;
      rec.nu_num = outcome.nu.get_num().get_str();
      rec.nu_den = outcome.nu.get_den().get_str();
      rec.perfect = flag(outcome.perfect);
      if (outcome.unique_uniform) rec.unique_cover = flag(*outcome.unique_uniform);
      if (outcome.block_constant) rec.block_constant = flag(*outcome.block_constant);
    } catch (const SolverError& e) {
      rec.error = e.what();
    }
    if (config.timing) rec.elapsed_ms = fixed(clock.ms(), 3);
    slots[i] = Slot{std::move(instance), std::move(outcome), std::move(rec)};
  });

  std::size_t strict_pass = 0, loose_pass = 0, graphs = 0, corollary_agree = 0;
  std::size_t partite = 0, prop6_pass = 0;
  std::vector<TrialRecord> rows;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = *slots[i];
    const auto& o = slot.outcome;
    result.failures += slot.record.error.has_value();
    strict_pass += o.prop3_strict;
    loose_pass += o.prop3_nonstrict;
    if (o.corollary) {
      ++graphs;
      corollary_agree += *o.corollary == o.perfect;
    }
    if (o.prop6) {
      ++partite;
      prop6_pass += *o.prop6;
    }
    if (!o.violations.empty()) {
      ++result.counterexamples;
      if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        const auto path =
            (std::filesystem::path(dump_dir) / ("counterexample_" + std::to_string(i) + ".txt"))
                .string();
        std::ofstream file(path);
        file << "# family=" << slot.instance.family << " seed=" << config.seed
             << " index=" << i << '\n';
        for (const auto& v : o.violations) file << "# " << v << '\n';
        write_hypergraph(file, slot.instance.hypergraph);
        result.dumps.push_back(path);
      }
    }
    rows.push_back(std::move(slot.record));
  }
  TrialRecord summary;
  summary.trial = "summary";
  summary.seed = config.seed;
  summary.perfect = frequency(rows, &TrialRecord::perfect);
  summary.unique_cover = frequency(rows, &TrialRecord::unique_cover);
  summary.block_constant = frequency(rows, &TrialRecord::block_constant);
  result.rows = std::move(rows);
  result.rows.push_back(std::move(summary));
  result.summary.push_back(
      "instances=" + std::to_string(config.trials) + " strict_pass=" + std::to_string(strict_pass) +
      " nonstrict_pass=" + std::to_string(loose_pass) + " graphs=" + std::to_string(graphs) +
      " corollary_agree=" + std::to_string(corollary_agree) + " partite=" +
      std::to_string(partite) + " partite_pass=" + std::to_string(prop6_pass) +
      " counterexamples=" + std::to_string(result.counterexamples) +
      " failures=" + std::to_string(result.failures));
  return result;
}

ExperimentResult experiment_stopping(const ExperimentConfig& config) {
  config.validate();
  if (config.host != HostKind::kComplete) throw InputError("the process runs on the complete host");
  const std::size_t n = config.n;
  const std::size_t r = config.r;
  if (n < r) throw InputError("n must be at least r");
  const double epsilon = config.epsilon.value_or(0.1);
  const double g = default_slack(n);
  const double bound = diagnostic_mark_bound(n, r, g);

  struct Extra {
    bool pre_deficient = false;
    std::optional<bool> in_window;
  };
  std::vector<TrialRecord> rows(config.trials);
  std::vector<Extra> extras(config.trials);
  detail::parallel_for(config.trials, config.execution, [&](std::size_t t) {
    Stopwatch clock;
    TrialRecord& rec = rows[t];
    rec.trial = std::to_string(t);
    rec.seed = trial_seed(config.seed, 0, t);
    rec.n = n;
    rec.r = r;
    try {
      const auto trace = run_process(n, r, rec.seed, StopRule::at_mark(bound));
      const std::size_t T = *trace.T;
      rec.T = std::to_string(T);
      const Hypergraph at_t = trace.prefix(T);
      const SolveMode mode = auto_mode(at_t, config.mode);
      record_nu(rec, solve_nu_star(at_t, mode));
      const Hypergraph before = trace.prefix(T - 1);
      const auto pre = solve_nu_star(before, mode);
      extras[t].pre_deficient =
          pre.exact ? *pre.exact < perfect_value(before)
                    : pre.value < static_cast<double>(n) / static_cast<double>(r) -
                                      kFloatPerfectionTolerance;
      if (n >= 3) extras[t].in_window = threshold_diagnostics(trace, epsilon, g).lambda_in_window;
    } catch (const SolverError& e) {
      rec.error = e.what();
    }
    if (config.timing) rec.elapsed_ms = fixed(clock.ms(), 3);
  });

  ExperimentResult result;
  std::size_t perfect = 0, deficient = 0, windows = 0, window_hits = 0, min_t_ok = 0;
  double t_sum = 0.0;
  const std::size_t min_t = (n + r - 1) / r;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    result.failures += rows[t].error.has_value();
    perfect += rows[t].perfect == "1";
    deficient += extras[t].pre_deficient;
    if (rows[t].T) {
      const auto T = std::stoul(*rows[t].T);
      t_sum += static_cast<double>(T);
      min_t_ok += T >= min_t;
    }
    if (extras[t].in_window) {
      ++windows;
      window_hits += *extras[t].in_window;
    }
  }
  auto summary = summary_row(config, n, r, std::nullopt, rows);
  const double trials = static_cast<double>(rows.size());
  const double scale = static_cast<double>(n) / static_cast<double>(r) * std::log(static_cast<double>(n));
  result.summary.push_back(
      "trials=" + std::to_string(rows.size()) + " perfect=" + std::to_string(perfect) +
      " pfm_frequency=" + summary.perfect.value_or("") + " mean_T=" + fixed(t_sum / trials) +
      " T_ratio=" + fixed(t_sum / trials / scale) + " T_at_least_ceil_n_over_r=" +
      std::to_string(min_t_ok) + " pre_T_deficient=" + std::to_string(deficient) +
      " lambda_in_window=" + std::to_string(window_hits) + "/" + std::to_string(windows) +
      " failures=" + std::to_string(result.failures));
  result.rows = std::move(rows);
  result.rows.push_back(std::move(summary));
  return result;
}

}  // namespace kout
