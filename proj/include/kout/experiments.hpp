#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kout/execution.hpp"
#include "kout/expansion.hpp"
#include "kout/hypergraph.hpp"
#include "kout/matching.hpp"
#include "kout/models.hpp"

namespace kout {

/// Edge count up to which exact mode is chosen when no mode is given.
inline constexpr std::size_t kExactEdgeLimit = 2000;

SolveMode auto_mode(const Hypergraph& h, std::optional<SolveMode> requested);

struct ExperimentConfig {
  HostKind host = HostKind::kComplete;
  std::size_t n = 0;
  std::size_t r = 3;
  std::size_t k_min = 1;
  std::size_t k_max = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Unset: exact up to kExactEdgeLimit edges, float above.
  std::optional<SolveMode> mode;
  /// Cover shape is computed for exact trials with at most this many vertices.
  std::size_t shape_max_vertices = 24;
  /// Largest vertex count of generated implication instances.
  std::size_t implication_max_n = 10;
  std::optional<double> epsilon;
  std::optional<double> lambda;
  ScanBudget scan;
  bool timing = false;
  Execution execution = Execution::kParallel;

  /// Throws InputError on an inconsistent configuration.
  void validate() const;
};

/// One CSV row. Unset fields are written empty.
struct TrialRecord {
  std::string trial;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::optional<std::size_t> k;
  std::optional<std::string> nu_num;
  std::optional<std::string> nu_den;
  std::optional<std::string> perfect;
  std::optional<std::string> unique_cover;
  std::optional<std::string> block_constant;
  std::optional<std::string> T;
  std::optional<std::string> elapsed_ms;
  /// Solver or budget failure; not part of the CSV.
  std::optional<std::string> error;
};

inline constexpr const char* kCsvHeader =
    "trial,seed,n,r,k,nu_num,nu_den,perfect,unique_cover,block_constant,T,elapsed_ms";

struct ExperimentResult {
  /// Trial rows, each group followed by its summary row.
  std::vector<TrialRecord> rows;
  /// Human-readable key=value lines.
  std::vector<std::string> summary;
  std::size_t failures = 0;
  std::size_t counterexamples = 0;
  /// Files holding counterexample instances.
  std::vector<std::string> dumps;
};

void write_csv(std::ostream& out, const std::vector<TrialRecord>& rows);

/// Per k in [k_min, k_max] and trial: sample k-out, solve nu*, record
/// perfection and (small exact instances) cover shape. One summary row per k.
ExperimentResult experiment_kout_pfm(const ExperimentConfig& config);

/// Random small instances (mixed-density hypergraphs, graphs, k-out samples
/// and partite instances); checks every implication between the expansion
/// hypotheses and the LP oracles. Counterexamples are written under
/// dump_dir (when nonempty).
ExperimentResult experiment_implication(const ExperimentConfig& config,
                                        const std::string& dump_dir = "");

/// Runs the process to T per trial and records perfection of H_T, the
/// deficiency of H_{T-1}, and whether Lambda falls in [sigma, beta].
ExperimentResult experiment_stopping(const ExperimentConfig& config);

/// Outcome of every check on one implication instance.
struct ImplicationOutcome {
  std::string family;
  Rational nu;
  bool perfect = false;
  bool prop3_strict = false;
  bool prop3_nonstrict = false;
  std::optional<bool> unique_uniform;
  std::optional<bool> corollary;
  std::optional<bool> prop6;
  std::optional<bool> block_constant;
  std::vector<std::string> violations;
};

/// Runs the checks of experiment_implication on one hypergraph.
ImplicationOutcome check_implications(const Hypergraph& h, const PartiteExpansionParams& params,
                                      const ScanBudget& budget, Execution execution);

/// Instance number `index` of the implication stream for `seed`.
struct GeneratedInstance {
  std::string family;
  std::optional<std::size_t> k;
  Hypergraph hypergraph;
};
GeneratedInstance implication_instance(std::uint64_t seed, std::size_t index, std::size_t max_n);

}  // namespace kout
