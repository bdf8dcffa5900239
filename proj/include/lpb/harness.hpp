#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpb/baselines.hpp"
#include "lpb/core.hpp"
#include "lpb/operators.hpp"
#include "lpb/stats.hpp"

// Batch experiments: runs x functions x algorithms, with CSV output.
namespace lpb::harness {

enum class Algorithm { lpb, ga, pso };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algorithm);

struct ExperimentConfig {
  std::vector<Algorithm> algorithms{Algorithm::lpb};
  std::vector<std::string> functions;  // canonical registry ids
  std::size_t runs = 30;
  std::size_t iterations = 500;
  std::size_t population = 80;
  double dp = 0.5;
  std::optional<std::size_t> crossover_count;
  std::optional<std::size_t> mutation_count;
  MutationKind mutation = MutationKind::gaussian;
  double mutation_scale = kDefaultMutationScale;
  PsoParams pso;  // swarm size and iterations come from population/iterations
  std::uint64_t seed = 1;
  bool apply_shift = true;
  std::filesystem::path cec_data_dir;  // empty: default data directory
  std::filesystem::path output_dir = "results";
  std::size_t jobs = 0;  // 0: hardware concurrency

  /// Throws ConfigError; checks ids against the registry and all counts.
  void validate() const;
};

/// JSON document mirroring ExperimentConfig. "functions" takes a list or an
/// id expression ("TF1..TF19", "classical"), "algorithm" a name or a list.
/// Unknown keys are rejected. Fields missing from the document keep the
/// values already in `base`.
ExperimentConfig parse_config(std::string_view json_text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& file, ExperimentConfig base = {});
std::string config_to_json(const ExperimentConfig& config);

/// hash(master, function id, run index).
std::uint64_t run_seed(std::uint64_t master, std::string_view function_id, std::size_t run);

struct FunctionSummary {
  std::string function_id;
  std::string algorithm;
  stats::BatchSummary summary;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // ordered by (algorithm, function, run)
  std::vector<FunctionSummary> summaries;
};

using Progress = std::function<void(const RunRecord&)>;

/// Validates first, then executes up to `jobs` runs concurrently. Output does
/// not depend on scheduling. `progress` is called under a lock.
ExperimentResult run_experiment(const ExperimentConfig& config, const Progress& progress = {});

/// One optimizer run for a given algorithm, shared by the CLI and tests.
RunRecord run_single(const ExperimentConfig& config, Algorithm algorithm,
                     const ObjectiveProblem& problem, std::uint64_t seed);

std::vector<FunctionSummary> summarize_records(std::span<const RunRecord> records);

// ---- CSV ------------------------------------------------------------------------
// UTF-8, comma-separated, header row, values printed with 17 significant digits.

void write_summary_csv(const std::filesystem::path& file, std::span<const FunctionSummary> rows);
void write_runs_csv(const std::filesystem::path& file, std::span<const RunRecord> records);
void write_convergence_csv(const std::filesystem::path& file, std::span<const RunRecord> records);
void write_significance_csv(const std::filesystem::path& file,
                            std::span<const stats::SignificanceRow> rows);

/// Reads runs.csv back (traces are left empty). Throws IoError / ConfigError.
std::vector<RunRecord> read_runs_csv(const std::filesystem::path& file);

/// summary.csv, runs.csv, convergence.csv and config.json under `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const ExperimentResult& result);

inline constexpr std::string_view kSummaryFile = "summary.csv";
inline constexpr std::string_view kRunsFile = "runs.csv";
inline constexpr std::string_view kConvergenceFile = "convergence.csv";
inline constexpr std::string_view kConfigFile = "config.json";

}  // namespace lpb::harness
