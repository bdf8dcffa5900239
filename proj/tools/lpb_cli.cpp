// lpb: command-line driver for benchmarks, assignment instances and statistics.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "lpb/benchmarks.hpp"
#include "lpb/cec.hpp"
#include "lpb/gap.hpp"
#include "lpb/harness.hpp"
#include "lpb/stats.hpp"

namespace fs = std::filesystem;
using namespace lpb;

namespace {

enum Exit { kOk = 0, kConfig = 1, kIo = 2 };

// ---- list ---------------------------------------------------------------------

int cmd_list(const std::string& family) {
  // Same vocabulary as --functions: suite names, ranges or ids.
  const auto wanted = family.empty() ? std::vector<std::string>{} : bench::expand_ids(family);
  std::size_t shown = 0;
  fmt::print("{:<6} {:<16} {:>4} {:>22} {:>14}  {}\n", "id", "family", "dim", "range", "f_min",
             "name");
  for (const auto& s : bench::registry()) {
    const auto fam = bench::family_name(s.family);
    if (!family.empty() && std::ranges::find(wanted, s.id) == wanted.end()) continue;
    fmt::print("{:<6} {:<16} {:>4} {:>22} {:>14.10g}  {}\n", s.id, fam, s.dim,
               fmt::format("[{:g}, {:g}]", s.lower.front(), s.upper.front()), s.f_min, s.name);
    ++shown;
  }
  fmt::print("{} functions\n", shown);
  return kOk;
}

// ---- bench --------------------------------------------------------------------

struct BenchFlags {
  std::string config_file;
  std::vector<std::string> algorithms;
  std::string functions;
  std::optional<std::size_t> runs, iterations, population, crossover_count, mutation_count, jobs;
  std::optional<double> dp, mutation_scale;
  std::optional<std::string> mutation;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string cec_data;
  bool no_shift = false;
  bool quiet = false;
};

int cmd_bench(const BenchFlags& f) {
  harness::ExperimentConfig cfg;
  if (!f.config_file.empty()) cfg = harness::load_config(f.config_file);
  if (!f.algorithms.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : f.algorithms) cfg.algorithms.push_back(harness::parse_algorithm(a));
  }
  if (!f.functions.empty()) cfg.functions = bench::expand_ids(f.functions);
  if (f.runs) cfg.runs = *f.runs;
  if (f.iterations) cfg.iterations = *f.iterations;
  if (f.population) cfg.population = *f.population;
  if (f.crossover_count) cfg.crossover_count = *f.crossover_count;
  if (f.mutation_count) cfg.mutation_count = *f.mutation_count;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.dp) cfg.dp = *f.dp;
  if (f.mutation_scale) cfg.mutation_scale = *f.mutation_scale;
  if (f.mutation) cfg.mutation = parse_mutation_kind(*f.mutation);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (!f.cec_data.empty()) cfg.cec_data_dir = f.cec_data;
  if (f.no_shift) cfg.apply_shift = false;

  const std::size_t total = cfg.algorithms.size() * cfg.functions.size() * cfg.runs;
  std::size_t done = 0;
  auto progress = [&](const RunRecord& r) {
    ++done;
    if (!f.quiet) {
      fmt::print(stderr, "[{}/{}] {} {} run {}: {:.6g}\n", done, total, r.algorithm,
                 r.function_id, r.run_index, r.final_best);
    }
  };
  const auto result = harness::run_experiment(cfg, progress);
  harness::write_outputs(cfg.output_dir, cfg, result);

  fmt::print("{:<6} {:<4} {:>16} {:>16} {:>10}\n", "func", "algo", "ave", "std", "pt[s]");
  for (const auto& s : result.summaries) {
    fmt::print("{:<6} {:<4} {:>16.8g} {:>16.8g} {:>10.4f}\n", s.function_id, s.algorithm,
               s.summary.mean, s.summary.std, s.summary.mean_pt_seconds);
  }
  fmt::print("wrote {}\n", cfg.output_dir.string());
  return kOk;
}

// ---- gap ----------------------------------------------------------------------

struct GapFlags {
  std::optional<std::size_t> size;
  std::string instance;
  std::uint64_t seed = 1;
  std::size_t iterations = 200;
  std::size_t population = 80;
  std::string out;
};

int cmd_gap(const GapFlags& f) {
  if (f.size.has_value() == !f.instance.empty()) {
    throw ConfigError("gap needs exactly one of --size or --instance");
  }
  gap::AssignmentInstance inst;
  if (f.size) {
    Rng rng(Rng::derive_seed(f.seed, "instance", *f.size));
    inst = gap::generate_instance(*f.size, rng);
  } else {
    inst = gap::read_instance(f.instance);
  }

  LpbParams params = gap::default_params(f.seed);
  params.max_iterations = f.iterations;
  params.population_size = f.population;
  const auto outcome = gap::solve_lpb(inst, params);
  const std::string json = gap::solution_json(outcome);
  std::cout << json;

  if (!f.out.empty()) {
    const fs::path dir = f.out;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
    if (f.size) gap::write_instance(dir / "instance.txt", inst);
    std::FILE* file = std::fopen((dir / "solution.json").c_str(), "wb");
    if (!file || std::fputs(json.c_str(), file) < 0) {
      if (file) std::fclose(file);
      throw IoError(fmt::format("cannot write {}", (dir / "solution.json").string()));
    }
    std::fclose(file);
    RunRecord rec = outcome.record;
    rec.function_id = fmt::format("GAP{}", inst.n);
    harness::write_convergence_csv(dir / harness::kConvergenceFile, std::span(&rec, 1));
  }
  return kOk;
}

// ---- stats --------------------------------------------------------------------

std::vector<RunRecord> load_runs(const fs::path& where, const std::string& algorithm) {
  const fs::path file = fs::is_directory(where) ? where / harness::kRunsFile : where;
  std::vector<RunRecord> runs = harness::read_runs_csv(file);
  if (algorithm.empty()) {
    for (const auto& r : runs) {
      if (r.algorithm != runs.front().algorithm) {
        throw ConfigError(fmt::format("{} holds several algorithms; pick one with --algo-a/--algo-b",
                                      file.string()));
      }
    }
    return runs;
  }
  std::erase_if(runs, [&](const RunRecord& r) { return r.algorithm != algorithm; });
  if (runs.empty()) {
    throw ConfigError(fmt::format("{} has no runs for algorithm '{}'", file.string(), algorithm));
  }
  return runs;
}

int cmd_stats(const std::string& a, const std::string& b, const std::string& algo_a,
              const std::string& algo_b, const std::string& out) {
  const auto rows = stats::significance_table(load_runs(a, algo_a), load_runs(b, algo_b));
  if (!out.empty()) harness::write_significance_csv(out, rows);
  fmt::print("function_id,p_value,significant\n");
  for (const auto& r : rows) fmt::print("{},{:.17g},{}\n", r.function_id, r.p_value, r.significant);
  return kOk;
}

// ---- selftest / cec-data ------------------------------------------------------

int cmd_selftest(const std::string& cec_data) {
  bench::ProblemOptions options;
  options.cec_data_dir = cec_data.empty() ? bench::default_cec_data_dir() : fs::path(cec_data);
  std::size_t failed = 0;
  for (const auto& r : bench::self_test(options)) {
    fmt::print("{:<6} {:>22.15g} {:>22.15g} {:>8.0e}  {}\n", r.id, r.value, r.f_min, r.tolerance,
               r.passed ? "ok" : "FAIL");
    failed += r.passed ? 0 : 1;
  }
  fmt::print("{} failed\n", failed);
  return failed ? kConfig : kOk;
}

int cmd_cec_data(const std::string& out, std::uint64_t seed) {
  const fs::path dir = out.empty() ? bench::default_cec_data_dir() : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  for (const auto& s : bench::registry()) {
    if (!s.needs_data()) continue;
    const fs::path file = dir / cec::data_file_name(s.cec_number(), s.dim);
    cec::write_data(file, cec::generate_data(s.cec_number(), s.dim, seed));
    fmt::print("wrote {}\n", file.string());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LPB optimizer: benchmarks, baselines, statistics and case assignment"};
  app.require_subcommand(1);

  std::string family;
  auto* list = app.add_subcommand("list", "List the benchmark functions");
  list->add_option("--family", family,
                   "Only a suite (unimodal, multimodal, composite, fixed, cec, classical)");

  BenchFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "Run a batch experiment and write CSVs");
  bench_cmd->add_option("--config", bf.config_file, "JSON experiment file; flags override it");
  bench_cmd->add_option("--algo", bf.algorithms, "lpb, ga, pso (repeatable)")->delimiter(',');
  bench_cmd->add_option("--functions", bf.functions, "Ids, ranges or suites, e.g. TF1..TF19");
  bench_cmd->add_option("--runs", bf.runs, "Runs per function (default 30)");
  bench_cmd->add_option("--iterations", bf.iterations, "Iterations per run (default 500)");
  bench_cmd->add_option("--population", bf.population, "Population size (default 80)");
  bench_cmd->add_option("--dp", bf.dp, "Division probability (default 0.5)");
  bench_cmd->add_option("--crossover-count", bf.crossover_count, "Offspring per generation");
  bench_cmd->add_option("--mutation-count", bf.mutation_count, "Mutants per generation");
  bench_cmd->add_option("--mutation", bf.mutation, "gaussian or uniform");
  bench_cmd->add_option("--mutation-scale", bf.mutation_scale, "Gaussian step / range");
  bench_cmd->add_option("--seed", bf.seed, "Master seed");
  bench_cmd->add_option("--out", bf.out, "Output directory (default results)");
  bench_cmd->add_option("--jobs", bf.jobs, "Concurrent runs (default: all cores)");
  bench_cmd->add_option("--cec-data", bf.cec_data, "Directory with CEC data files");
  bench_cmd->add_flag("--no-shift", bf.no_shift, "Evaluate the unshifted formulas");
  bench_cmd->add_flag("--quiet,-q", bf.quiet, "No per-run progress");

  GapFlags gf;
  auto* gap_cmd = app.add_subcommand("gap", "Solve a case-assignment instance with LPB");
  gap_cmd->add_option("--size", gf.size, "Generate an n x n instance")
      ->check(CLI::Range(2, 1000));
  gap_cmd->add_option("--instance", gf.instance, "Instance file");
  gap_cmd->add_option("--seed", gf.seed, "Seed for instance and solver");
  gap_cmd->add_option("--iterations", gf.iterations, "Iterations (default 200)");
  gap_cmd->add_option("--population", gf.population, "Population size (default 80)");
  gap_cmd->add_option("--out", gf.out, "Directory for solution.json and convergence.csv");

  std::string sa, sb, algo_a, algo_b, sout;
  auto* stats_cmd = app.add_subcommand("stats", "Rank-sum significance between two result sets");
  stats_cmd->add_option("a", sa, "Results directory or runs.csv")->required();
  stats_cmd->add_option("b", sb, "Results directory or runs.csv")->required();
  stats_cmd->add_option("--algo-a", algo_a, "Algorithm to take from a");
  stats_cmd->add_option("--algo-b", algo_b, "Algorithm to take from b");
  stats_cmd->add_option("--out", sout, "Also write the table to this CSV file");

  std::string st_data;
  auto* selftest = app.add_subcommand("selftest", "Evaluate every function at its optimum");
  selftest->add_option("--cec-data", st_data, "Directory with CEC data files");

  std::string cd_out;
  std::uint64_t cd_seed = cec::kDataSeed;
  auto* cec_data = app.add_subcommand("cec-data", "Regenerate the CEC shift/rotation files");
  cec_data->add_option("--out", cd_out, "Target directory (default: the data directory)");
  cec_data->add_option("--seed", cd_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*list) return cmd_list(family);
    if (*bench_cmd) return cmd_bench(bf);
    if (*gap_cmd) return cmd_gap(gf);
    if (*stats_cmd) return cmd_stats(sa, sb, algo_a, algo_b, sout);
    if (*selftest) return cmd_selftest(st_data);
    if (*cec_data) return cmd_cec_data(cd_out, cd_seed);
  } catch (const IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfig;
  }
  return kConfig;
}
