#include "lpb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <json.hpp>

#include "lpb/benchmarks.hpp"
#include "lpb/optimizer.hpp"

namespace lpb::harness {

using nlohmann::json;

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::ranges::transform(lower, lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "lpb") return Algorithm::lpb;
  if (lower == "ga") return Algorithm::ga;
  if (lower == "pso") return Algorithm::pso;
  throw ConfigError(fmt::format("unknown algorithm '{}' (lpb, ga, pso)", name));
}

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::lpb:
      return "lpb";
    case Algorithm::ga:
      return "ga";
    case Algorithm::pso:
      return "pso";
  }
  return "?";
}

namespace {

LpbParams lpb_params(const ExperimentConfig& c, std::uint64_t seed) {
  LpbParams p;
  p.population_size = c.population;
  p.dp = c.dp;
  p.crossover_count = c.crossover_count;
  p.mutation_count = c.mutation_count;
  p.mutation = c.mutation;
  p.mutation_scale = c.mutation_scale;
  p.max_iterations = c.iterations;
  p.seed = seed;
  return p;
}

GaParams ga_params(const ExperimentConfig& c, std::uint64_t seed) {
  GaParams p;
  p.population_size = c.population;
  p.crossover_count = c.crossover_count;
  p.mutation_count = c.mutation_count;
  p.mutation = c.mutation;
  p.mutation_scale = c.mutation_scale;
  p.max_iterations = c.iterations;
  p.seed = seed;
  return p;
}

PsoParams pso_params(const ExperimentConfig& c, std::uint64_t seed) {
  PsoParams p = c.pso;
  p.swarm_size = c.population;
  p.max_iterations = c.iterations;
  p.seed = seed;
  return p;
}

bench::ProblemOptions problem_options(const ExperimentConfig& c) {
  bench::ProblemOptions o;
  o.apply_shift = c.apply_shift;
  o.cec_data_dir = c.cec_data_dir.empty() ? bench::default_cec_data_dir() : c.cec_data_dir;
  return o;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw ConfigError("no algorithm selected");
  if (functions.empty()) throw ConfigError("no functions selected");
  for (const auto& id : functions) bench::find(id);
  if (runs < 2) {
    throw ConfigError(fmt::format("runs = {}: a summary needs at least 2 runs", runs));
  }
  if (iterations == 0) throw ConfigError("iterations must be positive");
  for (Algorithm a : algorithms) {
    switch (a) {
      case Algorithm::lpb:
        lpb_params(*this, 0).validate();
        break;
      case Algorithm::ga:
        ga_params(*this, 0).validate();
        break;
      case Algorithm::pso:
        pso_params(*this, 0).validate();
        break;
    }
  }
}

// ---- JSON ---------------------------------------------------------------------

namespace {

template <typename T>
T get_as(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("config key '{}' has the wrong type", key));
  }
}

std::size_t get_count(const json& j, std::string_view key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError(fmt::format("config key '{}' must be a non-negative integer", key));
  }
  return j.get<std::size_t>();
}

std::vector<std::string> parse_functions(const json& j) {
  if (j.is_string()) return bench::expand_ids(j.get<std::string>());
  if (!j.is_array()) throw ConfigError("config key 'functions' must be a string or a list");
  std::string joined;
  for (const auto& item : j) {
    if (!item.is_string()) throw ConfigError("config key 'functions' must list strings");
    joined += (joined.empty() ? "" : ",") + item.get<std::string>();
  }
  return bench::expand_ids(joined);
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text, ExperimentConfig c) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "algorithm" || key == "algorithms") {
      c.algorithms.clear();
      if (value.is_string()) {
        c.algorithms.push_back(parse_algorithm(value.get<std::string>()));
      } else {
        for (const auto& a : get_as<std::vector<std::string>>(value, key)) {
          c.algorithms.push_back(parse_algorithm(a));
        }
      }
    } else if (key == "functions") {
      c.functions = parse_functions(value);
    } else if (key == "runs") {
      c.runs = get_count(value, key);
    } else if (key == "iterations") {
      c.iterations = get_count(value, key);
    } else if (key == "population") {
      c.population = get_count(value, key);
    } else if (key == "dp") {
      c.dp = get_as<double>(value, key);
    } else if (key == "crossover_count") {
      c.crossover_count = get_count(value, key);
    } else if (key == "mutation_count") {
      c.mutation_count = get_count(value, key);
    } else if (key == "mutation") {
      c.mutation = parse_mutation_kind(get_as<std::string>(value, key));
    } else if (key == "mutation_scale") {
      c.mutation_scale = get_as<double>(value, key);
    } else if (key == "seed") {
      c.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "apply_shift") {
      c.apply_shift = get_as<bool>(value, key);
    } else if (key == "cec_data_dir") {
      c.cec_data_dir = get_as<std::string>(value, key);
    } else if (key == "output") {
      c.output_dir = get_as<std::string>(value, key);
    } else if (key == "jobs") {
      c.jobs = get_count(value, key);
    } else if (key == "pso") {
      if (!value.is_object()) throw ConfigError("config key 'pso' must be an object");
      for (const auto& [pk, pv] : value.items()) {
        if (pk == "w_start") {
          c.pso.w_start = get_as<double>(pv, pk);
        } else if (pk == "w_end") {
          c.pso.w_end = get_as<double>(pv, pk);
        } else if (pk == "c1") {
          c.pso.c1 = get_as<double>(pv, pk);
        } else if (pk == "c2") {
          c.pso.c2 = get_as<double>(pv, pk);
        } else if (pk == "velocity_clamp") {
          c.pso.velocity_clamp = get_as<double>(pv, pk);
        } else {
          throw ConfigError(fmt::format("unknown config key 'pso.{}'", pk));
        }
      }
    } else {
      throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file, ExperimentConfig base) {
  std::ifstream in(file);
  if (!in) throw IoError(fmt::format("cannot read config file {}", file.string()));
  std::stringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  std::vector<std::string> algos;
  for (Algorithm a : c.algorithms) algos.emplace_back(algorithm_name(a));
  j["algorithms"] = algos;
  j["functions"] = c.functions;
  j["runs"] = c.runs;
  j["iterations"] = c.iterations;
  j["population"] = c.population;
  j["dp"] = c.dp;
  j["crossover_count"] = c.crossover_count.value_or(default_crossover_count(c.population));
  j["mutation_count"] = c.mutation_count.value_or(default_mutation_count(c.population));
  j["mutation"] = mutation_kind_name(c.mutation);
  j["mutation_scale"] = c.mutation_scale;
  j["pso"] = {{"w_start", c.pso.w_start},
              {"w_end", c.pso.w_end},
              {"c1", c.pso.c1},
              {"c2", c.pso.c2},
              {"velocity_clamp", c.pso.velocity_clamp}};
  j["seed"] = c.seed;
  j["apply_shift"] = c.apply_shift;
  return j.dump(2) + "\n";
}

// ---- runs ---------------------------------------------------------------------

std::uint64_t run_seed(std::uint64_t master, std::string_view function_id, std::size_t run) {
  return Rng::derive_seed(master, function_id, run);
}

RunRecord run_single(const ExperimentConfig& config, Algorithm algorithm,
                     const ObjectiveProblem& problem, std::uint64_t seed) {
  switch (algorithm) {
    case Algorithm::lpb:
      return run_lpb(problem, lpb_params(config, seed));
    case Algorithm::ga:
      return run_ga(problem, ga_params(config, seed));
    case Algorithm::pso:
      return run_pso(problem, pso_params(config, seed));
  }
  throw UsageError("unknown algorithm");
}

std::vector<FunctionSummary> summarize_records(std::span<const RunRecord> records) {
  // Group by (algorithm, function) in order of first appearance.
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>>
      groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.algorithm, r.function_id);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    it->second.first.push_back(r.final_best);
    it->second.second.push_back(r.pt_seconds);
  }
  std::vector<FunctionSummary> out;
  for (const auto& key : keys) {
    const auto& [finals, pts] = groups.at(key);
    out.push_back({key.second, key.first, stats::summarize(finals, pts)});
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Progress& progress) {
  config.validate();
  const bench::ProblemOptions options = problem_options(config);

  // Problems are built up front so missing data files fail before any run.
  std::vector<ObjectiveProblem> problems;
  for (const auto& id : config.functions) {
    problems.push_back(bench::make_problem(bench::find(id), options));
    problems.back().name = id;
  }

  struct Task {
    Algorithm algorithm;
    std::size_t function;
    std::size_t run;
  };
  std::vector<Task> tasks;
  for (Algorithm a : config.algorithms) {
    for (std::size_t f = 0; f < problems.size(); ++f) {
      for (std::size_t r = 0; r < config.runs; ++r) tasks.push_back({a, f, r});
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& t = tasks[k];
      try {
        const std::uint64_t seed = run_seed(config.seed, config.functions[t.function], t.run);
        RunRecord rec = run_single(config, t.algorithm, problems[t.function], seed);
        rec.run_index = t.run;
        rec.function_id = config.functions[t.function];
        records[k] = std::move(rec);
        if (progress) {
          std::lock_guard guard(lock);
          progress(records[k]);
        }
      } catch (...) {
        std::lock_guard guard(lock);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  std::size_t jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, tasks.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.summaries = summarize_records(records);
  result.records = std::move(records);
  return result;
}

// ---- CSV ----------------------------------------------------------------------

namespace {

std::ofstream open_for_writing(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write {}", file.string()));
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& file) {
  out.flush();
  if (!out) throw IoError(fmt::format("failed writing {}", file.string()));
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (std::size_t start = 0;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view text, const std::filesystem::path& file, std::size_t line) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(fmt::format("{}:{}: cannot parse '{}'", file.string(), line, text));
  }
  return value;
}

}  // namespace

void write_summary_csv(const std::filesystem::path& file, std::span<const FunctionSummary> rows) {
  auto out = open_for_writing(file);
  out << "function,algorithm,ave,std,pt_seconds\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{}\n", r.function_id, r.algorithm, num(r.summary.mean),
                       num(r.summary.std), num(r.summary.mean_pt_seconds));
  }
  finish(out, file);
}

void write_runs_csv(const std::filesystem::path& file, std::span<const RunRecord> records) {
  auto out = open_for_writing(file);
  out << "function,algorithm,run,seed,final_best,evaluations,pt_seconds\n";
  for (const auto& r : records) {
    out << fmt::format("{},{},{},{},{},{},{}\n", r.function_id, r.algorithm, r.run_index, r.seed,
                       num(r.final_best), r.evaluations, num(r.pt_seconds));
  }
  finish(out, file);
}

void write_convergence_csv(const std::filesystem::path& file, std::span<const RunRecord> records) {
  auto out = open_for_writing(file);
  out << "function,algorithm,run,iteration,best_objective\n";
  for (const auto& r : records) {
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      out << fmt::format("{},{},{},{},{}\n", r.function_id, r.algorithm, r.run_index, i + 1,
                         num(r.trace[i]));
    }
  }
  finish(out, file);
}

void write_significance_csv(const std::filesystem::path& file,
                            std::span<const stats::SignificanceRow> rows) {
  auto out = open_for_writing(file);
  out << "function_id,p_value,significant\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{}\n", r.function_id, num(r.p_value), r.significant);
  }
  finish(out, file);
}

std::vector<RunRecord> read_runs_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError(fmt::format("cannot read {}", file.string()));
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(fmt::format("{} is empty", file.string()));
  const std::string header_line = line;
  const auto header = split(header_line);
  std::map<std::string_view, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  for (std::string_view need : {"function", "algorithm", "run", "seed", "final_best"}) {
    if (!column.count(need)) {
      throw ConfigError(fmt::format("{}: missing column '{}'", file.string(), need));
    }
  }

  std::vector<RunRecord> records;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size()) {
      throw ConfigError(fmt::format("{}:{}: expected {} fields", file.string(), n, header.size()));
    }
    RunRecord r;
    r.function_id = std::string(f[column["function"]]);
    r.algorithm = std::string(f[column["algorithm"]]);
    r.run_index = parse_field<std::size_t>(f[column["run"]], file, n);
    r.seed = parse_field<std::uint64_t>(f[column["seed"]], file, n);
    r.final_best = parse_field<double>(f[column["final_best"]], file, n);
    if (column.count("evaluations")) {
      r.evaluations = parse_field<std::uint64_t>(f[column["evaluations"]], file, n);
    }
    if (column.count("pt_seconds")) {
      r.pt_seconds = parse_field<double>(f[column["pt_seconds"]], file, n);
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const ExperimentResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  write_summary_csv(dir / kSummaryFile, result.summaries);
  write_runs_csv(dir / kRunsFile, result.records);
  write_convergence_csv(dir / kConvergenceFile, result.records);
  auto out = open_for_writing(dir / kConfigFile);
  out << config_to_json(config);
  finish(out, dir / kConfigFile);
}

}  // namespace lpb::harness
