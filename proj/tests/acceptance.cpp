// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "lpb/benchmarks.hpp"
#include "lpb/cec.hpp"
#include "lpb/composite.hpp"
#include "lpb/gap.hpp"
#include "lpb/harness.hpp"
#include "lpb/operators.hpp"
#include "lpb/optimizer.hpp"
#include "lpb/stats.hpp"

using namespace lpb;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  fmt::print("criterion {:2}: {}  {}\n", criterion, ok ? "PASS" : "FAIL", detail);
  std::fflush(stdout);
}

bool sorted_permutation(std::vector<int> p) {
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i + 1)) return false;
  }
  return true;
}

Individual scored(double v) {
  Individual ind(RealVector{v});
  ind.objective = v;
  ind.evaluated = true;
  return ind;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV text with the pt_seconds column removed.
std::string strip_pt(const std::string& csv) {
  std::istringstream in(csv);
  std::string out, line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    for (std::string cell; std::getline(h, cell, ',');) header.push_back(cell);
  }
  in.seekg(0);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::size_t k = 0;
    for (std::string cell; std::getline(row, cell, ','); ++k) {
      if (k < header.size() && header[k] == "pt_seconds") continue;
      out += cell + ',';
    }
    out += '\n';
  }
  return out;
}

double mean_of(const harness::ExperimentResult& result, const std::string& algorithm,
               const std::string& id) {
  for (const auto& s : result.summaries) {
    if (s.algorithm == algorithm && s.function_id == id) return s.summary.mean;
  }
  throw std::runtime_error("missing summary for " + algorithm + " " + id);
}

std::vector<RunRecord> runs_of(const harness::ExperimentResult& result, const std::string& algorithm) {
  std::vector<RunRecord> out;
  for (const auto& r : result.records) {
    if (r.algorithm == algorithm) out.push_back(r);
  }
  return out;
}

// Two-sided rank-sum p by enumerating all C(n, na) rank assignments.
double enumerated_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    rank[i] = 1.0 + static_cast<double>(std::count_if(pooled.begin(), pooled.end(),
                                                      [&](double v) { return v < pooled[i]; }));
  }
  const double centre = static_cast<double>(a.size() * (n + 1)) / 2.0;
  const double observed = std::accumulate(rank.begin(), rank.begin() + static_cast<long>(a.size()), 0.0);
  std::size_t total = 0, extreme = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != a.size()) continue;
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) w += rank[i];
    }
    ++total;
    if (std::abs(w - centre) >= std::abs(observed - centre) - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

double brute_force_assignment(const gap::AssignmentInstance& inst) {
  std::vector<int> perm(inst.n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double total = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) total += inst.cost[static_cast<std::size_t>(perm[j])][j];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

int run_cli(const std::string& args) {
  const std::string command = std::string("\"") + LPB_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  // 30 runs x 80 agents x 500 iterations on the 19 classical functions, LPB and GA.
  harness::ExperimentConfig classical;
  classical.algorithms = {harness::Algorithm::lpb, harness::Algorithm::ga};
  classical.functions = bench::expand_ids("classical");
  classical.seed = 1;
  const auto bench_result = harness::run_experiment(classical);

  {
    const double m = mean_of(bench_result, "lpb", "TF9");
    report(1, m <= 0.1, fmt::format("TF9 LPB mean {:.6g} <= 0.1", m));
  }
  {
    const double m = mean_of(bench_result, "lpb", "TF10");
    report(2, m <= 0.2, fmt::format("TF10 LPB mean {:.6g} <= 0.2", m));
  }
  {
    const double m = mean_of(bench_result, "lpb", "TF1");
    report(3, m <= 0.05, fmt::format("TF1 LPB mean {:.6g} <= 0.05", m));
  }
  {
    const std::map<std::string, double> target{
        {"FD16", -1.03163}, {"FD17", 0.397888}, {"FD18", 3.000142}, {"FD19", -3.86278}};
    bool ok = true;
    std::string detail;
    for (const auto& [id, t] : target) {
      const double m = mean_of(bench_result, "lpb", id);
      ok &= std::abs(m - t) <= 1e-2;
      detail += fmt::format("{} {:.7g} (|d| {:.2g}); ", id, m, std::abs(m - t));
    }
    const double fd14 = mean_of(bench_result, "lpb", "FD14");
    ok &= fd14 <= 1.1;
    detail += fmt::format("FD14 {:.7g} <= 1.1", fd14);
    report(4, ok, detail);
  }
  {
    int wins = 0;
    std::string lost;
    for (const auto& id : classical.functions) {
      if (mean_of(bench_result, "lpb", id) < mean_of(bench_result, "ga", id)) {
        ++wins;
      } else {
        lost += id + " ";
      }
    }
    const auto rows = stats::significance_table(runs_of(bench_result, "lpb"), runs_of(bench_result, "ga"));
    const auto tf9 = std::ranges::find_if(rows, [](const auto& r) { return r.function_id == "TF9"; });
    const double p = tf9->p_value;
    report(5, wins >= 12 && p < 0.05,
           fmt::format("LPB mean beats GA on {}/19 (>= 12; not better on: {}); TF9 rank-sum p {:.3g} < 0.05",
                       wins, lost.empty() ? "none" : lost, p));
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (int k = 4; k <= 10; ++k) {
      const auto id = fmt::format("CEC{:02}", k);
      const auto data = cec::load_data(bench::default_cec_data_dir(), k, bench::find(id).dim);
      const double dev = std::abs(bench::eval_cec(id, data.shift) - 1.0);
      worst = std::max(worst, dev);
      ok &= dev <= 1e-9;
    }
    harness::ExperimentConfig cec10;
    cec10.functions = {"CEC10"};
    cec10.seed = 1;
    const double m = mean_of(harness::run_experiment(cec10), "lpb", "CEC10");
    report(6, ok && m <= 20.5,
           fmt::format("CEC04..CEC10 shift points: max |f - 1| {:.2g} <= 1e-9; CEC10 LPB mean {:.6g} <= 20.5",
                       worst, m));
  }

  {
    Rng rng(Rng::derive_seed(1, "properties", 0));
    const FitnessOrdering ordering(Sense::minimize);
    int cases = 0;
    std::vector<std::string> broken;

    // partition exhaustiveness and tier ordering
    bool partition_ok = true;
    for (int t = 0; t < 1000; ++t, ++cases) {
      const std::size_t n = 2 + rng.index(80);
      std::vector<Individual> pop;
      for (std::size_t i = 0; i < n; ++i) pop.push_back(scored(std::floor(rng.uniform(0, 10))));
      const auto groups = sample_and_split(pop, rng.uniform(0.05, 1.0), ordering, rng);
      const auto tiers = partition(pop, groups, ordering);
      std::vector<double> all, want;
      for (const auto* tier : {&tiers.perfect, &tiers.good, &tiers.bad}) {
        for (const auto& ind : *tier) all.push_back(ind.objective);
      }
      for (const auto& ind : pop) want.push_back(ind.objective);
      std::ranges::sort(all);
      std::ranges::sort(want);
      partition_ok &= all == want;
      for (const auto& ind : tiers.perfect) partition_ok &= ind.objective < tiers.threshold_good;
      for (const auto& ind : tiers.good) {
        partition_ok &= ind.objective >= tiers.threshold_good && ind.objective < tiers.threshold_bad;
      }
      for (const auto& ind : tiers.bad) partition_ok &= ind.objective >= tiers.threshold_bad;
      partition_ok &= staged_select(tiers, 1 + rng.index(n), ordering).size() >= 1;
    }
    if (!partition_ok) broken.push_back("partition");

    // permutation validity under PMX and swap
    bool perm_ok = true;
    for (int t = 0; t < 1000; ++t, ++cases) {
      const std::size_t n = 2 + rng.index(30);
      Permutation a(n), b(n);
      std::iota(a.begin(), a.end(), 1);
      std::iota(b.begin(), b.end(), 1);
      rng.shuffle(a);
      rng.shuffle(b);
      const auto [c1, c2] = pmx_crossover(Individual(a), Individual(b), rng);
      const auto m = swap_mutation(Individual(a), rng);
      perm_ok &= sorted_permutation(c1.perm()) && sorted_permutation(c2.perm()) &&
                 sorted_permutation(m.perm());
    }
    if (!perm_ok) broken.push_back("permutation");

    // composite weights sum to one
    bool weights_ok = true;
    for (int k = 1; k <= 6; ++k) {
      const auto cf = bench::make_composite(k);
      for (int t = 0; t < 1000; ++t, ++cases) {
        RealVector x(10);
        for (auto& v : x) v = rng.uniform(-5, 5);
        const auto w = cf.weights(x);
        weights_ok &= std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) < 1e-12;
      }
    }
    if (!weights_ok) broken.push_back("weights");

    // f(optimum) = f_min for every registry entry
    bool optima_ok = true;
    for (const auto& r : bench::self_test()) {
      optima_ok &= r.passed;
      ++cases;
    }
    if (!optima_ok) broken.push_back("optima");

    // trace monotonicity over every benchmark run
    bool monotone = true;
    for (const auto& r : bench_result.records) {
      monotone &= std::ranges::is_sorted(r.trace, std::greater<>()) && r.trace.back() == r.final_best;
      ++cases;
    }
    if (!monotone) broken.push_back("monotone");

    // bit-equal reruns
    bool determinism = true;
    for (std::size_t i = 0; i < bench_result.records.size(); i += 19) {
      const auto& r = bench_result.records[i];
      const auto problem = bench::make_problem(bench::find(r.function_id));
      const auto again = harness::run_single(classical, harness::parse_algorithm(r.algorithm), problem, r.seed);
      determinism &= again.trace == r.trace;
      ++cases;
    }
    if (!determinism) broken.push_back("determinism");

    std::string detail = fmt::format("{} cases over partition, permutation, weights, optima, monotone, determinism", cases);
    for (const auto& b : broken) detail += "; broken: " + b;
    report(7, broken.empty(), detail);
  }

  {
    Rng rng(Rng::derive_seed(1, "wilcoxon", 0));
    bool ok = true;
    int cases = 0;
    double worst = 0.0;
    for (std::size_t na = 2; na <= 4; ++na) {
      for (std::size_t nb = 2; nb <= 4; ++nb) {
        for (int t = 0; t < 200; ++t, ++cases) {
          std::vector<double> a(na), b(nb);
          for (auto& v : a) v = rng.normal();
          for (auto& v : b) v = rng.normal() + rng.uniform(-2, 2);
          const double diff = std::abs(stats::wilcoxon_ranksum(a, b) - enumerated_p(a, b));
          worst = std::max(worst, diff);
          ok &= diff <= 1e-12;
        }
      }
    }
    const double example = stats::wilcoxon_ranksum(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6});
    ok &= std::abs(example - 0.1) <= 1e-12;
    report(8, ok, fmt::format("{} tie-free samples vs enumeration, max |dp| {:.2g}; [1,2,3] vs [4,5,6] p = {:.12g}",
                              cases, worst, example));
  }

  {
    const auto paper = gap::paper_instance();
    int small_hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto out = gap::solve_lpb(paper, gap::default_params(seed));
      small_hits += out.solution.total_cost == out.optimum_cost;
    }
    int large_hits = 0;
    const int large_seeds = 50;
    std::size_t generations = 0;
    for (std::uint64_t seed = 0; seed < large_seeds; ++seed) {
      Rng rng(Rng::derive_seed(seed, "instance", 10));
      const auto inst = gap::generate_instance(10, rng);
      const auto out = gap::solve_lpb(inst, gap::default_params(seed));
      if (out.generations_to_optimum) {
        ++large_hits;
        generations += *out.generations_to_optimum;
      }
    }
    bool exact_ok = true;
    int exact_cases = 0;
    Rng rng(Rng::derive_seed(1, "hungarian", 0));
    for (std::size_t n = 2; n <= 8; ++n) {
      for (int t = 0; t < 10; ++t, ++exact_cases) {
        const auto inst = gap::generate_instance(n, rng);
        exact_ok &= gap::solve_exact(inst).total_cost == brute_force_assignment(inst);
      }
    }
    exact_ok &= gap::solve_exact(paper).total_cost == brute_force_assignment(paper);
    const bool ok = small_hits >= 95 && large_hits * 10 >= large_seeds * 9 && exact_ok;
    report(9, ok,
           fmt::format("5x5 optimum {} in {}/100 seeds (>= 95); 10x10 optimum in {}/{} seeds (>= 90%), "
                       "mean {:.1f} generations; Hungarian = exhaustive on {} instances n <= 8: {}",
                       gap::solve_exact(paper).total_cost, small_hits, large_hits, large_seeds,
                       large_hits ? static_cast<double>(generations) / large_hits : 0.0, exact_cases + 1,
                       exact_ok ? "yes" : "no"));
  }

  {
    const auto root = fs::temp_directory_path() / "lpb-acceptance";
    fs::remove_all(root);
    const std::string args = "bench -q --algo lpb,ga,pso --functions TF1,TF7,TF9,FD16,CF2,CEC03 "
                             "--runs 3 --iterations 60 --seed 11 --out ";
    const int c1 = run_cli(args + "\"" + (root / "a").string() + "\"");
    const int c2 = run_cli(args + "\"" + (root / "b").string() + "\"");
    bool ok = c1 == 0 && c2 == 0;
    std::string detail = fmt::format("exit codes {} {}", c1, c2);
    if (ok) {
      for (const char* name : {"summary.csv", "runs.csv", "convergence.csv", "config.json"}) {
        const bool same = strip_pt(slurp(root / "a" / name)) == strip_pt(slurp(root / "b" / name));
        ok &= same;
        detail += fmt::format("; {} {}", name, same ? "identical" : "DIFFERENT");
      }
    }
    report(10, ok, detail);
    fs::remove_all(root);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fmt::print("{} of 10 criteria failed ({:.0f} s)\n", failures, seconds);
  return failures == 0 ? 0 : 1;
}
