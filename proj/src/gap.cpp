#include "lpb/gap.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

namespace lpb::gap {

void AssignmentInstance::validate() const {
  if (n == 0) throw UsageError("assignment instance is empty");
  if (cost.size() != n) throw UsageError("assignment matrix is not square");
  for (const auto& row : cost) {
    if (row.size() != n) throw UsageError("assignment matrix is not square");
    for (double c : row) {
      if (!std::isfinite(c) || c < 0.0) {
        throw UsageError(fmt::format("assignment cost {} is not finite and >= 0", c));
      }
    }
  }
}

AssignmentInstance paper_instance() {
  return {5,
          {{23, 21, 12, 30, 19},
           {30, 25, 13, 22, 21},
           {21, 23, 32, 40, 15},
           {12, 32, 40, 32, 29},
           {20, 15, 21, 27, 22}}};
}

double decode_cost(std::span<const int> perm, const AssignmentInstance& inst) {
  if (perm.size() != inst.n || !is_permutation(perm)) {
    throw UsageError(fmt::format("not a permutation of 1..{}", inst.n));
  }
  double total = 0.0;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    total += inst.cost[static_cast<std::size_t>(perm[j] - 1)][j];
  }
  return total;
}

AssignmentInstance generate_instance(std::size_t n, Rng& rng) {
  if (n < 2) throw UsageError(fmt::format("instance size {} below 2", n));
  AssignmentInstance inst{n, std::vector<std::vector<double>>(n, std::vector<double>(n))};
  for (auto& row : inst.cost) {
    for (double& c : row) c = static_cast<double>(10 + rng.index(91));
  }
  return inst;
}

AssignmentSolution solve_exact(const AssignmentInstance& inst) {
  inst.validate();
  const std::size_t n = inst.n;
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest augmenting paths with row/column potentials; index 0 is a
  // sentinel column, match[j] is the row currently holding column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = inst.cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentSolution sol;
  sol.perm.resize(n);
  for (std::size_t j = 1; j <= n; ++j) sol.perm[j - 1] = static_cast<int>(match[j]);
  sol.total_cost = decode_cost(sol.perm, inst);
  return sol;
}

ObjectiveProblem make_problem(const AssignmentInstance& inst) {
  inst.validate();
  ObjectiveProblem p;
  p.name = fmt::format("GAP{}", inst.n);
  p.encoding = Encoding::permutation;
  p.dim = inst.n;
  // Bounds are unused by permutation operators but must still be valid.
  p.lower.assign(inst.n, 1.0);
  p.upper.assign(inst.n, static_cast<double>(inst.n));
  p.perm_objective = [inst](std::span<const int> perm) { return decode_cost(perm, inst); };
  return p;
}

LpbParams default_params(std::uint64_t seed) {
  LpbParams params;
  params.max_iterations = 200;
  params.seed = seed;
  return params;
}

LpbOutcome solve_lpb(const AssignmentInstance& inst, const LpbParams& params) {
  const ObjectiveProblem problem = make_problem(inst);
  LpbOutcome out;
  out.optimum_cost = solve_exact(inst).total_cost;
  out.record = run_lpb(problem, params);
  out.solution.perm = out.record.best.perm();
  out.solution.total_cost = out.record.final_best;
  for (std::size_t k = 0; k < out.record.trace.size(); ++k) {
    if (out.record.trace[k] <= out.optimum_cost) {
      out.generations_to_optimum = k + 1;
      break;
    }
  }
  return out;
}

AssignmentInstance read_instance(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError(fmt::format("cannot open instance file {}", file.string()));
  long n = 0;
  if (!(in >> n) || n < 1) {
    throw ConfigError(fmt::format("{}: first value must be a positive size", file.string()));
  }
  const auto size = static_cast<std::size_t>(n);
  AssignmentInstance inst{size, std::vector<std::vector<double>>(size, std::vector<double>(size))};
  for (auto& row : inst.cost) {
    for (double& c : row) {
      if (!(in >> c)) {
        throw ConfigError(fmt::format("{}: expected {} x {} costs", file.string(), n, n));
      }
    }
  }
  std::string extra;
  if (in >> extra) throw ConfigError(fmt::format("{}: trailing data '{}'", file.string(), extra));
  try {
    inst.validate();
  } catch (const UsageError& e) {
    throw ConfigError(fmt::format("{}: {}", file.string(), e.what()));
  }
  return inst;
}

void write_instance(const std::filesystem::path& file, const AssignmentInstance& inst) {
  std::ofstream out(file);
  if (!out) throw IoError(fmt::format("cannot write instance file {}", file.string()));
  out << inst.n << '\n';
  for (const auto& row : inst.cost) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? " " : "") << fmt::format("{:.17g}", row[j]);
    }
    out << '\n';
  }
  if (!out) throw IoError(fmt::format("failed writing {}", file.string()));
}

std::string solution_json(const LpbOutcome& outcome) {
  nlohmann::ordered_json j;
  j["perm"] = outcome.solution.perm;
  j["total_cost"] = outcome.solution.total_cost;
  j["optimum_cost"] = outcome.optimum_cost;
  j["generations"] = outcome.generations_to_optimum
                         ? nlohmann::ordered_json(*outcome.generations_to_optimum)
                         : nlohmann::ordered_json(nullptr);
  j["iterations"] = outcome.record.trace.size();
  j["seed"] = outcome.record.seed;
  j["pt_seconds"] = outcome.record.pt_seconds;
  return j.dump(2) + "\n";
}

}  // namespace lpb::gap
