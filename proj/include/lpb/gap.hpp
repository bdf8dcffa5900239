#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpb/core.hpp"
#include "lpb/optimizer.hpp"

// Court-case assignment: n cases onto n teams, one-to-one, minimizing hours.
namespace lpb::gap {

struct AssignmentInstance {
  std::size_t n = 0;
  std::vector<std::vector<double>> cost;  // cost[i][j]: case i+1 on team j+1

  /// Throws UsageError unless the matrix is n x n with finite entries >= 0.
  void validate() const;
};

/// perm[j] = i assigns case i to team j+1 (1-based case numbers).
struct AssignmentSolution {
  Permutation perm;
  double total_cost = 0.0;
};

/// The 5 x 5 example instance (rows are cases 1..5, columns teams 1..5).
AssignmentInstance paper_instance();

/// Sum over teams j of cost[perm[j]][j]. Throws UsageError for an invalid perm.
double decode_cost(std::span<const int> perm, const AssignmentInstance& inst);

/// Integer costs uniform in [10, 100]. n >= 2.
AssignmentInstance generate_instance(std::size_t n, Rng& rng);

/// Minimum-cost assignment by the Hungarian method, O(n^3).
AssignmentSolution solve_exact(const AssignmentInstance& inst);

/// Permutation-encoded problem for the optimizers.
ObjectiveProblem make_problem(const AssignmentInstance& inst);

struct LpbOutcome {
  AssignmentSolution solution;
  RunRecord record;
  double optimum_cost = 0.0;  // from solve_exact
  /// First iteration (1-based) whose best cost equals the optimum; empty if
  /// the run never reached it.
  std::optional<std::size_t> generations_to_optimum;
};

/// Defaults used for the assignment experiments: 80 individuals, 200 iterations.
LpbParams default_params(std::uint64_t seed = 0);

LpbOutcome solve_lpb(const AssignmentInstance& inst, const LpbParams& params);

// ---- files --------------------------------------------------------------------

/// First line n, then n lines of n whitespace-separated costs.
AssignmentInstance read_instance(const std::filesystem::path& file);
void write_instance(const std::filesystem::path& file, const AssignmentInstance& inst);

/// {"perm": [...], "total_cost": x, "generations": g or null, "pt_seconds": t, ...}
std::string solution_json(const LpbOutcome& outcome);

}  // namespace lpb::gap
