#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "lpb/core.hpp"
#include "lpb/operators.hpp"

// Reference optimizers run under the same budget shape as LPB.
namespace lpb {

/// Generational GA: binary tournaments pick parents, the variation counts
/// match LPB's, and the next generation is the elite plus N-1 children drawn
/// uniformly from the offspring and mutants.
struct GaParams {
  std::size_t population_size = 80;
  std::optional<std::size_t> crossover_count;
  std::optional<std::size_t> mutation_count;
  double per_gene_mutation_prob = 0.0;  // 0 means 1/d
  MutationKind mutation = MutationKind::gaussian;
  double mutation_scale = kDefaultMutationScale;
  std::size_t tournament_size = 2;
  std::size_t max_iterations = 500;
  std::uint64_t seed = 0;

  std::size_t offspring() const {
    return crossover_count.value_or(default_crossover_count(population_size));
  }
  std::size_t mutants() const {
    return mutation_count.value_or(default_mutation_count(population_size));
  }
  void validate() const;
};

/// Global-best PSO with inertia decaying linearly from w_start to w_end.
struct PsoParams {
  std::size_t swarm_size = 80;
  double w_start = 0.9;
  double w_end = 0.4;
  double c1 = 2.0;
  double c2 = 2.0;
  double velocity_clamp = 0.1;  // fraction of each coordinate's range
  std::size_t max_iterations = 500;
  std::uint64_t seed = 0;

  void validate() const;
};

/// With zero variation counts the population never changes and the trace
/// stays at the initial best.
RunRecord run_ga(const ObjectiveProblem& problem, const GaParams& params);

/// Real-encoded problems only.
RunRecord run_pso(const ObjectiveProblem& problem, const PsoParams& params);

}  // namespace lpb
