#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lpb/core.hpp"
#include "lpb/operators.hpp"

namespace lpb {

/// Learner Performance Based Behavior optimizer settings. Counts left unset
/// follow the population-size formulas in operators.hpp.
struct LpbParams {
  std::size_t population_size = 80;
  double dp = 0.5;
  std::optional<std::size_t> crossover_count;
  std::optional<std::size_t> mutation_count;
  double per_gene_mutation_prob = 0.0;  // 0 means 1/d
  MutationKind mutation = MutationKind::gaussian;
  double mutation_scale = kDefaultMutationScale;
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

/// The reference group O drawn from M, sorted best-first and cut at the median.
struct GroupSplit {
  std::vector<Individual> good;
  std::vector<Individual> bad;
};

/// Three-tier split of M. Thresholds are objective values: `threshold_bad` is
/// the best objective of the bad group, `threshold_good` that of the good group.
struct PartitionResult {
  std::vector<Individual> bad;
  std::vector<Individual> good;
  std::vector<Individual> perfect;
  double threshold_bad = 0.0;
  double threshold_good = 0.0;

  std::size_t size() const { return bad.size() + good.size() + perfect.size(); }
};

/// |O| = max(2, round(dp * |M|)) individuals sampled without replacement.
std::size_t reference_group_size(std::size_t population, double dp);

GroupSplit sample_and_split(std::span<const Individual> population, double dp,
                            const FitnessOrdering& ordering, Rng& rng);

PartitionResult partition(std::span<const Individual> population, const GroupSplit& groups,
                          const FitnessOrdering& ordering);

/// N learners, perfect tier first, then good, then bad; best-first inside a tier.
std::vector<Individual> staged_select(const PartitionResult& tiers, std::size_t count,
                                      const FitnessOrdering& ordering);

/// Indices of the first occurrence of each distinct genotype, in order.
std::vector<std::size_t> distinct_genotypes(std::span<const Individual> population);

struct StepResult {
  std::vector<Individual> population;  // selected + offspring + mutants, all evaluated
  Individual best;                     // best of the new population and the incumbent
};

/// One generation. Duplicate genotypes are set aside before the partition as
/// long as at least N distinct ones remain. `incumbent` is the best individual
/// seen so far (may be unevaluated on the first call, then it is ignored).
StepResult lpb_step(std::span<const Individual> population, const Individual& incumbent,
                    const LpbParams& params, Evaluator& evaluate, Rng& rng);

/// Full run. Permutation problems are routed through PMX and swap mutation.
RunRecord run_lpb(const ObjectiveProblem& problem, const LpbParams& params);

}  // namespace lpb
