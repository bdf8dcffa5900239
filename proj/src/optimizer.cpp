#include "lpb/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/core.h>

namespace lpb {

void LpbParams::validate() const {
  if (population_size < 4) {
    throw ConfigError(fmt::format("population size {} below the minimum of 4", population_size));
  }
  if (!(dp > 0.0 && dp <= 1.0)) throw ConfigError(fmt::format("dp {} outside (0, 1]", dp));
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
  VariationConfig{offspring(), mutants(), per_gene_mutation_prob}.validate();
  if (!(mutation_scale > 0.0)) {
    throw ConfigError(fmt::format("mutation scale {} must be positive", mutation_scale));
  }
}

std::size_t reference_group_size(std::size_t population, double dp) {
  const auto wanted = static_cast<std::size_t>(std::lround(dp * static_cast<double>(population)));
  return std::min(population, std::max<std::size_t>(2, wanted));
}

GroupSplit sample_and_split(std::span<const Individual> population, double dp,
                            const FitnessOrdering& ordering, Rng& rng) {
  if (population.size() < 2) throw UsageError("sample_and_split: population needs 2 members");
  for (const auto& ind : population) {
    if (!ind.evaluated) throw UsageError("sample_and_split: population is not evaluated");
  }
  const std::size_t sample_size = reference_group_size(population.size(), dp);

  // Partial Fisher-Yates: the first sample_size slots become the sample.
  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t k = 0; k < sample_size; ++k) {
    std::swap(idx[k], idx[k + rng.index(idx.size() - k)]);
  }
  idx.resize(sample_size);
  std::sort(idx.begin(), idx.end());
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ordering.better(population[a].objective, population[b].objective);
  });

  GroupSplit split;
  const std::size_t good_size = (sample_size + 1) / 2;
  for (std::size_t k = 0; k < sample_size; ++k) {
    (k < good_size ? split.good : split.bad).push_back(population[idx[k]]);
  }
  return split;
}

namespace {

double best_objective(const std::vector<Individual>& group, const FitnessOrdering& ordering) {
  double best = group.front().objective;
  for (const auto& ind : group) {
    if (ordering.better(ind.objective, best)) best = ind.objective;
  }
  return best;
}

}  // namespace

PartitionResult partition(std::span<const Individual> population, const GroupSplit& groups,
                          const FitnessOrdering& ordering) {
  if (groups.good.empty() || groups.bad.empty()) {
    throw UsageError("partition: good and bad groups must both be non-empty");
  }
  PartitionResult tiers;
  tiers.threshold_bad = best_objective(groups.bad, ordering);
  tiers.threshold_good = best_objective(groups.good, ordering);
  for (const auto& ind : population) {
    if (!ind.evaluated) throw UsageError("partition: population is not evaluated");
    if (!ordering.better(ind.objective, tiers.threshold_bad)) {
      tiers.bad.push_back(ind);
    } else if (!ordering.better(ind.objective, tiers.threshold_good)) {
      tiers.good.push_back(ind);
    } else {
      tiers.perfect.push_back(ind);
    }
  }
  return tiers;
}

std::vector<Individual> staged_select(const PartitionResult& tiers, std::size_t count,
                                      const FitnessOrdering& ordering) {
  if (tiers.size() < count) {
    throw UsageError(fmt::format("staged_select: {} individuals requested from {}", count,
                                 tiers.size()));
  }
  std::vector<Individual> selected;
  selected.reserve(count);
  for (const auto* tier : {&tiers.perfect, &tiers.good, &tiers.bad}) {
    if (selected.size() == count) break;
    for (std::size_t i : rank_order(*tier, ordering)) {
      if (selected.size() == count) break;
      selected.push_back((*tier)[i]);
    }
  }
  return selected;
}

std::vector<std::size_t> distinct_genotypes(std::span<const Individual> population) {
  auto less = [&](std::size_t a, std::size_t b) { return population[a].genes < population[b].genes; };
  std::set<std::size_t, decltype(less)> seen(less);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (seen.insert(i).second) keep.push_back(i);
  }
  return keep;
}

StepResult lpb_step(std::span<const Individual> population, const Individual& incumbent,
                    const LpbParams& params, Evaluator& evaluate, Rng& rng) {
  const ObjectiveProblem& problem = evaluate.problem();
  const FitnessOrdering ordering(problem.sense);
  const std::size_t n = params.population_size;
  if (population.size() < n) {
    throw UsageError(fmt::format("lpb_step: population of {} is smaller than N = {}",
                                 population.size(), n));
  }

  // Clones of one genotype would otherwise crowd the selection once a good
  // solution spreads; drop them while enough distinct learners remain.
  std::vector<Individual> distinct;
  std::span<const Individual> pool = population;
  if (const auto keep = distinct_genotypes(population); keep.size() >= n &&
                                                        keep.size() < population.size()) {
    distinct.reserve(keep.size());
    for (std::size_t i : keep) distinct.push_back(population[i]);
    pool = distinct;
  }

  const GroupSplit groups = sample_and_split(pool, params.dp, ordering, rng);
  const PartitionResult tiers = partition(pool, groups, ordering);
  std::vector<Individual> next = staged_select(tiers, n, ordering);

  const bool permutation = problem.encoding == Encoding::permutation;
  next.reserve(n + params.offspring() + params.mutants());

  for (auto [i, j] : pair_parents(n, params.offspring(), rng)) {
    auto [c1, c2] = permutation ? pmx_crossover(next[i], next[j], rng)
                                : one_point_crossover(next[i], next[j], rng);
    if (!permutation) {
      c1.real() = clamp_to_bounds(c1.real(), problem);
      c2.real() = clamp_to_bounds(c2.real(), problem);
    }
    next.push_back(std::move(c1));
    next.push_back(std::move(c2));
  }

  const double gene_prob = params.per_gene_mutation_prob > 0.0
                               ? params.per_gene_mutation_prob
                               : 1.0 / static_cast<double>(problem.dim);
  for (std::size_t k = 0; k < params.mutants(); ++k) {
    const Individual& parent = next[rng.index(n)];
    next.push_back(permutation ? swap_mutation(parent, rng)
                               : mutate(parent, problem, params.mutation, gene_prob,
                                        params.mutation_scale, rng));
  }

  evaluate(next);

  StepResult result{std::move(next), incumbent};
  for (const auto& ind : result.population) {
    if (!result.best.evaluated || ordering.better(ind, result.best)) result.best = ind;
  }
  return result;
}

RunRecord run_lpb(const ObjectiveProblem& problem, const LpbParams& params) {
  problem.validate();
  params.validate();
  const auto start = std::chrono::steady_clock::now();

  Rng rng(params.seed);
  Evaluator evaluate(problem, rng);
  std::vector<Individual> population = init_population(problem, params.population_size, rng);
  evaluate(population);

  const FitnessOrdering ordering(problem.sense);
  Individual best = population[rank_order(population, ordering).front()];

  RunRecord record;
  record.algorithm = "lpb";
  record.function_id = problem.name;
  record.seed = params.seed;
  record.trace.reserve(params.max_iterations);
  for (std::size_t it = 0; it < params.max_iterations; ++it) {
    StepResult step = lpb_step(population, best, params, evaluate, rng);
    population = std::move(step.population);
    best = std::move(step.best);
    record.trace.push_back(best.objective);
  }

  record.final_best = best.objective;
  record.best = std::move(best);
  record.evaluations = evaluate.count();
  record.pt_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace lpb
