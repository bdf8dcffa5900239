#include "lpb/baselines.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/core.h>

namespace lpb {

void GaParams::validate() const {
  if (population_size < 2) {
    throw ConfigError(fmt::format("GA population size {} below 2", population_size));
  }
  if (tournament_size == 0) throw ConfigError("tournament size must be positive");
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
  VariationConfig{offspring(), mutants(), per_gene_mutation_prob}.validate();
  if (!(mutation_scale > 0.0)) {
    throw ConfigError(fmt::format("mutation scale {} must be positive", mutation_scale));
  }
}

void PsoParams::validate() const {
  if (swarm_size == 0) throw ConfigError("swarm size must be positive");
  for (double w : {w_start, w_end}) {
    if (!(w >= 0.0 && w < 1.0)) throw ConfigError(fmt::format("inertia {} outside [0, 1)", w));
  }
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw ConfigError("PSO coefficients must be non-negative");
  if (!(velocity_clamp > 0.0)) throw ConfigError("velocity clamp must be positive");
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t tournament(std::span<const Individual> pop, std::size_t k,
                       const FitnessOrdering& ordering, Rng& rng) {
  std::size_t winner = rng.index(pop.size());
  for (std::size_t t = 1; t < k; ++t) {
    const std::size_t challenger = rng.index(pop.size());
    if (ordering.better(pop[challenger], pop[winner])) winner = challenger;
  }
  return winner;
}

}  // namespace

RunRecord run_ga(const ObjectiveProblem& problem, const GaParams& params) {
  problem.validate();
  params.validate();
  const auto start = Clock::now();

  Rng rng(params.seed);
  Evaluator evaluate(problem, rng);
  const FitnessOrdering ordering(problem.sense);
  const std::size_t n = params.population_size;
  const bool permutation = problem.encoding == Encoding::permutation;
  const double gene_prob = params.per_gene_mutation_prob > 0.0
                               ? params.per_gene_mutation_prob
                               : 1.0 / static_cast<double>(problem.dim);

  std::vector<Individual> population = init_population(problem, n, rng);
  evaluate(population);
  Individual best = population[rank_order(population, ordering).front()];

  RunRecord record;
  record.algorithm = "ga";
  record.function_id = problem.name;
  record.seed = params.seed;
  record.trace.reserve(params.max_iterations);

  auto pick = [&] { return tournament(population, params.tournament_size, ordering, rng); };

  for (std::size_t it = 0; it < params.max_iterations; ++it) {
    std::vector<Individual> children;
    children.reserve(params.offspring() + params.mutants());
    for (std::size_t k = 0; k < params.offspring() / 2; ++k) {
      const Individual& a = population[pick()];
      const Individual& b = population[pick()];
      auto [c1, c2] = permutation ? pmx_crossover(a, b, rng) : one_point_crossover(a, b, rng);
      if (!permutation) {
        c1.real() = clamp_to_bounds(c1.real(), problem);
        c2.real() = clamp_to_bounds(c2.real(), problem);
      }
      children.push_back(std::move(c1));
      children.push_back(std::move(c2));
    }
    for (std::size_t k = 0; k < params.mutants(); ++k) {
      const Individual& parent = population[pick()];
      children.push_back(permutation ? swap_mutation(parent, rng)
                                     : mutate(parent, problem, params.mutation, gene_prob,
                                              params.mutation_scale, rng));
    }
    evaluate(children);

    std::vector<Individual> next;
    next.reserve(n);
    next.push_back(population[rank_order(population, ordering).front()]);
    rng.shuffle(children);
    for (auto& child : children) {
      if (next.size() == n) break;
      next.push_back(std::move(child));
    }
    // Too few children for a full generation: top up with tournament winners.
    while (next.size() < n) next.push_back(population[pick()]);
    population = std::move(next);

    for (const auto& ind : population) {
      if (ordering.better(ind, best)) best = ind;
    }
    record.trace.push_back(best.objective);
  }

  record.final_best = best.objective;
  record.best = std::move(best);
  record.evaluations = evaluate.count();
  record.pt_seconds = seconds_since(start);
  return record;
}

RunRecord run_pso(const ObjectiveProblem& problem, const PsoParams& params) {
  problem.validate();
  params.validate();
  if (problem.encoding != Encoding::real) {
    throw ConfigError("PSO needs a real-encoded problem");
  }
  const auto start = Clock::now();

  Rng rng(params.seed);
  Evaluator evaluate(problem, rng);
  const FitnessOrdering ordering(problem.sense);
  const std::size_t d = problem.dim;

  RealVector vmax(d);
  for (std::size_t i = 0; i < d; ++i) {
    vmax[i] = params.velocity_clamp * (problem.upper[i] - problem.lower[i]);
  }

  std::vector<Individual> swarm = init_population(problem, params.swarm_size, rng);
  evaluate(swarm);
  std::vector<RealVector> velocity(swarm.size(), RealVector(d));
  for (auto& v : velocity) {
    for (std::size_t i = 0; i < d; ++i) v[i] = rng.uniform(-vmax[i], vmax[i]);
  }
  std::vector<Individual> personal = swarm;
  Individual global = swarm[rank_order(swarm, ordering).front()];

  RunRecord record;
  record.algorithm = "pso";
  record.function_id = problem.name;
  record.seed = params.seed;
  record.trace.reserve(params.max_iterations);

  const double steps = static_cast<double>(std::max<std::size_t>(1, params.max_iterations - 1));
  for (std::size_t it = 0; it < params.max_iterations; ++it) {
    const double w =
        params.w_start + (params.w_end - params.w_start) * static_cast<double>(it) / steps;
    for (std::size_t p = 0; p < swarm.size(); ++p) {
      RealVector& x = swarm[p].real();
      const RealVector& pb = personal[p].real();
      const RealVector& gb = global.real();
      for (std::size_t i = 0; i < d; ++i) {
        double v = w * velocity[p][i] + params.c1 * rng.uniform() * (pb[i] - x[i]) +
                   params.c2 * rng.uniform() * (gb[i] - x[i]);
        v = std::clamp(v, -vmax[i], vmax[i]);
        velocity[p][i] = v;
        x[i] = std::clamp(x[i] + v, problem.lower[i], problem.upper[i]);
      }
      swarm[p].invalidate();
    }
    evaluate(swarm);
    for (std::size_t p = 0; p < swarm.size(); ++p) {
      if (ordering.better(swarm[p], personal[p])) personal[p] = swarm[p];
      if (ordering.better(swarm[p], global)) global = swarm[p];
    }
    record.trace.push_back(global.objective);
  }

  record.final_best = global.objective;
  record.best = std::move(global);
  record.evaluations = evaluate.count();
  record.pt_seconds = seconds_since(start);
  return record;
}

}  // namespace lpb
