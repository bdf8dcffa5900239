#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "lpb/core.hpp"

namespace lpb {

enum class MutationKind {
  gaussian,  // clamped normal step, sigma = scale * (upper - lower)
  uniform,   // fresh uniform draw within the bounds
};

MutationKind parse_mutation_kind(std::string_view name);
std::string_view mutation_kind_name(MutationKind kind);

inline constexpr double kDefaultMutationScale = 0.05;

/// Offspring and mutant counts per generation. With the default population of
/// 80 this gives 112 crossover offspring and 16 mutants.
struct VariationConfig {
  std::size_t crossover_count = 0;
  std::size_t mutation_count = 0;
  double per_gene_mutation_prob = 0.0;  // 0 means 1/d

  static VariationConfig for_population(std::size_t population_size);
  void validate() const;
};

// 2 * round(0.7 * n)
std::size_t default_crossover_count(std::size_t population_size);
// round(0.2 * n)
std::size_t default_mutation_count(std::size_t population_size);

// ---- continuous -----------------------------------------------------------

/// Children swap tails after position `cut` (1 <= cut <= d-1): child1 takes
/// a[0..cut) and b[cut..d), child2 the mirror.
std::pair<Individual, Individual> one_point_crossover_at(const Individual& a,
                                                         const Individual& b, std::size_t cut);
std::pair<Individual, Individual> one_point_crossover(const Individual& a, const Individual& b,
                                                      Rng& rng);

/// Each gene is resampled uniformly within its bounds with probability
/// `per_gene_prob`; if none was picked one random gene is resampled.
Individual uniform_mutation(const Individual& parent, const ObjectiveProblem& problem,
                            double per_gene_prob, Rng& rng);

/// Same gene selection as uniform_mutation, but a selected gene moves by a
/// normal step of standard deviation scale * (upper - lower), clamped to bounds.
Individual gaussian_mutation(const Individual& parent, const ObjectiveProblem& problem,
                             double per_gene_prob, double scale, Rng& rng);

/// Dispatches on `kind`; `scale` only matters for the Gaussian step.
Individual mutate(const Individual& parent, const ObjectiveProblem& problem, MutationKind kind,
                  double per_gene_prob, double scale, Rng& rng);

// ---- permutations ---------------------------------------------------------

/// PMX over the 0-based gene range [lo, hi). child1 carries b's segment with the
/// rest filled from a through the segment mapping; child2 is the mirror.
std::pair<Individual, Individual> pmx_crossover_at(const Individual& a, const Individual& b,
                                                   std::size_t lo, std::size_t hi);
std::pair<Individual, Individual> pmx_crossover(const Individual& a, const Individual& b,
                                                Rng& rng);

Individual swap_mutation_at(const Individual& parent, std::size_t i, std::size_t j);
Individual swap_mutation(const Individual& parent, Rng& rng);

// ---- pairing --------------------------------------------------------------

/// offspring_count / 2 index pairs into a pool of `pool_size` parents, drawn
/// uniformly with the two members of a pair always distinct.
std::vector<std::pair<std::size_t, std::size_t>> pair_parents(std::size_t pool_size,
                                                              std::size_t offspring_count,
                                                              Rng& rng);

}  // namespace lpb
