#include "lpb/operators.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace lpb {

std::size_t default_crossover_count(std::size_t population_size) {
  return 2 * static_cast<std::size_t>(std::lround(0.7 * static_cast<double>(population_size)));
}

std::size_t default_mutation_count(std::size_t population_size) {
  return static_cast<std::size_t>(std::lround(0.2 * static_cast<double>(population_size)));
}

VariationConfig VariationConfig::for_population(std::size_t population_size) {
  return {default_crossover_count(population_size), default_mutation_count(population_size), 0.0};
}

void VariationConfig::validate() const {
  if (crossover_count % 2 != 0) {
    throw ConfigError(fmt::format("crossover count {} must be even", crossover_count));
  }
  if (per_gene_mutation_prob < 0.0 || per_gene_mutation_prob > 1.0) {
    throw ConfigError(fmt::format("per-gene mutation probability {} outside (0, 1]",
                                  per_gene_mutation_prob));
  }
}

namespace {

void require_same_real_shape(const Individual& a, const Individual& b) {
  if (a.real().size() != b.real().size()) {
    throw UsageError("crossover parents differ in dimension");
  }
  if (a.real().size() < 2) throw UsageError("one-point crossover needs at least 2 genes");
}

void require_permutation(const Individual& ind, std::size_t min_size) {
  const auto& p = ind.perm();
  if (!is_permutation(p)) throw UsageError("genes are not a permutation of 1..n");
  if (p.size() < min_size) {
    throw UsageError(fmt::format("permutation operator needs n >= {}", min_size));
  }
}

}  // namespace

std::pair<Individual, Individual> one_point_crossover_at(const Individual& a,
                                                         const Individual& b, std::size_t cut) {
  require_same_real_shape(a, b);
  const auto& x = a.real();
  const auto& y = b.real();
  if (cut < 1 || cut >= x.size()) {
    throw UsageError(fmt::format("cut point {} outside 1..{}", cut, x.size() - 1));
  }
  RealVector c1(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(cut));
  RealVector c2(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(cut));
  c1.insert(c1.end(), y.begin() + static_cast<std::ptrdiff_t>(cut), y.end());
  c2.insert(c2.end(), x.begin() + static_cast<std::ptrdiff_t>(cut), x.end());
  return {Individual(std::move(c1)), Individual(std::move(c2))};
}

std::pair<Individual, Individual> one_point_crossover(const Individual& a, const Individual& b,
                                                      Rng& rng) {
  require_same_real_shape(a, b);
  const std::size_t cut = 1 + rng.index(a.real().size() - 1);
  return one_point_crossover_at(a, b, cut);
}

namespace {

// Applies `change` to each gene with probability per_gene_prob, or to one
// random gene when the coin flips picked none.
template <typename Change>
Individual mutate_genes(const Individual& parent, const ObjectiveProblem& problem,
                        double per_gene_prob, Rng& rng, Change change) {
  if (!(per_gene_prob > 0.0 && per_gene_prob <= 1.0)) {
    throw ConfigError(fmt::format("per-gene mutation probability {} outside (0, 1]",
                                  per_gene_prob));
  }
  RealVector x = parent.real();
  if (x.size() != problem.dim) throw UsageError("mutation parent does not match problem");
  bool changed = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.uniform() < per_gene_prob) {
      x[i] = change(i, x[i]);
      changed = true;
    }
  }
  if (!changed) {
    const std::size_t i = rng.index(x.size());
    x[i] = change(i, x[i]);
  }
  return Individual(std::move(x));
}

}  // namespace

MutationKind parse_mutation_kind(std::string_view name) {
  if (name == "gaussian") return MutationKind::gaussian;
  if (name == "uniform") return MutationKind::uniform;
  throw ConfigError(fmt::format("unknown mutation kind '{}' (gaussian, uniform)", name));
}

std::string_view mutation_kind_name(MutationKind kind) {
  return kind == MutationKind::gaussian ? "gaussian" : "uniform";
}

Individual uniform_mutation(const Individual& parent, const ObjectiveProblem& problem,
                            double per_gene_prob, Rng& rng) {
  return mutate_genes(parent, problem, per_gene_prob, rng, [&](std::size_t i, double) {
    return rng.uniform(problem.lower[i], problem.upper[i]);
  });
}

Individual gaussian_mutation(const Individual& parent, const ObjectiveProblem& problem,
                             double per_gene_prob, double scale, Rng& rng) {
  if (!(scale > 0.0)) throw ConfigError(fmt::format("mutation scale {} must be positive", scale));
  return mutate_genes(parent, problem, per_gene_prob, rng, [&](std::size_t i, double v) {
    const double lo = problem.lower[i];
    const double hi = problem.upper[i];
    return std::clamp(v + scale * (hi - lo) * rng.normal(), lo, hi);
  });
}

Individual mutate(const Individual& parent, const ObjectiveProblem& problem, MutationKind kind,
                  double per_gene_prob, double scale, Rng& rng) {
  return kind == MutationKind::gaussian
             ? gaussian_mutation(parent, problem, per_gene_prob, scale, rng)
             : uniform_mutation(parent, problem, per_gene_prob, rng);
}

std::pair<Individual, Individual> pmx_crossover_at(const Individual& a, const Individual& b,
                                                   std::size_t lo, std::size_t hi) {
  require_permutation(a, 2);
  require_permutation(b, 2);
  const auto& p = a.perm();
  const auto& q = b.perm();
  const std::size_t n = p.size();
  if (q.size() != n) throw UsageError("PMX parents differ in length");
  if (lo >= hi || hi > n) throw UsageError(fmt::format("PMX segment [{}, {}) invalid", lo, hi));

  // child takes `donor`'s segment; outside it, values come from `base`, chased
  // through the segment mapping donor[k] -> base[k] until they leave the segment.
  auto build = [&](const Permutation& base, const Permutation& donor) {
    std::vector<std::size_t> pos_in_donor(n + 1, n);
    for (std::size_t k = lo; k < hi; ++k) pos_in_donor[donor[k]] = k;
    Permutation child(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k >= lo && k < hi) {
        child[k] = donor[k];
        continue;
      }
      int v = base[k];
      while (pos_in_donor[v] != n) v = base[pos_in_donor[v]];
      child[k] = v;
    }
    return child;
  };
  return {Individual(build(p, q)), Individual(build(q, p))};
}

std::pair<Individual, Individual> pmx_crossover(const Individual& a, const Individual& b,
                                                Rng& rng) {
  require_permutation(a, 2);
  const std::size_t n = a.perm().size();
  std::size_t lo = rng.index(n);
  std::size_t hi = rng.index(n);
  if (lo > hi) std::swap(lo, hi);
  return pmx_crossover_at(a, b, lo, hi + 1);
}

Individual swap_mutation_at(const Individual& parent, std::size_t i, std::size_t j) {
  require_permutation(parent, 2);
  Permutation p = parent.perm();
  if (i >= p.size() || j >= p.size()) throw UsageError("swap position out of range");
  std::swap(p[i], p[j]);
  return Individual(std::move(p));
}

Individual swap_mutation(const Individual& parent, Rng& rng) {
  require_permutation(parent, 2);
  const std::size_t n = parent.perm().size();
  const std::size_t i = rng.index(n);
  std::size_t j = rng.index(n - 1);
  if (j >= i) ++j;
  return swap_mutation_at(parent, i, j);
}

std::vector<std::pair<std::size_t, std::size_t>> pair_parents(std::size_t pool_size,
                                                              std::size_t offspring_count,
                                                              Rng& rng) {
  if (pool_size < 2) throw UsageError("pair_parents: need at least 2 parents");
  if (offspring_count % 2 != 0) throw UsageError("pair_parents: offspring count must be even");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(offspring_count / 2);
  for (std::size_t k = 0; k < offspring_count / 2; ++k) {
    const std::size_t first = rng.index(pool_size);
    std::size_t second = rng.index(pool_size - 1);
    if (second >= first) ++second;
    pairs.emplace_back(first, second);
  }
  return pairs;
}

}  // namespace lpb
