#include "lpb/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/core.h>

namespace lpb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

bool is_permutation(std::span<const int> values) {
  const auto n = values.size();
  std::vector<bool> seen(n + 1, false);
  for (int v : values) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rng

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw UsageError("Rng::index: empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = max() - (max() % bound);
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

double Rng::normal() {
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a(tag));
  return splitmix64(h ^ splitmix64(index));
}

// ---------------------------------------------------------------------------
// Individual

std::size_t Individual::size() const {
  return std::visit([](const auto& g) { return g.size(); }, genes);
}

const RealVector& Individual::real() const {
  if (const auto* x = std::get_if<RealVector>(&genes)) return *x;
  throw UsageError("individual holds a permutation, not a real vector");
}

RealVector& Individual::real() {
  if (auto* x = std::get_if<RealVector>(&genes)) return *x;
  throw UsageError("individual holds a permutation, not a real vector");
}

const Permutation& Individual::perm() const {
  if (const auto* p = std::get_if<Permutation>(&genes)) return *p;
  throw UsageError("individual holds a real vector, not a permutation");
}

Permutation& Individual::perm() {
  if (auto* p = std::get_if<Permutation>(&genes)) return *p;
  throw UsageError("individual holds a real vector, not a permutation");
}

// ---------------------------------------------------------------------------
// ObjectiveProblem

void ObjectiveProblem::validate() const {
  if (dim == 0) throw ConfigError(fmt::format("{}: dimension must be positive", name));
  if (encoding == Encoding::permutation) {
    if (!perm_objective) throw ConfigError(fmt::format("{}: no permutation objective", name));
    return;
  }
  if (!real_objective) throw ConfigError(fmt::format("{}: no objective function", name));
  if (lower.size() != dim || upper.size() != dim) {
    throw ConfigError(fmt::format("{}: bounds must have {} entries", name, dim));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(lower[i] < upper[i])) {
      throw ConfigError(fmt::format("{}: lower bound {} is not below upper bound {} at coordinate {}",
                                    name, lower[i], upper[i], i));
    }
  }
  if (shift && shift->size() != dim) {
    throw ConfigError(fmt::format("{}: shift vector must have {} entries", name, dim));
  }
}

double ObjectiveProblem::value(const Individual& ind, Rng& rng) const {
  if (ind.size() != dim) {
    throw UsageError(fmt::format("{}: expected {} genes, got {}", name, dim, ind.size()));
  }
  if (encoding == Encoding::permutation) {
    return perm_objective(ind.perm());
  }
  const RealVector& x = ind.real();
  if (!shift) return real_objective(x, rng);
  RealVector moved(dim);
  for (std::size_t i = 0; i < dim; ++i) moved[i] = x[i] - (*shift)[i];
  return real_objective(moved, rng);
}

// ---------------------------------------------------------------------------
// Ordering

bool FitnessOrdering::better(double a, double b) const {
  if (std::isnan(a)) return false;
  if (std::isnan(b)) return true;
  return sense_ == Sense::minimize ? a < b : a > b;
}

double FitnessOrdering::worst() const {
  return sense_ == Sense::minimize ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
}

std::vector<std::size_t> rank_order(std::span<const Individual> pop,
                                    const FitnessOrdering& ordering) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ordering.better(pop[a].objective, pop[b].objective);
  });
  return order;
}

// ---------------------------------------------------------------------------
// Evaluation and initialization

void Evaluator::operator()(Individual& ind) {
  if (ind.evaluated) return;
  ind.objective = problem_->value(ind, *rng_);
  ind.evaluated = true;
  ++count_;
}

void Evaluator::operator()(std::span<Individual> pop) {
  // Arity is checked for the whole batch first so a bad call leaves pop untouched.
  for (const auto& ind : pop) {
    if (ind.size() != problem_->dim) {
      throw UsageError(fmt::format("{}: expected {} genes, got {}", problem_->name,
                                   problem_->dim, ind.size()));
    }
  }
  for (auto& ind : pop) (*this)(ind);
}

std::vector<Individual> init_population(const ObjectiveProblem& problem, std::size_t size,
                                        Rng& rng) {
  problem.validate();
  if (size == 0) throw UsageError("init_population: size must be at least 1");
  std::vector<Individual> pop;
  pop.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    if (problem.encoding == Encoding::permutation) {
      Permutation p(problem.dim);
      std::iota(p.begin(), p.end(), 1);
      rng.shuffle(p);
      pop.emplace_back(std::move(p));
    } else {
      RealVector x(problem.dim);
      for (std::size_t i = 0; i < problem.dim; ++i) {
        x[i] = rng.uniform(problem.lower[i], problem.upper[i]);
      }
      pop.emplace_back(std::move(x));
    }
  }
  return pop;
}

RealVector clamp_to_bounds(std::span<const double> genes, const ObjectiveProblem& problem) {
  if (genes.size() != problem.dim) {
    throw UsageError(fmt::format("clamp_to_bounds: expected {} genes, got {}", problem.dim,
                                 genes.size()));
  }
  RealVector out(genes.begin(), genes.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::min(problem.upper[i], std::max(problem.lower[i], out[i]));
  }
  return out;
}

}  // namespace lpb
