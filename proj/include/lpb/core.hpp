#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lpb {

// Bad experiment setup: invalid bounds, unknown function ids, missing data files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (wrong arity, non-permutation input, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { minimize, maximize };
enum class Encoding { real, permutation };

using RealVector = std::vector<double>;
// 1-based values; a valid permutation of size n holds each of 1..n exactly once.
using Permutation = std::vector<int>;

bool is_permutation(std::span<const int> values);

/// Seeded random stream. The engine is std::mt19937_64; the mapping from raw
/// bits to doubles and indices is done here so draws are identical across
/// standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  /// Standard normal (Box-Muller, one value per call).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[index(i)]);
    }
  }

  /// Seed of an independent sub-stream: splitmix64 over (master, tag, index).
  /// Depends only on its arguments, so adding tags never perturbs other streams.
  static std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                   std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct Individual {
  std::variant<RealVector, Permutation> genes;
  double objective = std::numeric_limits<double>::quiet_NaN();
  bool evaluated = false;

  Individual() = default;
  explicit Individual(RealVector x) : genes(std::move(x)) {}
  explicit Individual(Permutation p) : genes(std::move(p)) {}

  bool is_permutation() const { return std::holds_alternative<Permutation>(genes); }
  std::size_t size() const;

  const RealVector& real() const;
  RealVector& real();
  const Permutation& perm() const;
  Permutation& perm();

  // Drops the cached objective after the genes were changed.
  void invalidate() {
    evaluated = false;
    objective = std::numeric_limits<double>::quiet_NaN();
  }
};

/// Box-bounded objective. For real encodings `real_objective` receives the
/// already shifted point x - shift; for permutations `perm_objective` gets the
/// raw permutation. The Rng argument is only consumed by stochastic objectives.
struct ObjectiveProblem {
  std::string name;
  Encoding encoding = Encoding::real;
  std::size_t dim = 0;
  RealVector lower;
  RealVector upper;
  std::optional<RealVector> shift;
  Sense sense = Sense::minimize;
  std::optional<double> known_f_min;
  std::function<double(std::span<const double>, Rng&)> real_objective;
  std::function<double(std::span<const int>)> perm_objective;

  /// Throws ConfigError when the problem cannot be optimized as described.
  void validate() const;

  /// Objective of raw genes (shift applied here). Throws UsageError on arity
  /// or encoding mismatch.
  double value(const Individual& ind, Rng& rng) const;
};

class FitnessOrdering {
 public:
  explicit FitnessOrdering(Sense sense = Sense::minimize) : sense_(sense) {}

  Sense sense() const { return sense_; }

  // NaN compares as the worst possible value so this stays a strict weak ordering.
  bool better(double a, double b) const;
  bool equal(double a, double b) const { return !better(a, b) && !better(b, a); }
  bool better(const Individual& a, const Individual& b) const {
    return better(a.objective, b.objective);
  }
  double worst() const;

 private:
  Sense sense_;
};

/// Indices of `pop` ordered best-first; ties keep their original index order.
std::vector<std::size_t> rank_order(std::span<const Individual> pop,
                                    const FitnessOrdering& ordering);

/// Counts objective evaluations for one run. Already evaluated individuals are
/// skipped and not counted.
class Evaluator {
 public:
  Evaluator(const ObjectiveProblem& problem, Rng& rng) : problem_(&problem), rng_(&rng) {}

  void operator()(std::span<Individual> pop);
  void operator()(Individual& ind);

  std::uint64_t count() const { return count_; }
  const ObjectiveProblem& problem() const { return *problem_; }

 private:
  const ObjectiveProblem* problem_;
  Rng* rng_;
  std::uint64_t count_ = 0;
};

std::vector<Individual> init_population(const ObjectiveProblem& problem, std::size_t size,
                                        Rng& rng);

RealVector clamp_to_bounds(std::span<const double> genes, const ObjectiveProblem& problem);

/// One optimization run, shared by LPB and the baselines.
struct RunRecord {
  std::string function_id;
  std::string algorithm;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  double final_best = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> trace;  // best-so-far objective after each iteration
  double pt_seconds = 0.0;
  std::uint64_t evaluations = 0;
  Individual best;
};

}  // namespace lpb
