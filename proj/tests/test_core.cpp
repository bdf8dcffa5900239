#include <doctest.h>

#include <cmath>
#include <set>

#include "lpb/core.hpp"
#include "test_helpers.hpp"

using namespace lpb;
using lpb::testing::sphere_problem;

TEST_CASE("rng: same seed gives the same stream") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("rng: uniform and index stay in range") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform(-3.0, 2.0);
    CHECK(v >= -3.0);
    CHECK(v < 2.0);
    CHECK(rng.index(7) < 7u);
  }
  CHECK_THROWS_AS(rng.index(0), UsageError);
}

TEST_CASE("rng: normal draws have zero mean and unit variance") {
  Rng rng(11);
  const int n = 200000;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    ss += z * z;
  }
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  // Standard errors are about 0.0022 and 0.0032.
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.015);
}

TEST_CASE("rng: derived seeds depend on every argument") {
  const auto base = Rng::derive_seed(1, "TF1", 0);
  CHECK(base == Rng::derive_seed(1, "TF1", 0));
  CHECK(base != Rng::derive_seed(2, "TF1", 0));
  CHECK(base != Rng::derive_seed(1, "TF2", 0));
  CHECK(base != Rng::derive_seed(1, "TF1", 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(Rng::derive_seed(5, "TF9", r));
  CHECK(seen.size() == 1000);
}

TEST_CASE("is_permutation") {
  CHECK(is_permutation(std::vector<int>{3, 1, 2}));
  CHECK(is_permutation(std::vector<int>{}));
  CHECK_FALSE(is_permutation(std::vector<int>{1, 1, 2}));
  CHECK_FALSE(is_permutation(std::vector<int>{0, 1, 2}));
  CHECK_FALSE(is_permutation(std::vector<int>{1, 2, 4}));
}

TEST_CASE("individual accessors check the encoding") {
  Individual x(RealVector{1.0, 2.0});
  Individual p(Permutation{2, 1});
  CHECK(x.size() == 2);
  CHECK_FALSE(x.is_permutation());
  CHECK(p.is_permutation());
  CHECK_THROWS_AS(x.perm(), UsageError);
  CHECK_THROWS_AS(p.real(), UsageError);
  x.objective = 3.0;
  x.evaluated = true;
  x.invalidate();
  CHECK_FALSE(x.evaluated);
  CHECK(std::isnan(x.objective));
}

TEST_CASE("init_population") {
  SUBCASE("degenerate bounds are a configuration error") {
    auto p = sphere_problem(3, 0.0, 0.0);
    Rng rng(1);
    CHECK_THROWS_AS(init_population(p, 5, rng), ConfigError);
  }
  SUBCASE("inverted bounds are a configuration error") {
    auto p = sphere_problem(2);
    p.lower[1] = 2.0;
    Rng rng(1);
    CHECK_THROWS_AS(init_population(p, 5, rng), ConfigError);
  }
  SUBCASE("size zero is a usage error") {
    auto p = sphere_problem(2);
    Rng rng(1);
    CHECK_THROWS_AS(init_population(p, 0, rng), UsageError);
  }
  SUBCASE("real vectors lie in bounds and start unevaluated") {
    auto p = sphere_problem(2);
    Rng rng(3);
    const auto pop = init_population(p, 3, rng);
    REQUIRE(pop.size() == 3);
    for (const auto& ind : pop) {
      CHECK_FALSE(ind.evaluated);
      for (double v : ind.real()) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
      }
    }
  }
  SUBCASE("permutations are valid") {
    auto p = lpb::testing::displacement_problem(4);
    Rng rng(9);
    const auto pop = init_population(p, 100, rng);
    REQUIRE(pop.size() == 100);
    std::set<Permutation> distinct;
    for (const auto& ind : pop) {
      CHECK(lpb::testing::sorts_to_identity(ind.perm()));
      distinct.insert(ind.perm());
    }
    // 100 uniform draws cover about 23.7 of the 24 permutations on average.
    CHECK(distinct.size() >= 20);
  }
  SUBCASE("same seed gives bit-equal populations") {
    auto p = sphere_problem(5, -10, 10);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng a(seed), b(seed);
      const auto x = init_population(p, 8, a);
      const auto y = init_population(p, 8, b);
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].real() == y[i].real());
    }
  }
}

TEST_CASE("clamp_to_bounds") {
  const auto p = sphere_problem(2);
  CHECK(clamp_to_bounds(std::vector{5.0, -5.0}, p) == RealVector{1.0, -1.0});
  CHECK(clamp_to_bounds(std::vector{0.5, 0.5}, p) == RealVector{0.5, 0.5});
  CHECK(clamp_to_bounds(std::vector{1.0000001, 0.0}, p) == RealVector{1.0, 0.0});
  CHECK_THROWS_AS(clamp_to_bounds(std::vector{0.0}, p), UsageError);

  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const RealVector x{rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const auto once = clamp_to_bounds(x, p);
    CHECK(clamp_to_bounds(once, p) == once);
    for (std::size_t k = 0; k < 2; ++k) {
      if (x[k] >= -1.0 && x[k] <= 1.0) CHECK(once[k] == x[k]);
    }
  }
}

TEST_CASE("evaluator") {
  const auto p = sphere_problem(2, -5, 5);
  Rng rng(1);
  Evaluator evaluate(p, rng);

  std::vector<Individual> pop{Individual(RealVector{0.0, 0.0}), Individual(RealVector{1.0, 2.0})};
  evaluate(pop);
  CHECK(pop[0].objective == 0.0);
  CHECK(pop[1].objective == 5.0);
  CHECK(evaluate.count() == 2);
  CHECK(pop[1].real() == RealVector{1.0, 2.0});

  SUBCASE("already evaluated individuals are skipped") {
    pop[1].objective = 123.0;  // stale on purpose: proves no re-evaluation
    evaluate(pop);
    CHECK(pop[1].objective == 123.0);
    CHECK(evaluate.count() == 2);
  }
  SUBCASE("arity mismatch leaves the batch untouched") {
    std::vector<Individual> bad{Individual(RealVector{1.0, 1.0}), Individual(RealVector{1.0})};
    CHECK_THROWS_AS(evaluate(bad), UsageError);
    CHECK_FALSE(bad[0].evaluated);
    CHECK(evaluate.count() == 2);
  }
  SUBCASE("shift moves the optimum") {
    auto shifted = p;
    shifted.shift = RealVector{-3.0, 2.0};
    CHECK(shifted.value(Individual(RealVector{-3.0, 2.0}), rng) == 0.0);
    CHECK(shifted.value(Individual(RealVector{-2.0, 2.0}), rng) == 1.0);
  }
}

TEST_CASE("fitness ordering is a strict weak order with NaN last") {
  const FitnessOrdering minimize(Sense::minimize);
  const FitnessOrdering maximize(Sense::maximize);
  CHECK(minimize.better(1.0, 2.0));
  CHECK(maximize.better(2.0, 1.0));
  CHECK(minimize.better(1.0, std::nan("")));
  CHECK_FALSE(minimize.better(std::nan(""), 1.0));
  CHECK(minimize.equal(std::nan(""), std::nan("")));
  CHECK(minimize.worst() == INFINITY);
  CHECK(maximize.worst() == -INFINITY);

  Rng rng(2);
  std::vector<double> values;
  for (int i = 0; i < 40; ++i) values.push_back(std::floor(rng.uniform(0, 8)));
  values.push_back(std::nan(""));
  for (const auto& ord : {minimize, maximize}) {
    for (double a : values) {
      for (double b : values) {
        const int holds = int(ord.better(a, b)) + int(ord.better(b, a)) + int(ord.equal(a, b));
        CHECK(holds == 1);
      }
    }
  }
}

TEST_CASE("rank_order is stable best-first") {
  std::vector<Individual> pop;
  for (double v : {3.0, 1.0, 3.0, 2.0, 1.0}) pop.push_back(lpb::testing::with_objective(v));
  CHECK(rank_order(pop, FitnessOrdering(Sense::minimize)) == std::vector<std::size_t>{1, 4, 3, 0, 2});
  CHECK(rank_order(pop, FitnessOrdering(Sense::maximize)) == std::vector<std::size_t>{0, 2, 3, 1, 4});
}
