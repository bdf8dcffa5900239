#include <doctest.h>

#include <algorithm>
#include <functional>

#include "lpb/baselines.hpp"
#include "lpb/benchmarks.hpp"
#include "lpb/optimizer.hpp"
#include "test_helpers.hpp"

using namespace lpb;

TEST_CASE("parameter validation") {
  GaParams ga;
  CHECK_NOTHROW(ga.validate());
  CHECK(ga.offspring() == 112);
  CHECK(ga.mutants() == 16);
  ga.population_size = 1;
  CHECK_THROWS_AS(ga.validate(), ConfigError);
  ga = GaParams{};
  ga.tournament_size = 0;
  CHECK_THROWS_AS(ga.validate(), ConfigError);

  PsoParams pso;
  CHECK_NOTHROW(pso.validate());
  pso.w_start = 1.0;
  CHECK_THROWS_AS(pso.validate(), ConfigError);
  pso = PsoParams{};
  pso.c2 = -0.5;
  CHECK_THROWS_AS(pso.validate(), ConfigError);
  pso = PsoParams{};
  pso.velocity_clamp = 0.0;
  CHECK_THROWS_AS(pso.validate(), ConfigError);
}

TEST_CASE("PSO solves the sphere") {
  const auto problem = bench::make_problem(bench::find("TF1"));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    PsoParams params;
    params.seed = seed;
    const auto rec = run_pso(problem, params);
    CHECK(rec.final_best <= 1e-6);
    CHECK(rec.algorithm == "pso");
    CHECK(rec.trace.size() == 500);
    CHECK(rec.evaluations == 80 * 501);
  }
}

TEST_CASE("PSO with no inertia or attraction stays at its initial swarm") {
  const auto problem = lpb::testing::sphere_problem(4, -2, 2);
  PsoParams params;
  params.w_start = params.w_end = 0.0;
  params.c1 = params.c2 = 0.0;
  params.max_iterations = 50;
  params.seed = 8;
  const auto rec = run_pso(problem, params);
  CHECK(std::ranges::all_of(rec.trace, [&](double v) { return v == rec.trace.front(); }));

  // The frozen best is the best of the initial swarm.
  Rng rng(8);
  auto swarm = init_population(problem, params.swarm_size, rng);
  double best = INFINITY;
  for (const auto& p : swarm) best = std::min(best, problem.value(p, rng));
  CHECK(rec.final_best == best);
}

TEST_CASE("PSO rejects permutation problems") {
  CHECK_THROWS_AS(run_pso(lpb::testing::displacement_problem(5), PsoParams{}), ConfigError);
}

TEST_CASE("GA without variation stagnates at the initial best") {
  const auto problem = lpb::testing::sphere_problem(6, -5, 5);
  GaParams params;
  params.crossover_count = 0;
  params.mutation_count = 0;
  params.max_iterations = 40;
  params.seed = 12;
  const auto rec = run_ga(problem, params);
  CHECK(std::ranges::all_of(rec.trace, [&](double v) { return v == rec.trace.front(); }));

  Rng rng(12);
  auto pop = init_population(problem, params.population_size, rng);
  double best = INFINITY;
  for (const auto& p : pop) best = std::min(best, problem.value(p, rng));
  CHECK(rec.final_best == best);
}

TEST_CASE("baseline traces are monotone and reproducible") {
  const auto problem = bench::make_problem(bench::find("TF9"));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GaParams ga;
    ga.seed = seed;
    ga.max_iterations = 80;
    const auto a = run_ga(problem, ga);
    const auto b = run_ga(problem, ga);
    CHECK(a.trace == b.trace);
    CHECK(std::ranges::is_sorted(a.trace, std::greater<>()));
    CHECK(a.algorithm == "ga");

    PsoParams pso;
    pso.seed = seed;
    pso.max_iterations = 80;
    const auto c = run_pso(problem, pso);
    const auto d = run_pso(problem, pso);
    CHECK(c.trace == d.trace);
    CHECK(std::ranges::is_sorted(c.trace, std::greater<>()));
  }
}

TEST_CASE("LPB beats GA on Rastrigin at equal budget") {
  const auto problem = bench::make_problem(bench::find("TF9"));
  double lpb_sum = 0.0, ga_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    LpbParams lp;
    lp.seed = seed;
    lpb_sum += run_lpb(problem, lp).final_best;
    GaParams ga;
    ga.seed = seed;
    ga_sum += run_ga(problem, ga).final_best;
  }
  CHECK(lpb_sum < ga_sum);
}

TEST_CASE("GA in permutation mode") {
  const auto problem = lpb::testing::displacement_problem(7);
  GaParams params;
  params.population_size = 30;
  params.max_iterations = 150;
  params.seed = 5;
  const auto rec = run_ga(problem, params);
  CHECK(lpb::testing::sorts_to_identity(rec.best.perm()));
  CHECK(rec.final_best <= rec.trace.front());
  CHECK(rec.final_best == 0.0);
}
