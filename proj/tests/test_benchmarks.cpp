#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <fmt/format.h>

#include "lpb/benchmarks.hpp"
#include "lpb/cec.hpp"
#include "lpb/composite.hpp"
#include "lpb/functions.hpp"

using namespace lpb;
namespace fs = std::filesystem;

namespace {

RealVector filled(std::size_t d, double v) { return RealVector(d, v); }

RealVector random_point(const bench::FunctionSpec& spec, Rng& rng) {
  RealVector x(spec.dim);
  for (std::size_t i = 0; i < spec.dim; ++i) x[i] = rng.uniform(spec.lower[i], spec.upper[i]);
  return x;
}

}  // namespace

TEST_CASE("registry lists the 35 functions in order") {
  std::vector<std::string> expected;
  for (int k = 1; k <= 13; ++k) expected.push_back("TF" + std::to_string(k));
  for (int k = 1; k <= 6; ++k) expected.push_back("CF" + std::to_string(k));
  for (int k = 14; k <= 19; ++k) expected.push_back("FD" + std::to_string(k));
  for (int k = 1; k <= 10; ++k) expected.push_back(fmt::format("CEC{:02}", k));

  std::vector<std::string> ids;
  for (const auto& spec : bench::registry()) {
    ids.push_back(spec.id);
    CHECK(spec.lower.size() == spec.dim);
    CHECK(spec.upper.size() == spec.dim);
    if (spec.shift) CHECK(spec.shift->size() == spec.dim);
  }
  CHECK(ids == expected);
}

TEST_CASE("lookup and id expansion") {
  CHECK(bench::find("tf9").id == "TF9");
  CHECK(bench::find("TF16").id == "FD16");
  CHECK_THROWS_AS(bench::find("TF42"), ConfigError);
  CHECK_THROWS_AS(bench::find(""), ConfigError);

  CHECK(bench::expand_ids("TF1..TF3, tf2,FD18") == std::vector<std::string>{"TF1", "TF2", "TF3", "FD18"});
  const auto classical = bench::expand_ids("classical");
  CHECK(classical.size() == 19);
  CHECK(classical.back() == "FD19");
  CHECK(bench::expand_ids("TF1..TF19") == classical);
  CHECK(bench::expand_ids("cec").size() == 10);
  CHECK(bench::expand_ids("all").size() == 35);
  CHECK_THROWS_AS(bench::expand_ids("TF3..TF1"), ConfigError);
  CHECK_THROWS_AS(bench::expand_ids("TF1..CF2"), ConfigError);
  CHECK_THROWS_AS(bench::expand_ids(" , "), ConfigError);
  CHECK_THROWS_AS(bench::expand_ids("TF1,nope"), ConfigError);
}

TEST_CASE("classical examples") {
  CHECK(bench::eval_classical("TF1", filled(10, -30.0)) == 0.0);
  CHECK(bench::eval_classical("TF9", filled(10, 0.0), nullptr, false) == 0.0);
  CHECK(std::abs(bench::eval_classical("TF10", filled(10, 0.0), nullptr, false)) < 1e-14);
  CHECK(bench::eval_classical("TF5", filled(10, 1.0), nullptr, false) == 0.0);
  CHECK(bench::eval_classical("TF1", RealVector{1, 2, 0, 0, 0, 0, 0, 0, 0, 0}, nullptr, false) == 5.0);

  // Schwefel: 418.9829 per dimension, forced times d = 10.
  const double tf8 = bench::eval_classical("TF8", filled(10, 420.9687), nullptr, false);
  CHECK(std::abs(tf8 - (-418.9829 * 10)) < 1e-2);

  CHECK_THROWS_AS(bench::eval_classical("TF1", filled(9, 0.0)), UsageError);
  CHECK_THROWS_AS(bench::eval_classical("TF1", filled(10, 101.0)), UsageError);
  CHECK_THROWS_AS(bench::eval_classical("CF1", filled(10, 0.0)), UsageError);
}

TEST_CASE("TF7 noise comes from the supplied stream") {
  const auto x = filled(10, 0.0);
  CHECK(bench::eval_classical("TF7", x, nullptr, false) == 0.0);
  Rng a(3), b(3);
  const double na = bench::eval_classical("TF7", x, &a, false);
  CHECK(na == bench::eval_classical("TF7", x, &b, false));
  CHECK(na >= 0.0);
  CHECK(na < 1.0);
}

TEST_CASE("fixed-dimension examples") {
  CHECK(std::abs(bench::eval_fixed_dimension("FD16", RealVector{0.0898, -0.7126}) + 1.0316) < 1e-3);
  CHECK(std::abs(bench::eval_fixed_dimension("FD17", RealVector{std::numbers::pi, 2.275}) - 0.39789) < 1e-4);
  CHECK(std::abs(bench::eval_fixed_dimension("FD18", RealVector{0.0, -1.0}) - 3.0) < 1e-12);
  CHECK(std::abs(bench::eval_fixed_dimension("FD14", RealVector{-32.0, -32.0}) - 0.998003838) < 1e-8);
  CHECK_THROWS_AS(bench::eval_fixed_dimension("FD15", RealVector{0.1, 0.1}), UsageError);
  CHECK_THROWS_AS(bench::eval_fixed_dimension("TF1", RealVector{0.1, 0.1}), UsageError);
}

TEST_CASE("every registry entry reaches f_min at its optimum") {
  for (const auto& r : bench::self_test()) {
    INFO(r.id, " value ", r.value, " f_min ", r.f_min);
    CHECK(r.passed);
    CHECK(std::abs(r.value - r.f_min) <= r.tolerance);
  }
  CHECK(bench::self_test().size() == 35);
}

TEST_CASE("optimum points are evaluated through the optimizer-facing problem") {
  for (const auto& spec : bench::registry()) {
    const auto problem = bench::make_problem(spec);
    const auto x = bench::optimum_point(spec);
    Rng noise(0);
    auto ind = Individual(x);
    double v = problem.value(ind, noise);
    if (spec.stochastic) v -= Rng(0).uniform();  // same draw the problem consumed
    INFO(spec.id);
    CHECK(std::abs(v - spec.f_min) <= spec.optimum_tolerance + 1e-12);
  }
}

TEST_CASE("shift equivariance for TF1..TF13") {
  Rng rng(17);
  for (int k = 1; k <= 13; ++k) {
    const auto& spec = bench::find("TF" + std::to_string(k));
    const auto plain = bench::make_problem(spec, {.apply_shift = false, .cec_data_dir = {}});
    for (int t = 0; t < 200; ++t) {
      RealVector s(spec.dim), x(spec.dim), moved(spec.dim);
      for (std::size_t i = 0; i < spec.dim; ++i) {
        // Dyadic values keep x + s - s exact.
        s[i] = std::round(rng.uniform(-40, 40) * 64) / 64;
        x[i] = std::round(rng.uniform(-1.2, 1.2) * 1024) / 1024;
        moved[i] = x[i] + s[i];
      }
      auto shifted = plain;
      shifted.shift = s;
      Rng n1(t), n2(t);
      INFO(spec.id);
      CHECK(shifted.value(Individual(moved), n1) == plain.value(Individual(x), n2));
    }
  }
}

TEST_CASE("composite weights") {
  Rng rng(23);
  for (int k = 1; k <= 6; ++k) {
    const auto cf = bench::make_composite(k);
    for (int t = 0; t < 1000; ++t) {
      RealVector x(10);
      for (auto& v : x) v = rng.uniform(-5, 5);
      double sum = 0.0;
      for (double w : cf.weights(x)) {
        CHECK(w >= 0.0);
        sum += w;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    // the kernel peaks at its own optimum
    for (std::size_t c = 0; c < cf.components().size(); ++c) {
      const auto w = cf.weights(cf.components()[c].optimum);
      CHECK(std::max_element(w.begin(), w.end()) - w.begin() == static_cast<std::ptrdiff_t>(c));
    }
    CHECK(std::abs(bench::eval_composite(fmt::format("CF{}", k), cf.components()[0].optimum)) < 1e-10);
  }
  const auto cf6 = bench::make_composite(6);
  for (std::size_t c = 0; c < 10; ++c) {
    CHECK(cf6.components()[c].sigma == doctest::Approx(0.1 * static_cast<double>(c + 1)));
    CHECK(cf6.components()[c].bias == 100.0 * static_cast<double>(c));
  }
  CHECK_THROWS_AS(bench::eval_composite("CF1", filled(10, 5.5)), UsageError);
}

TEST_CASE("all functions are finite on their ranges") {
  Rng rng(29);
  for (const auto& spec : bench::registry()) {
    const auto problem = bench::make_problem(spec);
    const int points = 100000;
    int bad = 0;
    for (int t = 0; t < points; ++t) {
      const double v = problem.value(Individual(random_point(spec, rng)), rng);
      if (!std::isfinite(v)) ++bad;
    }
    INFO(spec.id);
    CHECK(bad == 0);
  }
}

TEST_CASE("CEC functions") {
  SUBCASE("shift points of the rotated functions evaluate to 1") {
    for (int k = 4; k <= 10; ++k) {
      const auto id = fmt::format("CEC{:02}", k);
      const auto& spec = bench::find(id);
      const auto data = cec::load_data(bench::default_cec_data_dir(), k, spec.dim);
      INFO(id);
      CHECK(std::abs(bench::eval_cec(id, data.shift) - 1.0) < 1e-9);
    }
  }
  SUBCASE("inverse Hilbert against an explicit matrix product") {
    const std::size_t n = 4;
    auto norm_oracle = [&](const RealVector& x) {
      double h[4][4], z[4][4];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          h[i][j] = 1.0 / static_cast<double>(i + j + 1);
          z[i][j] = x[i * n + j];
        }
      }
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double w = 0.0;
          for (std::size_t k = 0; k < n; ++k) w += h[i][k] * z[k][j];
          total += std::abs(w - (i == j ? 1.0 : 0.0));
        }
      }
      return total + 1.0;
    };
    RealVector identity(16, 0.0);
    for (std::size_t i = 0; i < n; ++i) identity[i * n + i] = 1.0;
    // H - I: zero at (0,0); diagonal 1 - 1/(2i+1); every off-diagonal 1/(i+j+1).
    double hand = 1.0;
    for (std::size_t i = 1; i < n; ++i) hand += 1.0 - 1.0 / static_cast<double>(2 * i + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) hand += 1.0 / static_cast<double>(i + j + 1);
      }
    }
    CHECK(bench::eval_cec("CEC02", identity) == doctest::Approx(hand).epsilon(1e-14));
    CHECK(norm_oracle(identity) == doctest::Approx(hand).epsilon(1e-14));

    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
      RealVector x(16);
      for (auto& v : x) v = rng.uniform(-16384, 16384);
      CHECK(bench::eval_cec("CEC02", x) == doctest::Approx(norm_oracle(x)).epsilon(1e-12));
    }
    CHECK(bench::eval_cec("CEC02", cec::inverse_hilbert_optimum(16)) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("missing data is a configuration error naming the file") {
    const auto& spec = bench::find("CEC04");
    try {
      bench::eval_cec("CEC04", RealVector(spec.dim, 0.0), "/nonexistent/lpb-data");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("cec04_d10.txt") != std::string::npos);
    }
    CHECK_THROWS_AS(bench::make_problem(spec, {.apply_shift = true, .cec_data_dir = "/nonexistent/lpb-data"}), ConfigError);
  }
  SUBCASE("shipped data files regenerate from the documented seed") {
    for (int k = 4; k <= 10; ++k) {
      const auto shipped = cec::load_data(bench::default_cec_data_dir(), k, 10);
      const auto fresh = cec::generate_data(k, 10, cec::kDataSeed);
      INFO(k);
      CHECK(shipped.shift == fresh.shift);
      CHECK(shipped.rotation == fresh.rotation);
    }
  }
  SUBCASE("generated rotations are orthonormal") {
    const auto data = cec::generate_data(7, 10, 99);
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = 0; j < 10; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < 10; ++k) dot += data.rotation[i][k] * data.rotation[j][k];
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
  SUBCASE("data files round-trip through text") {
    const auto dir = fs::temp_directory_path() / "lpb-cec-roundtrip";
    fs::create_directories(dir);
    const auto data = cec::generate_data(5, 10, 7);
    cec::write_data(dir / cec::data_file_name(5, 10), data);
    const auto back = cec::load_data(dir, 5, 10);
    CHECK(back.shift == data.shift);
    CHECK(back.rotation == data.rotation);
    fs::remove_all(dir);
  }
}
