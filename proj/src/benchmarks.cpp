#include "lpb/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>

#include <fmt/core.h>

#include "lpb/cec.hpp"
#include "lpb/composite.hpp"
#include "lpb/functions.hpp"

#ifndef LPB_SOURCE_DATA_DIR
#define LPB_SOURCE_DATA_DIR "data"
#endif

namespace lpb::bench {

namespace {

// Minimizer of -x sin(sqrt|x|) on [0, 500].
constexpr double kSchwefelArgmin = 420.96874635998202731;
constexpr double kSchwefelMin = -418.98288727243370627;

using Formula = double (*)(std::span<const double>);

const CompositeFunction& composite(int index);

RealVector filled(std::size_t n, double v) { return RealVector(n, v); }

FunctionSpec classical(std::string id, std::string name, Family family, double lo, double hi,
                       std::optional<double> shift, double f_min, RealVector optimum) {
  constexpr std::size_t d = 10;
  FunctionSpec s{std::move(id), std::move(name), family, d, filled(d, lo), filled(d, hi),
                 std::nullopt, f_min, false, std::move(optimum)};
  if (shift) s.shift = filled(d, *shift);
  return s;
}

std::vector<FunctionSpec> build_registry() {
  constexpr std::size_t d = 10;
  std::vector<FunctionSpec> r;
  const auto zero = filled(d, 0.0);
  const auto U = Family::unimodal;
  const auto M = Family::multimodal;

  r.push_back(classical("TF1", "Sphere", U, -100, 100, -30, 0, zero));
  r.push_back(classical("TF2", "Schwefel 2.22", U, -10, 10, -3, 0, zero));
  r.push_back(classical("TF3", "Schwefel 1.2", U, -100, 100, -30, 0, zero));
  r.push_back(classical("TF4", "Schwefel 2.21", U, -100, 100, -30, 0, zero));
  r.push_back(classical("TF5", "Rosenbrock", U, -30, 30, -15, 0, filled(d, 1.0)));
  r.push_back(classical("TF6", "Step", U, -100, 100, -750, 0, zero));
  r.push_back(classical("TF7", "Quartic with noise", U, -1.28, 1.28, -0.25, 0, zero));
  r.back().stochastic = true;
  r.push_back(classical("TF8", "Schwefel", M, -500, 500, -300, kSchwefelMin * d,
                        filled(d, kSchwefelArgmin)));
  r.push_back(classical("TF9", "Rastrigin", M, -5.12, 5.12, -2, 0, zero));
  r.push_back(classical("TF10", "Ackley", M, -32, 32, std::nullopt, 0, zero));
  r.push_back(classical("TF11", "Griewank", M, -600, 600, -400, 0, zero));
  r.push_back(classical("TF12", "Penalized 1", M, -50, 50, 30, 0, filled(d, -1.0)));
  r.back().shift->front() = -30.0;
  r.push_back(classical("TF13", "Penalized 2", M, -50, 50, -100, 0, filled(d, 1.0)));

  const std::array<const char*, 6> composite_names{
      "Composite sphere",      "Composite Griewank",         "Composite Griewank (lambda 1)",
      "Composite mixed",       "Composite mixed (reordered)", "Composite mixed (graded sigma)"};
  for (int k = 1; k <= 6; ++k) {
    const CompositeFunction& cf = composite(k);
    r.push_back({fmt::format("CF{}", k), composite_names[static_cast<std::size_t>(k - 1)],
                 Family::composite, d, filled(d, -5), filled(d, 5), std::nullopt, 0.0, false,
                 cf.components().front().optimum});
  }

  const auto F = Family::fixed_dimension;
  r.push_back({"FD14", "Shekel's foxholes", F, 2, filled(2, -65.536), filled(2, 65.536),
               std::nullopt, 0.99800383779445, false,
               {-31.97833495762107, -31.978328496668112}});
  r.push_back({"FD15", "Kowalik", F, 4, filled(4, -5), filled(4, 5), std::nullopt,
               0.0003074859878056051, false,
               {0.19283345304274813, 0.19083624027597035, 0.12311729907598003,
                0.13576599033984466}});
  r.push_back({"FD16", "Six-hump camel back", F, 2, filled(2, -5), filled(2, 5), std::nullopt,
               -1.0316284534898776, false, {0.08984201652927098, -0.7126564013807202}});
  r.push_back({"FD17", "Branin", F, 2, {-5, 0}, {10, 15}, std::nullopt,
               5.0 / (4.0 * std::numbers::pi), false, {std::numbers::pi, 2.275}});
  r.push_back({"FD18", "Goldstein-Price", F, 2, filled(2, -2), filled(2, 2), std::nullopt, 3.0,
               false, {0.0, -1.0}});
  r.push_back({"FD19", "Hartmann 3", F, 3, filled(3, 0), filled(3, 1), std::nullopt,
               -3.8627821478207554, false,
               {0.11461434203082951, 0.5556488507905384, 0.8525469538460251}});

  const auto C = Family::cec;
  r.push_back({"CEC01", "Storn's Chebyshev polynomial fitting", C, 9, filled(9, -8192),
               filled(9, 8192), std::nullopt, 1.0, false, cec::chebyshev_optimum(9)});
  r.push_back({"CEC02", "Inverse Hilbert matrix", C, 16, filled(16, -16384), filled(16, 16384),
               std::nullopt, 1.0, false, cec::inverse_hilbert_optimum(16)});
  r.push_back({"CEC03", "Lennard-Jones minimum energy cluster", C, 18, filled(18, -4),
               filled(18, 4), std::nullopt, 1.0, false, cec::lennard_jones_optimum()});
  const std::array<const char*, 7> cec_names{"Rastrigin",           "Griewank",
                                             "Weierstrass",         "Modified Schwefel",
                                             "Expanded Schaffer F6", "Happy cat",
                                             "Ackley"};
  for (int k = 4; k <= 10; ++k) {
    r.push_back({fmt::format("CEC{:02}", k),
                 fmt::format("Shifted rotated {}", cec_names[static_cast<std::size_t>(k - 4)]),
                 C, d, filled(d, -100), filled(d, 100), std::nullopt, 1.0, false, {}, 1e-9});
  }
  return r;
}

const CompositeFunction& composite(int index) {
  static const std::array<CompositeFunction, 6> all{make_composite(1), make_composite(2),
                                                    make_composite(3), make_composite(4),
                                                    make_composite(5), make_composite(6)};
  return all.at(static_cast<std::size_t>(index - 1));
}

Formula classical_formula(std::string_view id) {
  static const std::array<std::pair<std::string_view, Formula>, 13> table{{
      {"TF1", fn::sphere},
      {"TF2", fn::schwefel_2_22},
      {"TF3", fn::schwefel_1_2},
      {"TF4", fn::schwefel_2_21},
      {"TF5", fn::rosenbrock},
      {"TF6", fn::step},
      {"TF7", fn::quartic},
      {"TF8", fn::schwefel},
      {"TF9", fn::rastrigin},
      {"TF10", fn::ackley},
      {"TF11", fn::griewank},
      {"TF12", fn::penalized1},
      {"TF13", fn::penalized2},
  }};
  for (const auto& [key, f] : table) {
    if (key == id) return f;
  }
  throw ConfigError(fmt::format("{} is not a classical function", id));
}

Formula fixed_formula(std::string_view id) {
  static const std::array<std::pair<std::string_view, Formula>, 6> table{{
      {"FD14", fn::shekel_foxholes},
      {"FD15", fn::kowalik},
      {"FD16", fn::six_hump_camel},
      {"FD17", fn::branin},
      {"FD18", fn::goldstein_price},
      {"FD19", fn::hartmann3},
  }};
  for (const auto& [key, f] : table) {
    if (key == id) return f;
  }
  throw ConfigError(fmt::format("{} is not a fixed-dimension function", id));
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "tf14" -> ("TF", 14); nullopt when the token is not prefix + number.
std::optional<std::pair<std::string, int>> split_id(std::string_view id) {
  const std::string u = upper(trim(id));
  const auto digit = u.find_first_of("0123456789");
  if (digit == 0 || digit == std::string::npos) return std::nullopt;
  int number = 0;
  const char* begin = u.data() + digit;
  const char* end = u.data() + u.size();
  auto [ptr, ec] = std::from_chars(begin, end, number);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return std::pair{u.substr(0, digit), number};
}

std::string canonical_id(const std::string& prefix, int number) {
  if (prefix == "CEC") return fmt::format("CEC{:02}", number);
  if (prefix == "TF" && number >= 14) return fmt::format("FD{}", number);
  return fmt::format("{}{}", prefix, number);
}

void check_point(const FunctionSpec& spec, std::span<const double> x) {
  if (x.size() != spec.dim) {
    throw UsageError(fmt::format("{}: expected {} coordinates, got {}", spec.id, spec.dim,
                                 x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= spec.lower[i] && x[i] <= spec.upper[i])) {
      throw UsageError(fmt::format("{}: coordinate {} = {} outside [{}, {}]", spec.id, i, x[i],
                                   spec.lower[i], spec.upper[i]));
    }
  }
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::unimodal: return "unimodal";
    case Family::multimodal: return "multimodal";
    case Family::composite: return "composite";
    case Family::fixed_dimension: return "fixed-dimension";
    case Family::cec: return "cec2019";
  }
  return "unknown";
}

bool FunctionSpec::needs_data() const { return cec_number() >= 4; }

int FunctionSpec::cec_number() const {
  if (family != Family::cec) return 0;
  return std::atoi(id.c_str() + 3);
}

const std::vector<FunctionSpec>& registry() {
  static const std::vector<FunctionSpec> specs = build_registry();
  return specs;
}

const FunctionSpec& find(std::string_view id) {
  const auto parts = split_id(id);
  if (parts) {
    const std::string key = canonical_id(parts->first, parts->second);
    for (const auto& spec : registry()) {
      if (spec.id == key) return spec;
    }
  }
  throw ConfigError(fmt::format("unknown function id '{}'", id));
}

std::vector<std::string> expand_ids(std::string_view list) {
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  auto add_family = [&](auto predicate) {
    for (const auto& spec : registry()) {
      if (predicate(spec)) add(spec.id);
    }
  };

  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    const auto token = trim(list.substr(pos, comma == std::string_view::npos ? list.npos
                                                                               : comma - pos));
    pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    if (token.empty()) continue;

    const std::string name = upper(token);
    if (name == "ALL") {
      add_family([](const FunctionSpec&) { return true; });
    } else if (name == "CLASSICAL") {
      add_family([](const FunctionSpec& s) {
        return s.family == Family::unimodal || s.family == Family::multimodal ||
               s.family == Family::fixed_dimension;
      });
    } else if (name == "UNIMODAL") {
      add_family([](const FunctionSpec& s) { return s.family == Family::unimodal; });
    } else if (name == "MULTIMODAL") {
      add_family([](const FunctionSpec& s) { return s.family == Family::multimodal; });
    } else if (name == "COMPOSITE") {
      add_family([](const FunctionSpec& s) { return s.family == Family::composite; });
    } else if (name == "FIXED") {
      add_family([](const FunctionSpec& s) { return s.family == Family::fixed_dimension; });
    } else if (name == "CEC") {
      add_family([](const FunctionSpec& s) { return s.family == Family::cec; });
    } else if (const auto dots = name.find(".."); dots != std::string::npos) {
      const auto first = split_id(std::string_view(name).substr(0, dots));
      const auto last = split_id(std::string_view(name).substr(dots + 2));
      if (!first || !last || first->first != last->first || first->second > last->second) {
        throw ConfigError(fmt::format("invalid function range '{}'", token));
      }
      for (int k = first->second; k <= last->second; ++k) {
        add(find(canonical_id(first->first, k)).id);
      }
    } else {
      add(find(name).id);
    }
  }
  if (out.empty()) throw ConfigError("no functions selected");
  return out;
}

std::filesystem::path default_cec_data_dir() {
  if (const char* env = std::getenv("LPB_DATA_DIR"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env) / "cec";
  }
  return std::filesystem::path(LPB_SOURCE_DATA_DIR) / "cec";
}

ObjectiveProblem make_problem(const FunctionSpec& spec, const ProblemOptions& options) {
  ObjectiveProblem p;
  p.name = spec.id;
  p.dim = spec.dim;
  p.lower = spec.lower;
  p.upper = spec.upper;
  p.known_f_min = spec.f_min;
  if (options.apply_shift) p.shift = spec.shift;

  switch (spec.family) {
    case Family::unimodal:
    case Family::multimodal: {
      const Formula f = classical_formula(spec.id);
      if (spec.stochastic) {
        p.real_objective = [f](std::span<const double> x, Rng& rng) { return f(x) + rng.uniform(); };
      } else {
        p.real_objective = [f](std::span<const double> x, Rng&) { return f(x); };
      }
      break;
    }
    case Family::composite: {
      const CompositeFunction* cf = &composite(std::atoi(spec.id.c_str() + 2));
      p.real_objective = [cf](std::span<const double> x, Rng&) { return (*cf)(x); };
      break;
    }
    case Family::fixed_dimension: {
      const Formula f = fixed_formula(spec.id);
      p.real_objective = [f](std::span<const double> x, Rng&) { return f(x); };
      break;
    }
    case Family::cec: {
      const int number = spec.cec_number();
      std::shared_ptr<const cec::TransformData> data;
      if (spec.needs_data()) {
        const auto dir =
            options.cec_data_dir.empty() ? default_cec_data_dir() : options.cec_data_dir;
        data = std::make_shared<const cec::TransformData>(cec::load_data(dir, number, spec.dim));
      }
      p.real_objective = [number, data](std::span<const double> x, Rng&) {
        return cec::evaluate(number, x, data.get());
      };
      break;
    }
  }
  return p;
}

RealVector optimum_point(const FunctionSpec& spec, const ProblemOptions& options) {
  if (spec.needs_data()) {
    const auto dir = options.cec_data_dir.empty() ? default_cec_data_dir() : options.cec_data_dir;
    return cec::load_data(dir, spec.cec_number(), spec.dim).shift;
  }
  RealVector x = spec.optimum;
  if (options.apply_shift && spec.shift) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += (*spec.shift)[i];
  }
  return x;
}

double eval_classical(std::string_view id, std::span<const double> x, Rng* noise,
                      bool apply_shift) {
  const FunctionSpec& spec = find(id);
  if (spec.family != Family::unimodal && spec.family != Family::multimodal) {
    throw UsageError(fmt::format("{} is not a classical function", spec.id));
  }
  check_point(spec, x);
  RealVector moved(x.begin(), x.end());
  if (apply_shift && spec.shift) {
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] -= (*spec.shift)[i];
  }
  double value = classical_formula(spec.id)(moved);
  if (spec.stochastic && noise != nullptr) value += noise->uniform();
  return value;
}

double eval_composite(std::string_view id, std::span<const double> x) {
  const FunctionSpec& spec = find(id);
  if (spec.family != Family::composite) {
    throw UsageError(fmt::format("{} is not a composite function", spec.id));
  }
  check_point(spec, x);
  return composite(std::atoi(spec.id.c_str() + 2))(x);
}

double eval_fixed_dimension(std::string_view id, std::span<const double> x) {
  const FunctionSpec& spec = find(id);
  if (spec.family != Family::fixed_dimension) {
    throw UsageError(fmt::format("{} is not a fixed-dimension function", spec.id));
  }
  check_point(spec, x);
  return fixed_formula(spec.id)(x);
}

double eval_cec(std::string_view id, std::span<const double> x,
                const std::filesystem::path& data_dir) {
  const FunctionSpec& spec = find(id);
  if (spec.family != Family::cec) {
    throw UsageError(fmt::format("{} is not a CEC function", spec.id));
  }
  check_point(spec, x);
  if (!spec.needs_data()) return cec::evaluate(spec.cec_number(), x, nullptr);
  const auto data = cec::load_data(data_dir, spec.cec_number(), spec.dim);
  return cec::evaluate(spec.cec_number(), x, &data);
}

std::vector<SelfTestResult> self_test(const ProblemOptions& options) {
  std::vector<SelfTestResult> results;
  Rng unused(0);
  for (const auto& spec : registry()) {
    ObjectiveProblem problem = make_problem(spec, options);
    double value;
    if (spec.stochastic) {
      // Noise-free formula at the optimum.
      value = classical_formula(spec.id)(spec.optimum);
    } else {
      value = problem.value(Individual(optimum_point(spec, options)), unused);
    }
    const bool ok = std::abs(value - spec.f_min) <= spec.optimum_tolerance;
    results.push_back({spec.id, value, spec.f_min, spec.optimum_tolerance, ok});
  }
  return results;
}

}  // namespace lpb::bench
