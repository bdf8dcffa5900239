#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpb/core.hpp"

namespace lpb::bench {

enum class Family { unimodal, multimodal, composite, fixed_dimension, cec };

std::string_view family_name(Family family);

struct FunctionSpec {
  std::string id;  // TF1..TF13, CF1..CF6, FD14..FD19, CEC01..CEC10
  std::string name;
  Family family;
  std::size_t dim;
  RealVector lower;
  RealVector upper;
  std::optional<RealVector> shift;  // tabled shift position, applied as x - shift
  double f_min;
  bool stochastic = false;
  /// Global minimizer in formula coordinates (before shifting). Empty for the
  /// shifted-rotated CEC functions, whose optimum is their data file's shift.
  RealVector optimum;
  /// Allowed |f(optimum) - f_min| in the registry self-test.
  double optimum_tolerance = 1e-10;

  bool needs_data() const;
  int cec_number() const;  // 0 when not a CEC function
};

/// Every implemented function, in listing order.
const std::vector<FunctionSpec>& registry();

/// Looks up an id (case-insensitive). TF14..TF19 resolve to FD14..FD19, the
/// fixed-dimension functions those benchmark rows report. Throws ConfigError.
const FunctionSpec& find(std::string_view id);

/// Expands a comma-separated list of ids, ranges ("TF1..TF19") and suite
/// names (classical, unimodal, multimodal, composite, fixed, cec, all) into
/// canonical ids, keeping first occurrences. Throws ConfigError.
std::vector<std::string> expand_ids(std::string_view list);

struct ProblemOptions {
  bool apply_shift = true;
  std::filesystem::path cec_data_dir;
};

/// Default directory for CEC data: $LPB_DATA_DIR/cec if set, otherwise the
/// source tree's data/cec.
std::filesystem::path default_cec_data_dir();

/// Objective ready for the optimizers. No range check is done here; the
/// optimizers keep points inside [lower, upper].
ObjectiveProblem make_problem(const FunctionSpec& spec, const ProblemOptions& options = {});

/// Known minimizer in search-space coordinates (shift and CEC data applied).
RealVector optimum_point(const FunctionSpec& spec, const ProblemOptions& options = {});

// ---- checked evaluation -----------------------------------------------------
// These validate arity and range (UsageError) before evaluating.

/// TF1..TF13 at a search-space point. With `noise` null the TF7 noise term is 0.
double eval_classical(std::string_view id, std::span<const double> x, Rng* noise = nullptr,
                      bool apply_shift = true);
double eval_composite(std::string_view id, std::span<const double> x);
double eval_fixed_dimension(std::string_view id, std::span<const double> x);
/// CEC01..CEC10; data for CEC04..CEC10 is read from `data_dir`.
double eval_cec(std::string_view id, std::span<const double> x,
                const std::filesystem::path& data_dir = default_cec_data_dir());

struct SelfTestResult {
  std::string id;
  double value;
  double f_min;
  double tolerance;
  bool passed;
};

/// Evaluates every registry entry at its known optimum.
std::vector<SelfTestResult> self_test(const ProblemOptions& options = {});

}  // namespace lpb::bench
