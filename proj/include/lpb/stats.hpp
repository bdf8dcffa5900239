#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lpb/core.hpp"

namespace lpb::stats {

struct BatchSummary {
  std::size_t n_runs = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1)
  double mean_pt_seconds = 0.0;
};

/// Throws UsageError for fewer than two finals or when `pts` is non-empty and
/// differs in length from `finals`.
BatchSummary summarize(std::span<const double> finals, std::span<const double> pts = {});

/// Largest combined sample size handled by exact enumeration.
inline constexpr std::size_t kExactLimit = 20;

/// Two-sided Wilcoxon rank-sum p-value with midranks for ties. Exact null
/// distribution for na + nb <= kExactLimit, otherwise a normal approximation
/// with tie-corrected variance and continuity correction. Both samples need at
/// least two values. All values identical gives 1.
double wilcoxon_ranksum(std::span<const double> a, std::span<const double> b);

/// Exact and approximate variants, exposed for testing.
double wilcoxon_exact(std::span<const double> a, std::span<const double> b);
double wilcoxon_normal(std::span<const double> a, std::span<const double> b);

/// Midranks (1-based) of the pooled sample a ++ b.
std::vector<double> midranks(std::span<const double> pooled);

inline constexpr double kAlpha = 0.05;

struct SignificanceRow {
  std::string function_id;
  double p_value;
  bool significant;
};

/// One row per function, comparing final bests of `a` and `b`. Functions keep
/// the order of their first appearance in `a`. Throws UsageError when the two
/// record sets cover different functions.
std::vector<SignificanceRow> significance_table(std::span<const RunRecord> a,
                                                std::span<const RunRecord> b);

}  // namespace lpb::stats
