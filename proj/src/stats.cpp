#include "lpb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

#include <fmt/core.h>

namespace lpb::stats {

BatchSummary summarize(std::span<const double> finals, std::span<const double> pts) {
  if (finals.size() < 2) {
    throw UsageError(fmt::format("summary needs at least 2 runs, got {}", finals.size()));
  }
  if (!pts.empty() && pts.size() != finals.size()) {
    throw UsageError("summary: processing times and finals differ in length");
  }
  const double n = static_cast<double>(finals.size());
  BatchSummary s;
  s.n_runs = finals.size();
  s.mean = std::accumulate(finals.begin(), finals.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : finals) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / (n - 1.0));
  if (!pts.empty()) s.mean_pt_seconds = std::accumulate(pts.begin(), pts.end(), 0.0) / n;
  return s;
}

std::vector<double> midranks(std::span<const double> pooled) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> rank(pooled.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

namespace {

void check_samples(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw UsageError(fmt::format("rank-sum test needs two samples of size >= 2, got {} and {}",
                                 a.size(), b.size()));
  }
  for (auto s : {a, b}) {
    for (double v : s) {
      if (std::isnan(v)) throw UsageError("rank-sum test: sample contains NaN");
    }
  }
}

std::vector<double> pool(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

bool all_identical(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

double wilcoxon_exact(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const std::vector<double> all = pool(a, b);
  if (all_identical(all)) return 1.0;
  const std::vector<double> rank = midranks(all);

  // Midranks are multiples of 1/2, so doubled ranks are integers and the null
  // distribution of the doubled rank sum can be counted without rounding.
  std::vector<long> r2(rank.size());
  for (std::size_t i = 0; i < rank.size(); ++i) r2[i] = std::lround(2.0 * rank[i]);
  const long total = std::accumulate(r2.begin(), r2.end(), 0L);
  const std::size_t na = a.size();

  // ways[k][s]: subsets of size k with doubled rank sum s.
  std::vector<std::vector<double>> ways(na + 1, std::vector<double>(total + 1, 0.0));
  ways[0][0] = 1.0;
  for (long r : r2) {
    for (std::size_t k = na; k >= 1; --k) {
      for (long s = total; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
    }
  }

  long observed = 0;
  for (std::size_t i = 0; i < na; ++i) observed += r2[i];
  // E[2W] = na * (N + 1), an integer.
  const long n_all = static_cast<long>(all.size());
  const long expected2 = static_cast<long>(na) * (n_all + 1);
  const long dev = std::labs(observed - expected2);

  double hits = 0.0;
  double count = 0.0;
  for (long s = 0; s <= total; ++s) {
    const double w = ways[na][s];
    if (w == 0.0) continue;
    count += w;
    if (std::labs(s - expected2) >= dev) hits += w;
  }
  return std::min(1.0, hits / count);
}

double wilcoxon_normal(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const std::vector<double> all = pool(a, b);
  if (all_identical(all)) return 1.0;
  const std::vector<double> rank = midranks(all);

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  const double w = std::accumulate(rank.begin(), rank.begin() + static_cast<long>(a.size()), 0.0);
  const double expected = na * (n + 1.0) / 2.0;

  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  const double z = std::max(0.0, std::abs(w - expected) - 0.5) / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double wilcoxon_ranksum(std::span<const double> a, std::span<const double> b) {
  return a.size() + b.size() <= kExactLimit ? wilcoxon_exact(a, b) : wilcoxon_normal(a, b);
}

std::vector<SignificanceRow> significance_table(std::span<const RunRecord> a,
                                                std::span<const RunRecord> b) {
  std::vector<std::string> ids;
  auto collect = [](std::span<const RunRecord> records, std::vector<std::string>* order) {
    std::set<std::string> seen;
    for (const auto& r : records) {
      if (seen.insert(r.function_id).second && order) order->push_back(r.function_id);
    }
    return seen;
  };
  if (collect(a, &ids) != collect(b, nullptr)) {
    throw UsageError("significance table: the two result sets cover different functions");
  }

  auto finals = [](std::span<const RunRecord> records, const std::string& id) {
    std::vector<double> v;
    for (const auto& r : records) {
      if (r.function_id == id) v.push_back(r.final_best);
    }
    return v;
  };

  std::vector<SignificanceRow> rows;
  rows.reserve(ids.size());
  for (const auto& id : ids) {
    const double p = wilcoxon_ranksum(finals(a, id), finals(b, id));
    rows.push_back({id, p, p < kAlpha});
  }
  return rows;
}

}  // namespace lpb::stats
