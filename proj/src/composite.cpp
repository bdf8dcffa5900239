#include "lpb/composite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "lpb/functions.hpp"

namespace lpb::bench {

CompositeFunction::CompositeFunction(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ConfigError("composite function needs components");
  const std::size_t d = components_.front().optimum.size();
  for (const auto& c : components_) {
    if (c.optimum.size() != d) throw ConfigError("composite optima differ in dimension");
    if (!(c.sigma > 0.0) || !(c.lambda > 0.0)) {
      throw ConfigError("composite sigma and lambda must be positive");
    }
    if (!c.rotation.empty() && c.rotation.size() != d) {
      throw ConfigError("composite rotation has the wrong size");
    }
  }
  const RealVector probe(d, kProbe);
  for (const auto& c : components_) {
    f_max_.push_back(std::abs(c.f(transform(c, probe, false))));
  }
}

RealVector CompositeFunction::transform(const Component& c, std::span<const double> x,
                                        bool centered) const {
  const std::size_t d = x.size();
  RealVector y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = ((centered ? x[i] - c.optimum[i] : x[i])) / c.lambda;
  if (c.rotation.empty()) return y;
  RealVector z(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) z[i] += c.rotation[i][j] * y[j];
  }
  return z;
}

std::vector<double> CompositeFunction::weights(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw UsageError(fmt::format("composite: expected {} coordinates, got {}", dim(), x.size()));
  }
  const std::size_t n = components_.size();
  const double d = static_cast<double>(x.size());

  // Raw weights exp(log_w) underflow far from every optimum, so work relative
  // to the largest one and apply the (1 - w_max^10) damping in log space.
  std::vector<double> log_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double diff = x[k] - components_[i].optimum[k];
      dist2 += diff * diff;
    }
    const double sigma = components_[i].sigma;
    log_w[i] = -dist2 / (2.0 * d * sigma * sigma);
  }
  const auto top = static_cast<std::size_t>(
      std::distance(log_w.begin(), std::max_element(log_w.begin(), log_w.end())));
  const double damping = -std::expm1(10.0 * log_w[top]);  // 1 - w_max^10

  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = i == top ? 1.0 : std::exp(log_w[i] - log_w[top]) * damping;
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

double CompositeFunction::operator()(std::span<const double> x) const {
  const std::vector<double> w = weights(x);
  double value = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (w[i] == 0.0) continue;
    const auto& c = components_[i];
    const double fi = kScale * c.f(transform(c, x, true)) / f_max_[i];
    value += w[i] * (fi + c.bias);
  }
  return value;
}

CompositeFunction make_composite(int index, std::size_t dim) {
  using fn::ackley;
  using fn::griewank;
  using fn::rastrigin;
  using fn::sphere;
  using fn::weierstrass;

  std::array<BasicFunction, 10> funcs{};
  std::array<double, 10> sigma{};
  std::array<double, 10> lambda{};
  sigma.fill(1.0);

  const std::array<BasicFunction, 10> mixed{rastrigin, rastrigin, weierstrass, weierstrass,
                                            griewank,  griewank,  ackley,      ackley,
                                            sphere,    sphere};
  switch (index) {
    case 1:
      funcs.fill(sphere);
      lambda.fill(5.0 / 100.0);
      break;
    case 2:
      funcs.fill(griewank);
      lambda.fill(5.0 / 100.0);
      break;
    case 3:
      funcs.fill(griewank);
      lambda.fill(1.0);
      break;
    case 4:
      funcs = {ackley,   ackley,   rastrigin, rastrigin, weierstrass,
               weierstrass, griewank, griewank, sphere, sphere};
      lambda = {5.0 / 32, 5.0 / 32, 1.0, 1.0, 5.0 / 0.5, 5.0 / 0.5, 5.0 / 100, 5.0 / 100,
                5.0 / 100, 5.0 / 100};
      break;
    case 5:
      funcs = mixed;
      lambda = {1.0 / 5, 1.0 / 5, 5.0 / 0.5, 5.0 / 0.5, 5.0 / 100, 5.0 / 100, 5.0 / 32, 5.0 / 32,
                5.0 / 100, 5.0 / 100};
      break;
    case 6:
      funcs = mixed;
      sigma = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      lambda = {0.1 * 1.0 / 5,    0.2 * 1.0 / 5,    0.3 * 5.0 / 0.5, 0.4 * 5.0 / 0.5,
                0.5 * 5.0 / 100,  0.6 * 5.0 / 100,  0.7 * 5.0 / 32,  0.8 * 5.0 / 32,
                0.9 * 5.0 / 100,  1.0 * 5.0 / 100};
      break;
    default:
      throw UsageError(fmt::format("no composite function CF{}", index));
  }

  Rng rng(Rng::derive_seed(kCompositeSeed, "CF", static_cast<std::uint64_t>(index)));
  std::vector<CompositeFunction::Component> components;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    RealVector optimum(dim);
    for (double& v : optimum) v = rng.uniform(-5.0, 5.0);
    components.push_back({funcs[i], sigma[i], lambda[i], 100.0 * static_cast<double>(i),
                          std::move(optimum), {}});
  }
  return CompositeFunction(std::move(components));
}

}  // namespace lpb::bench
