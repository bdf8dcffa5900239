#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lpb/core.hpp"

namespace lpb::bench {

using BasicFunction = double (*)(std::span<const double>);

/// Hybrid composition of ten basic functions:
///   F(x) = sum_i w_i * (C * f_i(M_i (x - o_i) / lambda_i) / |f_max_i| + bias_i)
/// with Gaussian distance weights of width sigma_i. Only the weight of the
/// nearest optimum stays unpenalized; weights are normalized to sum to 1.
class CompositeFunction {
 public:
  static constexpr double kScale = 2000.0;  // C
  static constexpr double kProbe = 5.0;     // f_max_i is taken at x = [5, ..., 5]

  struct Component {
    BasicFunction f;
    double sigma;
    double lambda;
    double bias;
    RealVector optimum;
    std::vector<RealVector> rotation;  // empty: identity
  };

  explicit CompositeFunction(std::vector<Component> components);

  double operator()(std::span<const double> x) const;
  /// Normalized weights at x (sum to 1).
  std::vector<double> weights(std::span<const double> x) const;

  std::size_t dim() const { return components_.front().optimum.size(); }
  const std::vector<Component>& components() const { return components_; }

 private:
  RealVector transform(const Component& c, std::span<const double> x, bool centered) const;

  std::vector<Component> components_;
  std::vector<double> f_max_;
};

/// CF1..CF6 built with optima drawn uniformly in [-5, 5]^dim from a fixed seed
/// and identity rotations. `index` is 1..6.
CompositeFunction make_composite(int index, std::size_t dim = 10);

/// Seed of the composite optima.
inline constexpr std::uint64_t kCompositeSeed = 20190101;

}  // namespace lpb::bench
