#pragma once

#include <span>

// Unshifted test-function formulas. Inputs are already in formula coordinates.
namespace lpb::fn {

double sphere(std::span<const double> x);
double schwefel_2_22(std::span<const double> x);
double schwefel_1_2(std::span<const double> x);
double schwefel_2_21(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double step(std::span<const double> x);
/// Without the additive uniform noise term.
double quartic(std::span<const double> x);
double schwefel(std::span<const double> x);
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double griewank(std::span<const double> x);
double penalized1(std::span<const double> x);
double penalized2(std::span<const double> x);
/// a = 0.5, b = 3, k_max = 20, offset so that f(0) = 0.
double weierstrass(std::span<const double> x);

/// u(x, a, k, m) boundary penalty used by the penalized functions.
double penalty_u(double x, double a, double k, double m);

// Fixed-dimension classics.
double shekel_foxholes(std::span<const double> x);  // d = 2
double kowalik(std::span<const double> x);          // d = 4
double six_hump_camel(std::span<const double> x);   // d = 2
double branin(std::span<const double> x);           // d = 2
double goldstein_price(std::span<const double> x);  // d = 2
double hartmann3(std::span<const double> x);        // d = 3

}  // namespace lpb::fn
