#include "lpb/functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace lpb::fn {

using std::numbers::pi;

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double schwefel_2_22(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (double v : x) {
    sum += std::abs(v);
    prod *= std::abs(v);
  }
  return sum + prod;
}

double schwefel_1_2(std::span<const double> x) {
  double s = 0.0;
  double partial = 0.0;
  for (double v : x) {
    partial += v;
    s += partial * partial;
  }
  return s;
}

double schwefel_2_21(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double step(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double f = std::floor(v + 0.5);
    s += f * f;
  }
  return s;
}

double quartic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sq = x[i] * x[i];
    s += static_cast<double>(i + 1) * sq * sq;
  }
  return s;
}

double schwefel(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum / 4000.0 - prod + 1.0;
}

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

double penalized1(std::span<const double> x) {
  const std::size_t n = x.size();
  auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
  const double s1 = std::sin(pi * y(0));
  double s = 10.0 * s1 * s1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double si = std::sin(pi * y(i + 1));
    s += (y(i) - 1.0) * (y(i) - 1.0) * (1.0 + 10.0 * si * si);
  }
  s += (y(n - 1) - 1.0) * (y(n - 1) - 1.0);
  double pen = 0.0;
  for (double v : x) pen += penalty_u(v, 10.0, 100.0, 4.0);
  return pi / static_cast<double>(n) * s + pen;
}

double penalized2(std::span<const double> x) {
  const std::size_t n = x.size();
  const double s0 = std::sin(3.0 * pi * x[0]);
  double s = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double si = std::sin(3.0 * pi * x[i + 1]);
    s += (x[i] - 1.0) * (x[i] - 1.0) * (1.0 + si * si);
  }
  const double sn = std::sin(2.0 * pi * x[n - 1]);
  s += (x[n - 1] - 1.0) * (x[n - 1] - 1.0) * (1.0 + sn * sn);
  double pen = 0.0;
  for (double v : x) pen += penalty_u(v, 5.0, 100.0, 4.0);
  return 0.1 * s + pen;
}

double weierstrass(std::span<const double> x) {
  constexpr double a = 0.5;
  constexpr double b = 3.0;
  constexpr int k_max = 20;
  double s = 0.0;
  double offset = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    offset += std::pow(a, k) * std::cos(pi * std::pow(b, k));
  }
  for (double v : x) {
    for (int k = 0; k <= k_max; ++k) {
      s += std::pow(a, k) * std::cos(2.0 * pi * std::pow(b, k) * (v + 0.5));
    }
  }
  return s - static_cast<double>(x.size()) * offset;
}

double shekel_foxholes(std::span<const double> x) {
  static constexpr std::array<double, 5> grid{-32.0, -16.0, 0.0, 16.0, 32.0};
  double s = 0.0;
  for (int j = 0; j < 25; ++j) {
    const double d0 = x[0] - grid[j % 5];
    const double d1 = x[1] - grid[j / 5];
    s += 1.0 / (j + 1 + std::pow(d0, 6) + std::pow(d1, 6));
  }
  return 1.0 / (1.0 / 500.0 + s);
}

double kowalik(std::span<const double> x) {
  static constexpr std::array<double, 11> a{0.1957, 0.1947, 0.1735, 0.16,   0.0844, 0.0627,
                                            0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  static constexpr std::array<double, 11> b_inv{0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16};
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double b = 1.0 / b_inv[i];
    const double r = a[i] - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
    s += r * r;
  }
  return s;
}

double six_hump_camel(std::span<const double> x) {
  const double u = x[0];
  const double v = x[1];
  return 4.0 * u * u - 2.1 * std::pow(u, 4) + std::pow(u, 6) / 3.0 + u * v - 4.0 * v * v +
         4.0 * std::pow(v, 4);
}

double branin(std::span<const double> x) {
  const double t = x[1] - 5.1 / (4.0 * pi * pi) * x[0] * x[0] + 5.0 / pi * x[0] - 6.0;
  return t * t + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x[0]) + 10.0;
}

double goldstein_price(std::span<const double> x) {
  const double u = x[0];
  const double v = x[1];
  const double a = u + v + 1.0;
  const double b = 2.0 * u - 3.0 * v;
  return (1.0 + a * a * (19.0 - 14.0 * u + 3.0 * u * u - 14.0 * v + 6.0 * u * v + 3.0 * v * v)) *
         (30.0 + b * b * (18.0 - 32.0 * u + 12.0 * u * u + 48.0 * v - 36.0 * u * v + 27.0 * v * v));
}

double hartmann3(std::span<const double> x) {
  static constexpr std::array<double, 4> c{1.0, 1.2, 3.0, 3.2};
  static constexpr std::array<std::array<double, 3>, 4> a{{
      {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}}};
  static constexpr std::array<std::array<double, 3>, 4> p{{{0.3689, 0.1170, 0.2673},
                                                           {0.4699, 0.4387, 0.7470},
                                                           {0.1091, 0.8732, 0.5547},
                                                           {0.03815, 0.5743, 0.8828}}};
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      const double d = x[j] - p[i][j];
      inner += a[i][j] * d * d;
    }
    s -= c[i] * std::exp(-inner);
  }
  return s;
}

}  // namespace lpb::fn
