#include "lpb/cec.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/core.h>

#include "lpb/functions.hpp"

namespace lpb::cec {

namespace {


// Added to the raw cluster energy so the 6-atom optimum lands on 0 (then +1).
constexpr double kLennardJonesOffset = 12.7120622568;
constexpr double kSchwefelShift = 4.209687462275036e+002;
constexpr double kSchwefelOffset = 4.189828872724338e+002;

RealVector shift_scale_rotate(std::span<const double> x, const TransformData& data,
                              double rate) {
  const std::size_t d = x.size();
  RealVector y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = (x[i] - data.shift[i]) * rate;
  RealVector z(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) z[i] += data.rotation[i][j] * y[j];
  }
  return z;
}

double modified_schwefel(std::span<const double> z_in) {
  const double n = static_cast<double>(z_in.size());
  double f = 0.0;
  for (double v : z_in) {
    const double z = v + kSchwefelShift;
    if (z > 500.0) {
      const double r = 500.0 - std::fmod(z, 500.0);
      f -= r * std::sin(std::sqrt(r));
      const double t = (z - 500.0) / 100.0;
      f += t * t / n;
    } else if (z < -500.0) {
      const double r = 500.0 - std::fmod(std::abs(z), 500.0);
      f -= -r * std::sin(std::sqrt(r));
      const double t = (z + 500.0) / 100.0;
      f += t * t / n;
    } else {
      f -= z * std::sin(std::sqrt(std::abs(z)));
    }
  }
  return f + kSchwefelOffset * n;
}

double expanded_schaffer_f6(std::span<const double> z) {
  const std::size_t n = z.size();
  double f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = z[i];
    const double b = z[(i + 1) % n];
    const double r2 = a * a + b * b;
    const double s = std::sin(std::sqrt(r2));
    const double t = 1.0 + 0.001 * r2;
    f += 0.5 + (s * s - 0.5) / (t * t);
  }
  return f;
}

double happy_cat(std::span<const double> z_in) {
  const double n = static_cast<double>(z_in.size());
  double r2 = 0.0;
  double sum = 0.0;
  for (double v : z_in) {
    const double z = v - 1.0;
    r2 += z * z;
    sum += z;
  }
  return std::pow(std::abs(r2 - n), 0.25) + (0.5 * r2 + sum) / n + 0.5;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double chebyshev(std::span<const double> x) {
  const std::size_t d = x.size();
  if (d < 3) throw UsageError("chebyshev: needs at least 3 coefficients");
  // Target value T_{d-1}(1.2) via the three-term recurrence.
  double prev = 1.0;
  double cur = 1.2;
  for (std::size_t k = 2; k < d; ++k) {
    const double next = 2.4 * cur - prev;
    prev = cur;
    cur = next;
  }
  const double target = cur;

  auto horner = [&](double y) {
    double p = x[0];
    for (std::size_t j = 1; j < d; ++j) p = y * p + x[j];
    return p;
  };

  double sum = 0.0;
  const std::size_t samples = 32 * d;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double y = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(samples);
    const double p = horner(y);
    if (p < -1.0 || p > 1.0) sum += (1.0 - std::abs(p)) * (1.0 - std::abs(p));
  }
  for (double y : {-1.2, 1.2}) {
    const double p = horner(y);
    if (p < target) sum += (p - target) * (p - target);
  }
  return sum + 1.0;
}

double inverse_hilbert(std::span<const double> x) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(x.size()))));
  if (n * n != x.size()) throw UsageError("inverse_hilbert: dimension must be a square");
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i) w += x[k + n * i] / static_cast<double>(i + j + 1);
      sum += std::abs(j == k ? w - 1.0 : w);
    }
  }
  return sum + 1.0;
}

double lennard_jones(std::span<const double> x) {
  if (x.size() % 3 != 0 || x.size() < 6) {
    throw UsageError("lennard_jones: dimension must be 3 * atoms with at least 2 atoms");
  }
  const std::size_t atoms = x.size() / 3;
  long double energy = 0.0L;
  for (std::size_t i = 0; i + 1 < atoms; ++i) {
    for (std::size_t j = i + 1; j < atoms; ++j) {
      const long double dx = x[3 * i] - x[3 * j];
      const long double dy = x[3 * i + 1] - x[3 * j + 1];
      const long double dz = x[3 * i + 2] - x[3 * j + 2];
      const long double r2 = dx * dx + dy * dy + dz * dz;
      const long double r6 = r2 * r2 * r2;
      energy += r6 > 1.0e-10L ? (1.0L / r6 - 2.0L) / r6 : 1.0e20L;
    }
  }
  return static_cast<double>(energy) + kLennardJonesOffset + 1.0;
}

double shifted_rotated(int number, std::span<const double> x, const TransformData& data) {
  if (data.dim() != x.size() || data.rotation.size() != x.size()) {
    throw UsageError(fmt::format("CEC{:02}: data is {}-dimensional, point is {}-dimensional",
                                 number, data.dim(), x.size()));
  }
  switch (number) {
    case 4: return fn::rastrigin(shift_scale_rotate(x, data, 5.12 / 100.0)) + 1.0;
    case 5: return fn::griewank(shift_scale_rotate(x, data, 600.0 / 100.0)) + 1.0;
    case 6: return fn::weierstrass(shift_scale_rotate(x, data, 0.5 / 100.0)) + 1.0;
    case 7: return modified_schwefel(shift_scale_rotate(x, data, 1000.0 / 100.0)) + 1.0;
    case 8: return expanded_schaffer_f6(shift_scale_rotate(x, data, 1.0)) + 1.0;
    case 9: return happy_cat(shift_scale_rotate(x, data, 5.0 / 100.0)) + 1.0;
    case 10: return fn::ackley(shift_scale_rotate(x, data, 1.0)) + 1.0;
    default: throw UsageError(fmt::format("CEC{:02} is not a shifted-rotated function", number));
  }
}

double evaluate(int number, std::span<const double> x, const TransformData* data) {
  switch (number) {
    case 1: return chebyshev(x);
    case 2: return inverse_hilbert(x);
    case 3: return lennard_jones(x);
    default:
      if (data == nullptr) {
        throw ConfigError(fmt::format("CEC{:02} needs shift/rotation data", number));
      }
      return shifted_rotated(number, x, *data);
  }
}

RealVector lennard_jones_optimum() {
  // Regular octahedron: 12 edges at distance a and 3 diagonals at a*sqrt(2).
  // dE/da = 0 gives a^6 = (12 + 3/64) / (12 + 3/8).
  const double edge = std::pow((12.0 + 3.0 / 64.0) / (12.0 + 3.0 / 8.0), 1.0 / 6.0);
  const double s = edge / std::numbers::sqrt2;
  return {s, 0, 0, -s, 0, 0, 0, s, 0, 0, -s, 0, 0, 0, s, 0, 0, -s};
}

RealVector chebyshev_optimum(std::size_t dim) {
  // Coefficients of T_k in ascending powers, built with T_{k+1} = 2y T_k - T_{k-1}.
  std::vector<double> prev{1.0};
  std::vector<double> cur{0.0, 1.0};
  for (std::size_t k = 2; k < dim; ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return RealVector(cur.rbegin(), cur.rend());
}

RealVector inverse_hilbert_optimum(std::size_t dim) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  RealVector out(dim);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      const double c = binomial(i + j - 2, i - 1);
      out[static_cast<std::size_t>((i - 1) * n + (j - 1))] =
          sign * (i + j - 1) * binomial(n + i - 1, n - j) * binomial(n + j - 1, n - i) * c * c;
    }
  }
  return out;
}

std::string data_file_name(int number, std::size_t dim) {
  return fmt::format("cec{:02}_d{}.txt", number, dim);
}

TransformData load_data(const std::filesystem::path& dir, int number, std::size_t dim) {
  const auto file = dir / data_file_name(number, dim);
  std::ifstream in(file);
  if (!in) throw ConfigError(fmt::format("missing CEC data file {}", file.string()));
  TransformData data;
  data.shift.resize(dim);
  data.rotation.assign(dim, RealVector(dim));
  for (double& v : data.shift) in >> v;
  for (auto& row : data.rotation) {
    for (double& v : row) in >> v;
  }
  if (!in) throw ConfigError(fmt::format("malformed CEC data file {}", file.string()));
  return data;
}

void write_data(const std::filesystem::path& file, const TransformData& data) {
  std::ofstream out(file);
  if (!out) throw IoError(fmt::format("cannot write {}", file.string()));
  auto write_row = [&](const RealVector& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? " " : "") << fmt::format("{:.17g}", row[i]);
    }
    out << '\n';
  };
  write_row(data.shift);
  for (const auto& row : data.rotation) write_row(row);
  if (!out) throw IoError(fmt::format("failed writing {}", file.string()));
}

TransformData generate_data(int number, std::size_t dim, std::uint64_t seed) {
  Rng rng(Rng::derive_seed(seed, "CEC", static_cast<std::uint64_t>(number)));
  TransformData data;
  data.shift.resize(dim);
  for (double& v : data.shift) v = rng.uniform(-80.0, 80.0);

  // Modified Gram-Schmidt on Gaussian rows.
  data.rotation.assign(dim, RealVector(dim));
  for (auto& row : data.rotation) {
    for (double& v : row) v = rng.normal();
  }
  for (std::size_t i = 0; i < dim; ++i) {
    auto& row = data.rotation[i];
    for (std::size_t k = 0; k < i; ++k) {
      const auto& basis = data.rotation[k];
      double dot = 0.0;
      for (std::size_t j = 0; j < dim; ++j) dot += row[j] * basis[j];
      for (std::size_t j = 0; j < dim; ++j) row[j] -= dot * basis[j];
    }
    double norm = 0.0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : row) v /= norm;
  }
  return data;
}

}  // namespace lpb::cec
