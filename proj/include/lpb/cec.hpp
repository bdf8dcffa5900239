#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpb/core.hpp"

// CEC-C06 2019 ("100-digit challenge") functions. Every function is offset so
// its global minimum is 1.
namespace lpb::cec {

/// Shift vector and rotation matrix for one shifted-rotated function.
struct TransformData {
  RealVector shift;
  std::vector<RealVector> rotation;  // row-major, dim x dim

  std::size_t dim() const { return shift.size(); }
};

/// Storn's Chebyshev polynomial fitting, d = 9 (degree-8 Chebyshev target).
double chebyshev(std::span<const double> x);
/// Inverse Hilbert matrix problem, d = n^2 (16 in the suite).
double inverse_hilbert(std::span<const double> x);
/// Lennard-Jones cluster energy, d = 3 * atoms (18 in the suite).
double lennard_jones(std::span<const double> x);

/// CEC04..CEC10 on a point in search space. `number` is 4..10.
double shifted_rotated(int number, std::span<const double> x, const TransformData& data);

/// Dispatch for any of CEC01..CEC10; `data` is ignored for 1..3.
double evaluate(int number, std::span<const double> x, const TransformData* data);

/// Octahedral global minimum of the 6-atom cluster, in CEC03 coordinates.
RealVector lennard_jones_optimum();
/// Coefficients of the degree-(d-1) Chebyshev polynomial, highest power first.
RealVector chebyshev_optimum(std::size_t dim);
/// Row-major inverse of the n x n Hilbert matrix.
RealVector inverse_hilbert_optimum(std::size_t dim);

// ---- data files -------------------------------------------------------------
// Whitespace-separated decimal text: first line the shift vector, then `dim`
// lines holding the rotation rows. Named cec{NN}_d{dim}.txt.

std::string data_file_name(int number, std::size_t dim);

/// Throws ConfigError naming the file when it is missing or malformed.
TransformData load_data(const std::filesystem::path& dir, int number, std::size_t dim);

void write_data(const std::filesystem::path& file, const TransformData& data);

/// Shift uniform in [-80, 80]^dim and an orthonormal rotation from
/// Gram-Schmidt on a Gaussian matrix, all drawn from `seed`.
TransformData generate_data(int number, std::size_t dim, std::uint64_t seed);

inline constexpr std::uint64_t kDataSeed = 2019;

}  // namespace lpb::cec
