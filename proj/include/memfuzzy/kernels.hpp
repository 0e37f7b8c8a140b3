#pragma once

// Data-parallel crossbar kernels.
//
// Each operation has a serial reference and an OpenMP variant. The
// parallel variants split work by row only and keep every per-row sum in
// ascending column order, so both produce bit-identical results. The
// serial versions are kept for testing and benchmarking.

#include <cstddef>
#include <cstdint>
#include <span>

#include "memfuzzy/matrix.hpp"

namespace memfuzzy::kernels {

/// Mutable view over crossbar cell storage, all row-major m x n.
struct CellsView {
    Matrix& memristance;
    std::span<std::uint8_t> saturated;
    std::span<const std::uint8_t> faulted;
};

/// Per-cell write physics shared by both variants.
struct WriteParams {
    double t0;
    double beta;
    double r_on;
};

/// Applies flux (col[j] + row[i]) * t0 to every non-faulted cell with
/// non-zero drive. Returns the number of cells clamped at r_on.
std::size_t write_pulse_serial(CellsView cells, std::span<const double> col_grades,
                               std::span<const double> row_grades, const WriteParams& wp);
std::size_t write_pulse_parallel(CellsView cells, std::span<const double> col_grades,
                                 std::span<const double> row_grades, const WriteParams& wp);

/// y_i = alpha * sum_j (r_off - M_ij) x_j with alpha = -1/r_off.
void read_ideal_serial(const Matrix& memristance, double r_off, std::span<const double> input,
                       std::span<double> output);
void read_ideal_parallel(const Matrix& memristance, double r_off, std::span<const double> input,
                         std::span<double> output);

/// Op-amp read-out with the temp row: y_i = -(sum_j x_j r_off / M_ij + temp),
/// temp = -sum_j x_j.
void read_exact_serial(const Matrix& memristance, double r_off, std::span<const double> input,
                       std::span<double> output);
void read_exact_parallel(const Matrix& memristance, double r_off, std::span<const double> input,
                         std::span<double> output);

/// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace memfuzzy::kernels
