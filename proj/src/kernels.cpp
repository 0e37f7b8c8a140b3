#include "memfuzzy/kernels.hpp"

#include <omp.h>

#include <cmath>

#include "memfuzzy/device.hpp"

namespace memfuzzy::kernels {
namespace {

// Below this many cells the thread fork costs more than the loop.
constexpr std::size_t kParallelCutoff = 4096;

inline std::size_t write_row(CellsView& cells, std::size_t i, std::span<const double> col,
                             double row_grade, const WriteParams& wp) {
    const std::size_t n = col.size();
    std::size_t clamped = 0;
    auto m_row = cells.memristance.row(i);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = i * n + j;
        if (cells.faulted[k]) continue;
        const double flux = (col[j] + row_grade) * wp.t0;
        if (flux == 0.0) continue;
        const auto next = device::apply_flux({m_row[j], false}, wp.beta, wp.r_on, flux);
        m_row[j] = next.memristance;
        cells.saturated[k] = next.saturated ? 1 : 0;
        clamped += next.saturated ? 1 : 0;
    }
    return clamped;
}

inline double ideal_row(std::span<const double> m_row, double r_off, std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        acc += (r_off - m_row[j]) * x[j];
    }
    return acc;
}

inline double exact_row(std::span<const double> m_row, double r_off, std::span<const double> x,
                        double temp) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        acc += x[j] * (r_off / m_row[j]);
    }
    return -(acc + temp);
}

double temp_row(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return -s;
}

}  // namespace

std::size_t write_pulse_serial(CellsView cells, std::span<const double> col_grades,
                               std::span<const double> row_grades, const WriteParams& wp) {
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < row_grades.size(); ++i) {
        clamped += write_row(cells, i, col_grades, row_grades[i], wp);
    }
    return clamped;
}

std::size_t write_pulse_parallel(CellsView cells, std::span<const double> col_grades,
                                 std::span<const double> row_grades, const WriteParams& wp) {
    const auto m = static_cast<std::ptrdiff_t>(row_grades.size());
    const bool go_wide = cells.memristance.size() >= kParallelCutoff;
    std::size_t clamped = 0;
#pragma omp parallel for schedule(static) reduction(+ : clamped) if (go_wide)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        clamped += write_row(cells, static_cast<std::size_t>(i), col_grades,
                             row_grades[static_cast<std::size_t>(i)], wp);
    }
    return clamped;
}

void read_ideal_serial(const Matrix& memristance, double r_off, std::span<const double> input,
                       std::span<double> output) {
    const double alpha = -1.0 / r_off;
    for (std::size_t i = 0; i < memristance.rows(); ++i) {
        output[i] = alpha * ideal_row(memristance.row(i), r_off, input);
    }
}

void read_ideal_parallel(const Matrix& memristance, double r_off, std::span<const double> input,
                         std::span<double> output) {
    const double alpha = -1.0 / r_off;
    const auto m = static_cast<std::ptrdiff_t>(memristance.rows());
    const bool go_wide = memristance.size() >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (go_wide)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const auto r = static_cast<std::size_t>(i);
        output[r] = alpha * ideal_row(memristance.row(r), r_off, input);
    }
}

void read_exact_serial(const Matrix& memristance, double r_off, std::span<const double> input,
                       std::span<double> output) {
    const double temp = temp_row(input);
    for (std::size_t i = 0; i < memristance.rows(); ++i) {
        output[i] = exact_row(memristance.row(i), r_off, input, temp);
    }
}

void read_exact_parallel(const Matrix& memristance, double r_off, std::span<const double> input,
                         std::span<double> output) {
    const double temp = temp_row(input);
    const auto m = static_cast<std::ptrdiff_t>(memristance.rows());
    const bool go_wide = memristance.size() >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (go_wide)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const auto r = static_cast<std::size_t>(i);
        output[r] = exact_row(memristance.row(r), r_off, input, temp);
    }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace memfuzzy::kernels
