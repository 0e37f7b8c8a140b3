#include "memfuzzy/crossbar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "memfuzzy/errors.hpp"
#include "memfuzzy/kernels.hpp"
#include "memfuzzy/rng.hpp"

namespace memfuzzy {

std::string to_string(ReadMode mode) { return mode == ReadMode::exact ? "exact" : "ideal"; }

ReadMode read_mode_from_string(const std::string& name) {
    if (name == "exact") return ReadMode::exact;
    if (name == "ideal") return ReadMode::ideal;
    throw ConfigError("unknown read mode '" + name + "' (expected exact|ideal)");
}

Crossbar::Crossbar(std::size_t rows, std::size_t cols, device::MemristorParams params)
    : rows_(rows),
      cols_(cols),
      params_(params),
      beta_(device::beta(params)),
      memristance_(rows, cols, params.r_off),
      saturated_(rows * cols, 0),
      faulted_(rows * cols, 0) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("crossbar needs at least one row and one column");
    }
}

device::MemristorState Crossbar::cell(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("cell index out of range");
    return {memristance_(i, j), saturated_[i * cols_ + j] != 0};
}

bool Crossbar::faulted(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("cell index out of range");
    return faulted_[i * cols_ + j] != 0;
}

std::size_t Crossbar::fault_count() const noexcept {
    return static_cast<std::size_t>(std::count(faulted_.begin(), faulted_.end(), 1));
}

void Crossbar::write_pulse(std::span<const double> col_grades,
                           std::span<const double> row_grades, double t0) {
    if (col_grades.size() != cols_ || row_grades.size() != rows_) {
        throw DimensionError("write_pulse: expected " + std::to_string(cols_) + " column and " +
                             std::to_string(rows_) + " row grades, got " +
                             std::to_string(col_grades.size()) + " and " +
                             std::to_string(row_grades.size()));
    }
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw ParameterError("t0 must be positive");
    auto in_unit = [](double g) { return g >= 0.0 && g <= 1.0; };
    if (!std::all_of(col_grades.begin(), col_grades.end(), in_unit) ||
        !std::all_of(row_grades.begin(), row_grades.end(), in_unit)) {
        throw ParameterError("write_pulse: membership grades must lie in [0, 1]");
    }
    kernels::CellsView view{memristance_, saturated_, faulted_};
    saturation_count_ +=
        kernels::write_pulse_parallel(view, col_grades, row_grades, {t0, beta_, params_.r_on});
}

void Crossbar::check_input(std::span<const double> input) const {
    if (input.size() != cols_) {
        throw DimensionError("read: expected " + std::to_string(cols_) + " inputs, got " +
                             std::to_string(input.size()));
    }
}

std::vector<double> Crossbar::read_exact(std::span<const double> input) const {
    check_input(input);
    std::vector<double> out(rows_);
    kernels::read_exact_parallel(memristance_, params_.r_off, input, out);
    return out;
}

std::vector<double> Crossbar::read_ideal(std::span<const double> input) const {
    check_input(input);
    std::vector<double> out(rows_);
    kernels::read_ideal_parallel(memristance_, params_.r_off, input, out);
    return out;
}

std::vector<double> Crossbar::read(std::span<const double> input, ReadMode mode) const {
    return mode == ReadMode::exact ? read_exact(input) : read_ideal(input);
}

void Crossbar::inject_faults(double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ParameterError("fault fraction must lie in [0, 1]");
    }
    const std::size_t total = rows_ * cols_;
    const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total)));

    // partial Fisher-Yates: the first `count` slots are a uniform sample
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(rng.below(total - k));
        std::swap(order[k], order[pick]);
    }

    std::fill(faulted_.begin(), faulted_.end(), 0);
    auto flat = memristance_.flat();
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t c = order[k];
        faulted_[c] = 1;
        flat[c] = params_.r_off;
        saturated_[c] = 0;
    }
}

Matrix Crossbar::snapshot_delta() const {
    Matrix delta(rows_, cols_);
    auto src = memristance_.flat();
    auto dst = delta.flat();
    for (std::size_t k = 0; k < src.size(); ++k) {
        dst[k] = params_.r_off - src[k];
    }
    return delta;
}

void Crossbar::restore(Matrix memristance, std::vector<std::uint8_t> faulted,
                       std::size_t saturation_count) {
    if (memristance.rows() != rows_ || memristance.cols() != cols_ ||
        faulted.size() != rows_ * cols_) {
        throw DimensionError("restore: storage shape does not match crossbar");
    }
    for (double m : memristance.flat()) {
        if (!(m >= params_.r_on && m <= params_.r_off)) {
            throw ParameterError("restore: memristance outside [r_on, r_off]");
        }
    }
    auto flat = memristance.flat();
    for (std::size_t k = 0; k < faulted.size(); ++k) {
        if (faulted[k] && flat[k] != params_.r_off) {
            throw ParameterError("restore: faulted cell not at r_off");
        }
    }
    memristance_ = std::move(memristance);
    faulted_ = std::move(faulted);
    std::fill(saturated_.begin(), saturated_.end(), 0);
    for (std::size_t k = 0; k < saturated_.size(); ++k) {
        saturated_[k] = memristance_.flat()[k] == params_.r_on ? 1 : 0;
    }
    saturation_count_ = saturation_count;
}

void write_surface_csv(std::ostream& out, const Matrix& surface, double r_off) {
    out << "# rows=" << surface.rows() << " cols=" << surface.cols()
        << " r_off=" << std::setprecision(17) << r_off << '\n';
    for (std::size_t i = 0; i < surface.rows(); ++i) {
        for (std::size_t j = 0; j < surface.cols(); ++j) {
            if (j) out << ',';
            out << surface(i, j);
        }
        out << '\n';
    }
}

void write_surface_csv(const std::string& path, const Matrix& surface, double r_off) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    write_surface_csv(out, surface, r_off);
}

Matrix read_surface_csv(std::istream& in, double* r_off) {
    std::string header;
    std::getline(in, header);
    std::size_t rows = 0, cols = 0;
    double roff = 0.0;
    if (std::sscanf(header.c_str(), "# rows=%zu cols=%zu r_off=%lf", &rows, &cols, &roff) != 3) {
        throw ConfigError("surface CSV: malformed header '" + header + "'");
    }
    Matrix surface(rows, cols);
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line)) throw ConfigError("surface CSV: missing rows");
        std::istringstream ls(line);
        std::string cell;
        for (std::size_t j = 0; j < cols; ++j) {
            if (!std::getline(ls, cell, ',')) throw ConfigError("surface CSV: short row");
            surface(i, j) = std::stod(cell);
        }
    }
    if (r_off) *r_off = roff;
    return surface;
}

}  // namespace memfuzzy
