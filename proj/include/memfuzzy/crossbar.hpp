#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "memfuzzy/device.hpp"
#include "memfuzzy/matrix.hpp"

namespace memfuzzy {

enum class ReadMode { exact, ideal };

[[nodiscard]] std::string to_string(ReadMode mode);
[[nodiscard]] ReadMode read_mode_from_string(const std::string& name);

struct ReadConfig {
    ReadMode mode = ReadMode::ideal;
    /// Summing-row resistance. The temp row is modelled algebraically, so
    /// this is recorded but does not enter any read.
    double r_c = 1e5;
};

/// An m x n memristor crossbar with op-amp read-out (rows are outputs,
/// columns are inputs). Every cell starts pristine at r_off.
///
/// Mutated only by write_pulse() and inject_faults(); reads are const and
/// may run concurrently.
class Crossbar {
public:
    Crossbar(std::size_t rows, std::size_t cols, device::MemristorParams params);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] const device::MemristorParams& params() const noexcept { return params_; }

    [[nodiscard]] device::MemristorState cell(std::size_t i, std::size_t j) const;
    [[nodiscard]] bool faulted(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::size_t fault_count() const noexcept;
    [[nodiscard]] std::size_t saturation_count() const noexcept { return saturation_count_; }
    [[nodiscard]] const Matrix& memristance() const noexcept { return memristance_; }

    /// Drives columns with col_grades and rows with -row_grades for t0
    /// seconds. Cell (i,j) sees col_grades[j] + row_grades[i] volts.
    void write_pulse(std::span<const double> col_grades, std::span<const double> row_grades,
                     double t0);

    /// Circuit read with the temp-row correction; no small-signal approximation.
    [[nodiscard]] std::vector<double> read_exact(std::span<const double> input) const;

    /// First-order read y = -(1/r_off) * DeltaM * x.
    [[nodiscard]] std::vector<double> read_ideal(std::span<const double> input) const;

    [[nodiscard]] std::vector<double> read(std::span<const double> input, ReadMode mode) const;

    /// Marks floor(fraction*m*n) distinct cells, drawn uniformly with the
    /// given seed, as stuck at r_off. Replaces any previous fault mask.
    void inject_faults(double fraction, std::uint64_t seed);

    /// r_off - M per cell (zero for faulted cells).
    [[nodiscard]] Matrix snapshot_delta() const;

    /// Restores storage from a model file; validates shapes and bounds.
    void restore(Matrix memristance, std::vector<std::uint8_t> faulted,
                 std::size_t saturation_count);

    [[nodiscard]] std::span<const std::uint8_t> fault_mask() const noexcept { return faulted_; }

private:
    void check_input(std::span<const double> input) const;

    std::size_t rows_;
    std::size_t cols_;
    device::MemristorParams params_;
    double beta_;
    Matrix memristance_;
    std::vector<std::uint8_t> saturated_;
    std::vector<std::uint8_t> faulted_;
    std::size_t saturation_count_ = 0;
};

/// Writes a surface as CSV: header `# rows=m cols=n r_off=...` then m
/// comma-separated rows.
void write_surface_csv(std::ostream& out, const Matrix& surface, double r_off);
void write_surface_csv(const std::string& path, const Matrix& surface, double r_off);

/// Parses the CSV written by write_surface_csv. Returns the surface and
/// stores the header's r_off in *r_off when non-null.
[[nodiscard]] Matrix read_surface_csv(std::istream& in, double* r_off = nullptr);

}  // namespace memfuzzy
