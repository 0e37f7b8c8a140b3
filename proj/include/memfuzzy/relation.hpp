#pragma once

#include <optional>
#include <string>

#include "memfuzzy/device.hpp"
#include "memfuzzy/fuzzy.hpp"
#include "memfuzzy/matrix.hpp"

namespace memfuzzy {

/// Device constants plus pulse duration: everything the write-induced
/// implication depends on.
struct ImplicationParams {
    device::MemristorParams device;
    double t0 = 1e-4;
};

/// f(nu) = r_off - sqrt(r_off^2 - beta t0 nu): the stored-value increment a
/// pristine cell receives from total drive nu. Returns r_off - r_on once
/// the argument would pass the r_on floor.
[[nodiscard]] double implication_f(double nu, const ImplicationParams& p);

/// How repeated data combine in a relation.
///  - additive: mu += f(nu) per sample (the summed ink-drop rule).
///  - hardware: each sample is a further write on the same device, so the
///    cell follows the device flux law; mu = f(sum nu) until saturation.
enum class AccumulationMode { additive, hardware };

[[nodiscard]] std::string to_string(AccumulationMode mode);

/// Fuzzy relation mu_R over output x input grids, in stored-value units
/// (ohm). Row i is output grid point i, column j input grid point j.
class Relation {
public:
    Relation(Universe input, Universe output, AccumulationMode mode, ImplicationParams params);

    [[nodiscard]] const Universe& input_universe() const noexcept { return input_; }
    [[nodiscard]] const Universe& output_universe() const noexcept { return output_; }
    [[nodiscard]] AccumulationMode mode() const noexcept { return mode_; }
    [[nodiscard]] const ImplicationParams& params() const noexcept { return params_; }
    [[nodiscard]] const Matrix& mu() const noexcept { return mu_; }
    [[nodiscard]] std::size_t saturation_count() const noexcept { return saturation_count_; }

    /// Adds one input/output sample.
    void accumulate(const FuzzyNumber& a, const FuzzyNumber& b);

private:
    Universe input_;
    Universe output_;
    AccumulationMode mode_;
    ImplicationParams params_;
    double beta_;
    Matrix mu_;
    std::optional<Matrix> memristance_;  // hardware mode only
    std::size_t saturation_count_ = 0;
};

/// mu[i][j] = f(A_j + B_i) for a single input/output pair.
[[nodiscard]] Relation relation_from_sets(const FuzzyNumber& a, const FuzzyNumber& b,
                                          const ImplicationParams& p,
                                          AccumulationMode mode = AccumulationMode::hardware);

/// Sum-product composition: out_i = sum_j mu[i][j] * a_j. No normalisation.
[[nodiscard]] FuzzyNumber infer(const Relation& rel, const FuzzyNumber& a);

}  // namespace memfuzzy
