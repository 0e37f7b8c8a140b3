#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "memfuzzy/crossbar.hpp"
#include "memfuzzy/fuzzy.hpp"
#include "memfuzzy/matrix.hpp"

namespace memfuzzy {

/// A named variable on a discrete universe. sigma is the Gaussian width
/// used to fuzzify crisp values of this variable.
struct Variable {
    std::string name;
    Universe universe;
    double sigma;
};

/// A contiguous run of crossbar columns reserved for one input variable.
struct InputSection {
    Variable variable;
    std::size_t first_column;

    [[nodiscard]] std::size_t column_count() const noexcept { return variable.universe.count(); }
};

/// One trained crossbar with its declared input and output variables.
///
/// Input variables occupy disjoint column sections laid out in
/// declaration order; the output variable owns all rows. Training and
/// inference on a multi-input block concatenate the per-section grades
/// into a single column vector.
class Block {
public:
    Block(std::vector<Variable> inputs, Variable output, device::MemristorParams params,
          ReadMode mode = ReadMode::ideal);

    [[nodiscard]] const std::vector<InputSection>& inputs() const noexcept { return sections_; }
    [[nodiscard]] const Variable& output() const noexcept { return output_; }
    [[nodiscard]] ReadMode read_mode() const noexcept { return mode_; }
    void set_read_mode(ReadMode mode) noexcept { mode_ = mode; }

    [[nodiscard]] const Crossbar& crossbar() const noexcept { return xbar_; }
    [[nodiscard]] Crossbar& crossbar() noexcept { return xbar_; }

    /// One write pulse: inputs (one per section, in order) on the columns,
    /// output on the rows.
    void train(std::span<const FuzzyNumber> inputs, const FuzzyNumber& output, double t0);

    /// Raw read voltages (non-positive) for the concatenated input.
    [[nodiscard]] std::vector<double> read(std::span<const FuzzyNumber> inputs) const;

    /// Read followed by an ideal unity inverter, as a fuzzy number on the
    /// output universe.
    [[nodiscard]] FuzzyNumber infer(std::span<const FuzzyNumber> inputs) const;

    /// Fuzzifies crisp inputs with each section's sigma, then infers.
    [[nodiscard]] FuzzyNumber infer_crisp(std::span<const double> inputs) const;

    /// Concatenated column vector for the given inputs.
    [[nodiscard]] std::vector<double> assemble_columns(std::span<const FuzzyNumber> inputs) const;

    /// The stored-value surface restricted to one input section.
    [[nodiscard]] Matrix section_surface(std::size_t section) const;

private:
    std::vector<InputSection> sections_;
    Variable output_;
    ReadMode mode_;
    Crossbar xbar_;
};

/// Conditioning applied between pipeline stages.
struct Conditioning {
    bool normalize = true;
    bool regrid = true;
};

/// Blocks chained output-to-input; fuzzy numbers flow between stages
/// without defuzzification. Every block must have exactly one input.
class Pipeline {
public:
    explicit Pipeline(std::vector<Block> blocks, Conditioning conditioning = {});

    [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const Conditioning& conditioning() const noexcept { return conditioning_; }

    /// Runs every stage. Throws EmptyOutputError if an intermediate number
    /// has no mass.
    [[nodiscard]] FuzzyNumber infer(const FuzzyNumber& input) const;
    [[nodiscard]] FuzzyNumber infer_crisp(double x) const;

private:
    std::vector<Block> blocks_;
    Conditioning conditioning_;
};

}  // namespace memfuzzy
