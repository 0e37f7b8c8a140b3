#include "memfuzzy/system.hpp"

#include <algorithm>

#include "memfuzzy/errors.hpp"

namespace memfuzzy {
namespace {

std::size_t total_columns(const std::vector<Variable>& inputs) {
    std::size_t n = 0;
    for (const auto& v : inputs) n += v.universe.count();
    return n;
}

std::vector<InputSection> lay_out(std::vector<Variable> inputs) {
    if (inputs.empty()) throw DimensionError("a block needs at least one input variable");
    std::vector<InputSection> sections;
    std::size_t col = 0;
    for (auto& v : inputs) {
        if (!(v.sigma > 0.0)) throw ParameterError("variable '" + v.name + "' needs sigma > 0");
        for (const auto& s : sections) {
            if (s.variable.name == v.name) throw ConfigError("duplicate input variable '" + v.name + "'");
        }
        const std::size_t width = v.universe.count();
        sections.push_back({std::move(v), col});
        col += width;
    }
    return sections;
}

}  // namespace

Block::Block(std::vector<Variable> inputs, Variable output, device::MemristorParams params,
             ReadMode mode)
    : sections_(),
      output_(std::move(output)),
      mode_(mode),
      xbar_(output_.universe.count(), total_columns(inputs), params) {
    sections_ = lay_out(std::move(inputs));
    if (!(output_.sigma > 0.0)) throw ParameterError("output variable needs sigma > 0");
}

std::vector<double> Block::assemble_columns(std::span<const FuzzyNumber> inputs) const {
    if (inputs.size() != sections_.size()) {
        throw DimensionError("block expects " + std::to_string(sections_.size()) +
                             " input fuzzy numbers, got " + std::to_string(inputs.size()));
    }
    std::vector<double> cols(xbar_.cols(), 0.0);
    for (std::size_t k = 0; k < sections_.size(); ++k) {
        const auto& s = sections_[k];
        if (inputs[k].universe() != s.variable.universe) {
            throw DimensionError("input for '" + s.variable.name + "' is on the wrong universe");
        }
        std::copy(inputs[k].grades().begin(), inputs[k].grades().end(),
                  cols.begin() + static_cast<std::ptrdiff_t>(s.first_column));
    }
    return cols;
}

void Block::train(std::span<const FuzzyNumber> inputs, const FuzzyNumber& output, double t0) {
    if (output.universe() != output_.universe) {
        throw DimensionError("training output is not on the block's output universe");
    }
    const auto cols = assemble_columns(inputs);
    xbar_.write_pulse(cols, output.grades(), t0);
}

std::vector<double> Block::read(std::span<const FuzzyNumber> inputs) const {
    return xbar_.read(assemble_columns(inputs), mode_);
}

FuzzyNumber Block::infer(std::span<const FuzzyNumber> inputs) const {
    auto v = read(inputs);
    for (double& y : v) y = std::max(0.0, -y);
    return {output_.universe, std::move(v)};
}

FuzzyNumber Block::infer_crisp(std::span<const double> inputs) const {
    if (inputs.size() != sections_.size()) {
        throw DimensionError("block expects " + std::to_string(sections_.size()) + " crisp inputs");
    }
    std::vector<FuzzyNumber> fuzzy;
    fuzzy.reserve(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const auto& v = sections_[k].variable;
        fuzzy.push_back(fuzzify_gaussian(inputs[k], v.sigma, v.universe));
    }
    return infer(fuzzy);
}

Matrix Block::section_surface(std::size_t section) const {
    if (section >= sections_.size()) throw DimensionError("section index out of range");
    const auto& s = sections_[section];
    const Matrix full = xbar_.snapshot_delta();
    Matrix out(full.rows(), s.column_count());
    for (std::size_t i = 0; i < full.rows(); ++i) {
        for (std::size_t j = 0; j < s.column_count(); ++j) out(i, j) = full(i, s.first_column + j);
    }
    return out;
}

Pipeline::Pipeline(std::vector<Block> blocks, Conditioning conditioning)
    : blocks_(std::move(blocks)), conditioning_(conditioning) {
    if (blocks_.empty()) throw DimensionError("pipeline needs at least one block");
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (blocks_[k].inputs().size() != 1) {
            throw DimensionError("pipeline stages must have exactly one input variable");
        }
        if (k == 0) continue;
        const Universe& out = blocks_[k - 1].output().universe;
        const Universe& in = blocks_[k].inputs()[0].variable.universe;
        if (out.hi() <= in.lo() || out.lo() >= in.hi()) {
            throw DimensionError("pipeline stage " + std::to_string(k) +
                                 ": input domain does not overlap the previous output");
        }
        if (!conditioning_.regrid && out != in) {
            throw DimensionError("pipeline stage " + std::to_string(k) +
                                 ": universes differ and regridding is disabled");
        }
    }
}

FuzzyNumber Pipeline::infer(const FuzzyNumber& input) const {
    FuzzyNumber signal = input;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        signal = blocks_[k].infer(std::span<const FuzzyNumber>(&signal, 1));
        if (conditioning_.normalize) signal = normalize_peak(signal);
        if (!(signal.height() > 0.0)) {
            throw EmptyOutputError("pipeline stage " + std::to_string(k) + " produced no output");
        }
        if (k + 1 < blocks_.size() && conditioning_.regrid) {
            signal = regrid(signal, blocks_[k + 1].inputs()[0].variable.universe);
        }
    }
    return signal;
}

FuzzyNumber Pipeline::infer_crisp(double x) const {
    const auto& v = blocks_.front().inputs()[0].variable;
    return infer(fuzzify_gaussian(x, v.sigma, v.universe));
}

}  // namespace memfuzzy
