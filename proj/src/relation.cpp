#include "memfuzzy/relation.hpp"

#include <cmath>

#include "memfuzzy/errors.hpp"

namespace memfuzzy {

double implication_f(double nu, const ImplicationParams& p) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw ParameterError("implication argument must be >= 0");
    if (!(p.t0 > 0.0)) throw ParameterError("t0 must be positive");
    const double r_off = p.device.r_off;
    const auto state = device::apply_flux(device::pristine(p.device), p.device, nu * p.t0);
    return r_off - state.memristance;
}

std::string to_string(AccumulationMode mode) {
    return mode == AccumulationMode::additive ? "additive" : "hardware";
}

Relation::Relation(Universe input, Universe output, AccumulationMode mode, ImplicationParams params)
    : input_(input),
      output_(output),
      mode_(mode),
      params_(params),
      beta_(device::beta(params.device)),
      mu_(output.count(), input.count(), 0.0) {
    if (!(params.t0 > 0.0)) throw ParameterError("t0 must be positive");
    if (mode_ == AccumulationMode::hardware) {
        memristance_.emplace(output.count(), input.count(), params.device.r_off);
    }
}

void Relation::accumulate(const FuzzyNumber& a, const FuzzyNumber& b) {
    if (a.universe() != input_ || b.universe() != output_) {
        throw DimensionError("accumulate: sample universes do not match the relation");
    }
    const auto ag = a.grades();
    const auto bg = b.grades();
    const double r_off = params_.device.r_off;
    const double r_on = params_.device.r_on;
    for (std::size_t i = 0; i < output_.count(); ++i) {
        for (std::size_t j = 0; j < input_.count(); ++j) {
            const double nu = ag[j] + bg[i];
            if (nu == 0.0) continue;
            if (mode_ == AccumulationMode::additive) {
                const auto s = device::apply_flux({r_off, false}, beta_, r_on, nu * params_.t0);
                mu_(i, j) += r_off - s.memristance;
                saturation_count_ += s.saturated ? 1 : 0;
            } else {
                double& m = (*memristance_)(i, j);
                const auto s = device::apply_flux({m, false}, beta_, r_on, nu * params_.t0);
                m = s.memristance;
                mu_(i, j) = r_off - m;
                saturation_count_ += s.saturated ? 1 : 0;
            }
        }
    }
}

Relation relation_from_sets(const FuzzyNumber& a, const FuzzyNumber& b, const ImplicationParams& p,
                            AccumulationMode mode) {
    Relation rel(a.universe(), b.universe(), mode, p);
    rel.accumulate(a, b);
    return rel;
}

FuzzyNumber infer(const Relation& rel, const FuzzyNumber& a) {
    if (a.universe() != rel.input_universe()) {
        throw DimensionError("infer: input is not on the relation's input universe");
    }
    const Matrix& mu = rel.mu();
    const auto x = a.grades();
    std::vector<double> out(mu.rows(), 0.0);
    for (std::size_t i = 0; i < mu.rows(); ++i) {
        double acc = 0.0;
        const auto r = mu.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) acc += r[j] * x[j];
        out[i] = acc;
    }
    return {rel.output_universe(), std::move(out)};
}

}  // namespace memfuzzy
