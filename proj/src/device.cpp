#include "memfuzzy/device.hpp"

#include <cmath>
#include <string>

#include "memfuzzy/errors.hpp"

namespace memfuzzy::device {

void validate(const MemristorParams& params) {
    if (!(params.mu_v > 0.0) || !std::isfinite(params.mu_v)) {
        throw ParameterError("mu_v must be positive and finite");
    }
    if (!(params.D > 0.0) || !std::isfinite(params.D)) {
        throw ParameterError("D must be positive and finite");
    }
    if (!(params.r_on > 0.0) || !(params.r_on < params.r_off) || !std::isfinite(params.r_off)) {
        throw ParameterError("memristance bounds must satisfy 0 < r_on < r_off, got r_on=" +
                             std::to_string(params.r_on) + " r_off=" + std::to_string(params.r_off));
    }
}

MemristorState pristine(const MemristorParams& params) noexcept {
    return {params.r_off, false};
}

double beta(const MemristorParams& params) {
    validate(params);
    return 2.0 * params.mu_v * params.r_on * (params.r_off - params.r_on) / (params.D * params.D);
}

MemristorState apply_flux(const MemristorState& state, double beta, double r_on,
                          double flux) noexcept {
    const double m2 = state.memristance * state.memristance - beta * flux;
    const double floor2 = r_on * r_on;
    if (m2 < floor2) {
        return {r_on, true};
    }
    return {std::sqrt(m2), false};
}

MemristorState apply_flux(const MemristorState& state, const MemristorParams& params,
                          double flux) {
    if (!(flux >= 0.0) || !std::isfinite(flux)) {
        throw ParameterError("flux must be finite and non-negative (polarity reversal unsupported)");
    }
    if (flux == 0.0) {
        return {state.memristance, false};
    }
    return apply_flux(state, beta(params), params.r_on, flux);
}

double delta_m(const MemristorState& state, const MemristorParams& params) noexcept {
    return params.r_off - state.memristance;
}

double state_fraction(const MemristorState& state, const MemristorParams& params) noexcept {
    return (params.r_off - state.memristance) / (params.r_off - params.r_on);
}

}  // namespace memfuzzy::device
