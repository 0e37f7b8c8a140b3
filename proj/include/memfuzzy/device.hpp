#pragma once

// Closed-form HP linear-drift memristor.
//
// Under an applied voltage v the HP model gives d(M^2)/dt = -beta * v, so
// the squared memristance falls linearly in the applied flux. Every write
// in this library goes through apply_flux(); there is no time stepping.

namespace memfuzzy::device {

struct MemristorParams {
    double mu_v = 1e-14;  ///< ion mobility, m^2 s^-1 V^-1
    double D = 1e-8;      ///< device length, m
    double r_on = 1e3;    ///< minimum memristance, ohm
    double r_off = 1e5;   ///< maximum memristance, ohm

    bool operator==(const MemristorParams&) const = default;
};

/// Throws ParameterError unless 0 < r_on < r_off, mu_v > 0 and D > 0.
void validate(const MemristorParams& params);

struct MemristorState {
    double memristance = 0.0;  ///< ohm, always in [r_on, r_off]
    bool saturated = false;    ///< last update was clamped at r_on

    bool operator==(const MemristorState&) const = default;
};

/// A device in its as-fabricated state, M = r_off.
[[nodiscard]] MemristorState pristine(const MemristorParams& params) noexcept;

/// beta = 2 mu_v r_on (r_off - r_on) / D^2, in ohm^2 V^-1 s^-1.
[[nodiscard]] double beta(const MemristorParams& params);

/// Applies flux (V*s, must be >= 0) in the memristance-decreasing polarity:
/// M_new = sqrt(max(M_old^2 - beta*flux, r_on^2)).
/// Reversed polarity is not modelled and is rejected with ParameterError.
[[nodiscard]] MemristorState apply_flux(const MemristorState& state,
                                        const MemristorParams& params, double flux);

/// Same update with a precomputed beta; this is the inner-loop form.
[[nodiscard]] MemristorState apply_flux(const MemristorState& state, double beta,
                                        double r_on, double flux) noexcept;

/// Stored value r_off - M.
[[nodiscard]] double delta_m(const MemristorState& state, const MemristorParams& params) noexcept;

/// Normalised doped-region width w/D = (r_off - M)/(r_off - r_on).
[[nodiscard]] double state_fraction(const MemristorState& state,
                                    const MemristorParams& params) noexcept;

}  // namespace memfuzzy::device
