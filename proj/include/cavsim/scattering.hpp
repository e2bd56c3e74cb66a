#pragma once

#include "cavsim/params.hpp"
#include "cavsim/pulse_grid.hpp"

namespace cavsim {

inline constexpr double kDefaultSettleWindow = 15.0;  // units of 1/kappa
inline constexpr double kSettleResidualTol = 1e-6;

struct ReflectionResult {
    Envelope out;
    double loss_prob = 0.0;            // standard_decay: gamma_s * sum |e(t_i)|^2 dt
    double residual_excitation = 0.0;  // |c|^2 + |e|^2 at the final bin center
    double conditional_phase = 0.0;    // arg <input, out>
};

/// Step-size rule: dt <= 1 / (20 * max(g, kappa, gamma_s, |delta|, 5/T)).
double recommended_dt(const CavityParams& params, double pulse_duration);

/// Grid [0, T + settle] at the recommended step (n rounded up, so dt never
/// exceeds the rule).
TimeGrid default_reflection_grid(const CavityParams& params, double pulse_duration,
                                 double settle = kDefaultSettleWindow);

/// Reflect a single-photon envelope off the cavity, atom in |0> or |1>.
/// Fixed-step RK4 on the single-excitation amplitudes c (cavity) and e
/// (excited atom) starting from c = e = 0, out = in + sqrt(kappa) c.
/// Throws SettleWindowError if the residual excitation at the end of the
/// grid exceeds kSettleResidualTol, NumericalError on NaN/overflow.
ReflectionResult reflect(const Envelope& input, AtomLabel atom, const CavityParams& params);

/// Bare-cavity reflection with detuning (atom-g0 semantics); kept as a
/// separate entry point for the detuned single-sided-cavity limit checks.
ReflectionResult reflect_offresonant(const Envelope& input, const CavityParams& params);

} // namespace cavsim
