#pragma once

#include "cavsim/params.hpp"
#include "cavsim/pulse_grid.hpp"
#include "cavsim/scattering.hpp"

namespace cavsim {

/// Monochromatic reflection coefficient for an e^{-i omega t} component.
///
///   atom g0:  r0(w) = (i(delta - w) - kappa/2) / (i(delta - w) + kappa/2)
///   atom g1:  r1(w) = 1 - kappa / [(kappa/2 - iw + i delta) + g^2/(gamma_s/2 - iw)]
///
/// both derived as the steady state of the input-output equations, so the
/// two solver routes share no code. g = 0 reduces exactly to the g0 branch;
/// an undamped atom exactly on resonance (gamma_s = 0, w = 0) returns +1.
Complex reflection_coefficient(double omega, AtomLabel atom, const CavityParams& params);

/// Frequency-domain counterpart of reflect(): zero-pad to at least 4x the
/// input length, multiply the spectrum by r(omega) bin by bin, transform
/// back. loss_prob is ||in||^2 - ||out||^2 and residual_excitation is 0 by
/// construction.
ReflectionResult reflect_spectral(const Envelope& input, AtomLabel atom,
                                  const CavityParams& params);

} // namespace cavsim
