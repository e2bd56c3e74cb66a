#pragma once

#include <stdexcept>

namespace cavsim {

/// Atomic qubit level addressed by a reflection. g0 leaves the cavity empty
/// (bare-cavity reflection); g1 is resonantly coupled to the cavity mode.
enum class AtomLabel { g0, g1 };

/// standard_decay: non-Hermitian term -i(gamma_s/2)|e><e| only.
/// paper_literal: non-Hermitian term -i(gamma_s/2)(|e><e| - |1><1|); the
/// |1><1| sign amplifies the coupled-branch cavity amplitude, shifting its
/// pole from kappa/2 to (kappa - gamma_s)/2. The g0 branch is untouched
/// either way.
enum class LossModel { standard_decay, paper_literal };

/// All rates in units of the cavity decay rate kappa (kappa = 1 by default).
struct CavityParams {
    double g = 0.0;        // atom-cavity coupling
    double kappa = 1.0;    // cavity energy decay rate
    double gamma_s = 0.0;  // spontaneous emission rate of |e>
    double delta = 0.0;    // cavity detuning from the pulse carrier
    LossModel loss_model = LossModel::standard_decay;

    /// Throws std::invalid_argument if kappa <= 0 or g/gamma_s < 0.
    void validate() const {
        if (!(kappa > 0.0)) {
            throw std::invalid_argument("CavityParams: kappa must be positive");
        }
        if (g < 0.0) {
            throw std::invalid_argument("CavityParams: g must be non-negative");
        }
        if (gamma_s < 0.0) {
            throw std::invalid_argument("CavityParams: gamma_s must be non-negative");
        }
    }
};

} // namespace cavsim
