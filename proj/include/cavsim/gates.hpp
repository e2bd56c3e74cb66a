#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cavsim/params.hpp"
#include "cavsim/pulse_grid.hpp"

namespace cavsim {

enum class Pol { h, v, vac };

/// Polarization qubit of a single-photon pulse with a temporal shape.
/// |c_h|^2 + |c_v|^2 must be 1 within 1e-10.
struct PhotonQubit {
    PhotonQubit(Complex c_h, Complex c_v, Envelope shape);
    Complex c_h;
    Complex c_v;
    Envelope shape;
};

struct AtomQubit {
    Complex a0 = 0.0;
    Complex a1 = 0.0;
    /// |Phi_ai> = (|0> + |1>)/sqrt(2), the working superposition.
    static AtomQubit plus();
};

/// One product term of the joint atom + pulses state: amplitude times a
/// definite atom level, a definite polarization per pulse, and one envelope
/// per non-vacuum pulse slot.
struct Branch {
    AtomLabel atom = AtomLabel::g0;
    std::vector<Pol> pols;
    Complex amplitude = 0.0;
    std::vector<std::optional<Envelope>> envelopes;  // nullopt for vac slots

    bool same_key(const Branch& other) const;
};

/// Finitely-branched joint state of the atom and one or more pulses, plus a
/// scalar weight for amplitude lost to spontaneous emission. Reflections act
/// on one pulse at a time conditioned only on the atom label, so the state
/// stays a short sum of product terms; no joint temporal grid is ever built.
/// Terms with equal (atom, pols) keys but different envelopes can coexist
/// (rotations after lossy reflections produce them), so norms and overlaps
/// are Gram sums over same-key term pairs, not sums of |amplitude|^2.
class JointState {
public:
    JointState() = default;

    static JointState product(const AtomQubit& atom, const std::vector<PhotonQubit>& pulses);
    /// Single pulse containing no photon (used by the total-number QND).
    static JointState vacuum_pulse(const AtomQubit& atom);

    int pulse_count() const { return n_pulses_; }
    const std::vector<Branch>& branches() const { return branches_; }
    double lost_weight() const { return lost_weight_; }

    double norm_squared() const;
    /// Surviving-state overlap <this|other>; lost weight does not contribute.
    Complex inner(const JointState& other) const;
    /// Terms restricted to one polarization pattern (atom still summed over).
    JointState sector(const std::vector<Pol>& pols) const;
    /// Probability of finding the atom in `label` and the renormalized
    /// post-measurement state (empty state if the probability vanishes).
    std::pair<double, JointState> project_atom(AtomLabel label) const;

    // Mutating primitives used by the protocol ops below.
    void add_branch(Branch b);
    void set_lost_weight(double w) { lost_weight_ = w; }
    void add_lost_weight(double w) { lost_weight_ += w; }
    void set_pulse_count(int n) { n_pulses_ = n; }
    /// Merge terms with equal keys and equal envelopes; drop terms with
    /// negligible amplitude (< 1e-14 of the largest).
    void merge_branches();

private:
    std::vector<Branch> branches_;
    double lost_weight_ = 0.0;
    int n_pulses_ = 0;
};

double state_distance(const JointState& a, const JointState& b);

enum class GateMode { ideal, simulated };

/// Raman rotation R(theta): |0> -> cos(theta/2)|0> + sin(theta/2)|1>,
/// |1> -> -sin(theta/2)|0> + cos(theta/2)|1>.
JointState rotate_atom(const JointState& state, double theta);

/// Atom-photon controlled phase flip U = exp(i pi |0><0| (x) |h><h|) on one
/// pulse. ideal: multiply matching amplitudes by -1. simulated: send the h
/// component of every branch through reflect() for that branch's atom level
/// (v components hit the mirror and pass unchanged); the norm deficit of the
/// reflected envelopes accrues to lost_weight.
JointState cpf_atom_photon(const JointState& state, int pulse_index,
                           const CavityParams& params, GateMode mode);

/// Swap h and v labels of one pulse (external polarization flip, lossless).
JointState flip_polarization(const JointState& state, int pulse_index);

struct GateReport {
    double fidelity = 0.0;
    double success_prob = 0.0;
    /// Extracted phase per polarization sector ("hh", "hv", ...), relative
    /// to the gate input; 0 for empty sectors.
    std::vector<std::pair<std::string, double>> phases;
};

/// Photon-photon controlled phase flip via the five-step sequence
/// reflect j, R(pi/2), reflect k, R(-pi/2), reflect j. The atom must start
/// in |Phi_ai> (throws std::invalid_argument otherwise). The report compares
/// against the ideal CPF applied to the same input.
std::pair<JointState, GateReport> cpf_photon_photon(const JointState& input,
                                                    const CavityParams& params, GateMode mode);

/// Ideal CPF reference: flips the sign of the (h, h) sectors, envelopes kept.
JointState ideal_cpf_output(const JointState& input);

/// F = |<ideal|actual>| / ||actual|| (loss excluded by construction).
/// Throws UndefinedFidelityError when ||actual|| = 0. Sector phases are
/// measured against `ideal`.
GateReport conditional_fidelity(const JointState& actual, const JointState& ideal);

struct MeasurementOutcome {
    std::string label;
    double probability = 0.0;  // unconditioned; outcomes sum to 1 - lost_weight
    JointState post_state;
};

/// Photon-number QND on the h component: prepare |Phi_ai>, reflect, R(pi/2),
/// measure the atom. Outcome "0" iff the h component carries the photon.
std::vector<MeasurementOutcome> qnd_photon_number(const PhotonQubit& pulse,
                                                  const CavityParams& params, GateMode mode);

/// Parity of the total h-photon count over a pulse train reflected in
/// sequence from the same atom. Outcomes "odd" (atom "0") and "even".
std::vector<MeasurementOutcome> qnd_parity(const std::vector<PhotonQubit>& pulses,
                                           const CavityParams& params, GateMode mode);

/// Total photon number of one pulse irrespective of polarization: reflect,
/// flip h<->v, reflect again, R(pi/2). Outcome labels are photon counts;
/// nullopt simulates a vacuum input. The surviving photon comes out with its
/// polarization flipped (the protocol does not undo the flip).
std::vector<MeasurementOutcome> qnd_total_number(const std::optional<PhotonQubit>& pulse,
                                                 const CavityParams& params, GateMode mode);

} // namespace cavsim
