#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cavsim/scattering.hpp"
#include "cavsim/spectral.hpp"

using namespace cavsim;

namespace {

CavityParams params_of(double g, double gamma_s, double delta = 0.0,
                       LossModel lm = LossModel::standard_decay) {
    return CavityParams{g, 1.0, gamma_s, delta, lm};
}

Envelope gaussian_on_default(const CavityParams& p, double T) {
    TimeGrid grid = default_reflection_grid(p, T);
    return make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, grid);
}

double l2_distance(const Envelope& a, const Envelope& b) {
    double acc = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        double d = std::abs(a[i] - b[i]);
        acc += d * d;
    }
    return std::sqrt(acc * a.grid().dt);
}

} // namespace

TEST_CASE("reflection coefficient: frozen closed-form values") {
    CHECK(std::abs(reflection_coefficient(0.0, AtomLabel::g0, params_of(3.0, 1.0)) -
                   Complex(-1.0)) < 1e-12);
    CHECK(std::abs(reflection_coefficient(0.0, AtomLabel::g0, params_of(0.0, 0.0, 0.5)) -
                   Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(reflection_coefficient(0.0, AtomLabel::g1, params_of(3.0, 1.0)) -
                   Complex(35.0 / 37.0)) < 1e-12);
    // Lossless strong coupling: r(0) = +1 for any g > 0.
    for (double g : {0.1, 1.0, 3.0}) {
        CHECK(std::abs(reflection_coefficient(0.0, AtomLabel::g1, params_of(g, 0.0)) -
                       Complex(1.0)) < 1e-12);
    }
    // Literal loss model shifts the coupled-branch cavity pole: r(0) = 17/18.
    CHECK(std::abs(reflection_coefficient(
                       0.0, AtomLabel::g1,
                       params_of(3.0, 1.0, 0.0, LossModel::paper_literal)) -
                   Complex(17.0 / 18.0)) < 1e-12);
}

TEST_CASE("reflection coefficient: symmetry and modulus bounds") {
    for (double g : {0.0, 1.0, 3.0}) {
        for (double gs : {0.0, 0.5, 1.0}) {
            CavityParams p = params_of(g, gs);
            for (AtomLabel atom : {AtomLabel::g0, AtomLabel::g1}) {
                for (double w : {0.1, 0.7, 2.0, 9.0}) {
                    Complex rp = reflection_coefficient(w, atom, p);
                    Complex rm = reflection_coefficient(-w, atom, p);
                    CHECK(std::abs(rm - std::conj(rp)) < 1e-15);  // Delta = 0 symmetry
                    CHECK(std::abs(rp) <= 1.0 + 1e-12);           // passive filter
                    if (gs == 0.0) CHECK(std::abs(std::abs(rp) - 1.0) < 1e-12);
                }
            }
        }
    }
    // Detuned coefficients stay bounded too.
    CavityParams pd = params_of(3.0, 1.0, 0.5);
    for (double w : {-3.0, -0.2, 0.0, 0.4, 5.0}) {
        CHECK(std::abs(reflection_coefficient(w, AtomLabel::g1, pd)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("spectral reflection: phase flip and norm preservation") {
    CavityParams p = params_of(3.0, 0.0);
    Envelope in = gaussian_on_default(p, 240.0);

    ReflectionResult r0 = reflect_spectral(in, AtomLabel::g0, p);
    Complex ov = inner_product(in, r0.out);
    // All-pass filter with a 4/kappa group delay: the overlap drops to the
    // delayed-Gaussian value while the phase flips.
    double w = 240.0 / 5.0;
    CHECK(std::abs(ov) == doctest::Approx(std::exp(-16.0 / (2.0 * w * w))).epsilon(5e-4));
    CHECK(std::abs(std::abs(std::arg(ov)) - M_PI) < 1e-3);

    // gamma_s = 0: |r(omega)| = 1, so the filter preserves the norm.
    for (AtomLabel atom : {AtomLabel::g0, AtomLabel::g1}) {
        ReflectionResult r = reflect_spectral(in, atom, p);
        CHECK(std::abs(squared_norm(r.out) - 1.0) < 1e-10);
    }
}

TEST_CASE("time-domain and spectral solvers agree over the full parameter matrix") {
    double worst_l2 = 0.0, worst_dp = 0.0;
    for (double T : {60.0, 120.0, 240.0}) {
        for (double delta : {0.0, 0.5}) {
            for (double gs : {0.0, 1.0}) {
                // Coupled atom across the coupling ladder.
                for (double g : {0.0, 1.0, 3.0, 6.0}) {
                    CavityParams p = params_of(g, gs, delta);
                    Envelope in = gaussian_on_default(p, T);
                    ReflectionResult rt = reflect(in, AtomLabel::g1, p);
                    ReflectionResult rs = reflect_spectral(in, AtomLabel::g1, p);
                    worst_l2 = std::max(worst_l2, l2_distance(rt.out, rs.out));
                    worst_dp = std::max(worst_dp, std::abs(rt.loss_prob - rs.loss_prob));
                }
                // Empty cavity (g irrelevant).
                CavityParams p = params_of(3.0, gs, delta);
                Envelope in = gaussian_on_default(p, T);
                ReflectionResult rt = reflect(in, AtomLabel::g0, p);
                ReflectionResult rs = reflect_spectral(in, AtomLabel::g0, p);
                worst_l2 = std::max(worst_l2, l2_distance(rt.out, rs.out));
                worst_dp = std::max(worst_dp, std::abs(rt.loss_prob - rs.loss_prob));
            }
        }
    }
    CHECK(worst_l2 < 1e-3);
    CHECK(worst_dp < 1e-4);
}

TEST_CASE("solvers agree in the literal loss model too") {
    CavityParams p = params_of(3.0, 1.0, 0.0, LossModel::paper_literal);
    Envelope in = gaussian_on_default(p, 120.0);
    ReflectionResult rt = reflect(in, AtomLabel::g1, p);
    ReflectionResult rs = reflect_spectral(in, AtomLabel::g1, p);
    CHECK(l2_distance(rt.out, rs.out) < 1e-3);
    CHECK(std::abs(rt.loss_prob - rs.loss_prob) < 1e-4);
}

TEST_CASE("narrowband limit: overlap approaches r(0) monotonically in T") {
    CavityParams p = params_of(3.0, 1.0);
    Complex r0 = reflection_coefficient(0.0, AtomLabel::g1, p);
    double prev = 1e9;
    for (double T : {60.0, 120.0, 240.0}) {
        Envelope in = gaussian_on_default(p, T);
        ReflectionResult r = reflect_spectral(in, AtomLabel::g1, p);
        double err = std::abs(inner_product(in, r.out) - r0);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}
