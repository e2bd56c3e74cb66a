#include "cavsim/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "cavsim/errors.hpp"

namespace cavsim {

Complex reflection_coefficient(double omega, AtomLabel atom, const CavityParams& params) {
    params.validate();
    const Complex i_unit(0.0, 1.0);
    const bool coupled = (atom == AtomLabel::g1) && params.g > 0.0;
    // Fourier convention f(t) ~ e^{-i omega t}, so d/dt -> -i omega and the
    // cavity pole reads decay/2 - i(omega - delta). The paper-literal loss
    // model shifts the coupled-branch pole decay to kappa - gamma_s while the
    // outcoupling numerator stays kappa.
    double pole_decay = params.kappa;
    if (coupled && params.loss_model == LossModel::paper_literal) {
        pole_decay = params.kappa - params.gamma_s;
    }
    Complex cavity_pole = pole_decay / 2.0 - i_unit * (omega - params.delta);
    if (!coupled) {
        return 1.0 - params.kappa / cavity_pole;
    }
    Complex atom_pole = params.gamma_s / 2.0 - i_unit * omega;
    if (atom_pole == Complex(0.0, 0.0)) {
        // gamma_s = 0 at omega = 0: the divergent back-action pins r to +1.
        return Complex(1.0, 0.0);
    }
    return 1.0 - params.kappa / (cavity_pole + params.g * params.g / atom_pole);
}

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

} // namespace

ReflectionResult reflect_spectral(const Envelope& in, AtomLabel atom,
                                  const CavityParams& params) {
    params.validate();
    const TimeGrid& grid = in.grid();
    const int n = grid.n_bins;
    const double dt = grid.dt;
    const int m = next_pow2(4 * n);  // zero padding suppresses wrap-around

    std::vector<Complex> buf(m, Complex(0.0));
    for (int i = 0; i < n; ++i) buf[i] = in[i];

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        auto* data = reinterpret_cast<fftw_complex*>(buf.data());
        fwd = fftw_plan_dft_1d(m, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(m, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (fwd == nullptr || bwd == nullptr) {
        throw NumericalError("reflect_spectral: FFTW plan creation failed");
    }

    fftw_execute(fwd);
    // FFTW forward uses e^{-2 pi i k n / N}; with envelopes written as
    // f(t) ~ e^{-i omega t}, bin k therefore carries omega_k = -2 pi k~ /(N dt)
    // with k~ the signed alias of k.
    for (int k = 0; k < m; ++k) {
        int k_signed = (k <= m / 2) ? k : k - m;
        double omega = -2.0 * M_PI * k_signed / (m * dt);
        buf[k] *= reflection_coefficient(omega, atom, params);
    }
    fftw_execute(bwd);

    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = buf[i] / static_cast<double>(m);

    ReflectionResult result;
    result.out = Envelope(grid, std::move(out));
    result.residual_excitation = 0.0;
    result.loss_prob = squared_norm(in) - squared_norm(result.out);
    result.conditional_phase = std::arg(inner_product(in, result.out));
    return result;
}

} // namespace cavsim
