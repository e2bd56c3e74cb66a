#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cavsim/pulse_grid.hpp"

using namespace cavsim;

TEST_CASE("make_grid basics and validation") {
    TimeGrid g = make_grid(0.0, 0.1, 10);
    CHECK(g.t_start == 0.0);
    CHECK(g.span() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.t_center(0) == doctest::Approx(0.05));
    CHECK(g.t_center(9) == doctest::Approx(0.95));

    TimeGrid g2 = make_grid(0.0, 240.0 / 4096.0, 4096);
    CHECK(g2.t_end() == doctest::Approx(240.0).epsilon(1e-12));

    CHECK_THROWS_AS(make_grid(0.0, -0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 0.1, 1), std::invalid_argument);
}

TEST_CASE("gaussian pulse: normalization, peak position, width") {
    const double T = 240.0;
    TimeGrid grid = make_grid(0.0, T / 4096.0, 4096 + 512);  // covers [0, 270)
    Envelope f = make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, grid);

    CHECK(squared_norm(f) == doctest::Approx(1.0).epsilon(1e-12));

    // Peak sample at the bin nearest t = T/2.
    int peak = 0;
    for (int i = 0; i < f.size(); ++i) {
        if (std::abs(f[i]) > std::abs(f[peak])) peak = i;
    }
    CHECK(std::abs(grid.t_center(peak) - T / 2.0) <= grid.dt);

    // Value at t = T/2 +- T/5 is e^-1 of the peak, within discretization error.
    auto nearest = [&](double t) {
        int best = 0;
        for (int i = 0; i < f.size(); ++i) {
            if (std::abs(grid.t_center(i) - t) < std::abs(grid.t_center(best) - t)) best = i;
        }
        return best;
    };
    double peak_val = std::abs(f[nearest(T / 2.0)]);
    for (double t : {T / 2.0 - T / 5.0, T / 2.0 + T / 5.0}) {
        double ratio = std::abs(f[nearest(t)]) / peak_val;
        CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(5e-3));
    }

    // Zero outside [0, T].
    TimeGrid wide = make_grid(-20.0, 0.1, 3000);  // [-20, 280)
    Envelope fw = make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, wide);
    for (int i = 0; i < fw.size(); ++i) {
        double t = wide.t_center(i);
        if (t < 0.0 || t > T) CHECK(std::abs(fw[i]) == 0.0);
    }

    // Grid shorter than the pulse is rejected.
    TimeGrid shortg = make_grid(0.0, 0.1, 100);  // spans [0, 10) < T
    CHECK_THROWS_AS(make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, shortg),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian_pulse(PulseSpec{-1.0, PulseShape::gaussian_paper}, grid),
                    std::invalid_argument);
}

TEST_CASE("inner product: normalization, linearity, orthogonality, symmetry") {
    TimeGrid grid = make_grid(0.0, 0.05, 2000);  // [0, 100)
    Envelope f = make_gaussian_pulse(PulseSpec{60.0, PulseShape::gaussian_paper}, grid);

    CHECK(std::abs(inner_product(f, f) - Complex(1.0)) < 1e-12);

    std::vector<Complex> neg(f.samples());
    for (auto& v : neg) v = -v;
    Envelope fneg(grid, neg);
    CHECK(std::abs(inner_product(f, fneg) - Complex(-1.0)) < 1e-12);

    // Disjoint supports: shift the samples far past the pulse support.
    std::vector<Complex> shifted(static_cast<size_t>(grid.n_bins), 0.0);
    for (int i = 0; i < grid.n_bins; ++i) {
        double t = grid.t_center(i);
        if (t > 70.0) shifted[static_cast<size_t>(i)] = 1.0;
    }
    Envelope g(grid, shifted);
    CHECK(std::abs(inner_product(f, g)) < 1e-14);

    // Conjugate symmetry on complex envelopes.
    std::vector<Complex> a(static_cast<size_t>(grid.n_bins)), b(a);
    for (int i = 0; i < grid.n_bins; ++i) {
        double t = grid.t_center(i);
        a[static_cast<size_t>(i)] = Complex(std::sin(0.1 * t), std::cos(0.07 * t));
        b[static_cast<size_t>(i)] = Complex(std::cos(0.05 * t), std::sin(0.13 * t));
    }
    Envelope ea(grid, a), eb(grid, b);
    CHECK(std::abs(inner_product(ea, eb) - std::conj(inner_product(eb, ea))) < 1e-12);

    // Grid mismatch is rejected.
    TimeGrid other = make_grid(0.0, 0.1, 1000);
    Envelope h = make_gaussian_pulse(PulseSpec{60.0, PulseShape::gaussian_paper}, other);
    CHECK_THROWS_AS(inner_product(f, h), std::invalid_argument);
}

TEST_CASE("gaussian pulse is invariant under grid refinement") {
    const double T = 120.0;
    TimeGrid coarse = make_grid(0.0, 0.1, 1400);
    TimeGrid fine = make_grid(0.0, 0.05, 2800);
    Envelope fc = make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, coarse);
    Envelope ff = make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, fine);

    CHECK(std::abs(squared_norm(fc) - 1.0) < 1e-12);
    CHECK(std::abs(squared_norm(ff) - 1.0) < 1e-12);

    // Inner product against a fixed smooth reference changes < 1e-6.
    auto smooth = [](double t) { return std::exp(-(t - 50.0) * (t - 50.0) / 3000.0); };
    auto overlap = [&](const Envelope& e) {
        Complex acc = 0.0;
        for (int i = 0; i < e.size(); ++i) acc += std::conj(e[i]) * smooth(e.grid().t_center(i));
        return acc * e.grid().dt;
    };
    CHECK(std::abs(overlap(fc) - overlap(ff)) < 1e-6);
}

TEST_CASE("norm is invariant under time translation of the grid") {
    TimeGrid grid = make_grid(0.0, 0.05, 3000);
    Envelope f = make_gaussian_pulse(PulseSpec{100.0, PulseShape::gaussian_paper}, grid);
    TimeGrid moved = make_grid(-37.25, 0.05, 3000);
    Envelope g(moved, f.samples());
    CHECK(squared_norm(g) == squared_norm(f));
}

TEST_CASE("shape_overlap is norm-free and bounded") {
    TimeGrid grid = make_grid(0.0, 0.05, 3000);
    Envelope f = make_gaussian_pulse(PulseSpec{100.0, PulseShape::gaussian_paper}, grid);
    std::vector<Complex> scaled(f.samples());
    for (auto& v : scaled) v *= Complex(0.0, 2.5);  // scale and rotate
    Envelope g(grid, scaled);
    CHECK(shape_overlap(f, g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shape_overlap(f, f) <= 1.0 + 1e-12);
}

TEST_CASE("envelope CSV round-trip") {
    TimeGrid grid = make_grid(0.0, 0.125, 800);
    Envelope f = make_gaussian_pulse(PulseSpec{60.0, PulseShape::gaussian_paper}, grid);
    std::vector<Complex> samples(f.samples());
    for (size_t i = 0; i < samples.size(); ++i) {
        samples[i] *= std::polar(1.0, 0.01 * static_cast<double>(i));  // make it complex
    }
    Envelope fc(grid, samples);

    std::stringstream ss;
    write_envelope_csv(fc, ss, {"demo provenance line", "second line"});
    Envelope back = read_envelope_csv(ss);

    REQUIRE(back.size() == fc.size());
    CHECK(std::abs(back.grid().dt - grid.dt) < 1e-9);
    CHECK(std::abs(back.grid().t_start - grid.t_start) < 1e-9);
    double peak = 0.0;
    for (int i = 0; i < fc.size(); ++i) peak = std::max(peak, std::abs(fc[i]));
    for (int i = 0; i < fc.size(); ++i) {
        CHECK(std::abs(back[i] - fc[i]) < 1e-9 * peak);
    }
}
