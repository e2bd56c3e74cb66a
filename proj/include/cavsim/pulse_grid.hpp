#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace cavsim {

using Complex = std::complex<double>;

/// Uniform time grid, times in units of 1/kappa. Envelope samples live at
/// bin centers t_start + (i + 1/2) * dt; the grid spans [t_start, t_end).
struct TimeGrid {
    double t_start = 0.0;
    double dt = 0.0;
    int n_bins = 0;

    double t_center(int i) const { return t_start + (i + 0.5) * dt; }
    double span() const { return dt * n_bins; }
    double t_end() const { return t_start + span(); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Throws std::invalid_argument unless dt > 0 and n_bins >= 2.
TimeGrid make_grid(double t_start, double dt, int n_bins);

/// Complex pulse envelope sampled on a TimeGrid, units 1/sqrt(time), so
/// sum |f_i|^2 dt is the photon weight carried by the envelope.
class Envelope {
public:
    Envelope() = default;
    Envelope(TimeGrid grid, std::vector<Complex> samples);

    const TimeGrid& grid() const { return grid_; }
    const std::vector<Complex>& samples() const { return samples_; }
    std::vector<Complex>& samples() { return samples_; }
    Complex operator[](int i) const { return samples_[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(samples_.size()); }

    friend bool operator==(const Envelope&, const Envelope&) = default;

private:
    TimeGrid grid_;
    std::vector<Complex> samples_;
};

/// sum conj(a_i) b_i dt. Throws std::invalid_argument on grid mismatch.
Complex inner_product(const Envelope& a, const Envelope& b);
double squared_norm(const Envelope& e);
double norm(const Envelope& e);
Envelope normalized(const Envelope& e);

/// |<a, b>| / (|a| |b|), the norm-free shape overlap in [0, 1].
double shape_overlap(const Envelope& a, const Envelope& b);

enum class PulseShape { gaussian_paper, custom };

/// Single-photon pulse occupying [0, T]. gaussian_paper is
/// exp(-(t - T/2)^2 / (T/5)^2), truncated to [0, T] and renormalized.
struct PulseSpec {
    double duration = 0.0;
    PulseShape shape = PulseShape::gaussian_paper;
};

/// Samples the spec's shape at the bin centers, zero outside [0, T], and
/// normalizes so squared_norm == 1. The grid must cover [0, T].
Envelope make_gaussian_pulse(const PulseSpec& spec, const TimeGrid& grid);

/// Delimited text, header "t,re,im", one row per bin, 12 significant digits.
void write_envelope_csv(const Envelope& e, std::ostream& os,
                        const std::vector<std::string>& provenance = {});
Envelope read_envelope_csv(std::istream& is);

} // namespace cavsim
