#include "cavsim/pulse_grid.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cavsim {

TimeGrid make_grid(double t_start, double dt, int n_bins) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("make_grid: dt must be positive");
    }
    if (n_bins < 2) {
        throw std::invalid_argument("make_grid: need at least 2 bins");
    }
    return TimeGrid{t_start, dt, n_bins};
}

Envelope::Envelope(TimeGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (static_cast<int>(samples_.size()) != grid_.n_bins) {
        throw std::invalid_argument("Envelope: sample count does not match grid");
    }
}

Complex inner_product(const Envelope& a, const Envelope& b) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument("inner_product: envelopes live on different grids");
    }
    Complex acc = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc * a.grid().dt;
}

double squared_norm(const Envelope& e) {
    double acc = 0.0;
    for (int i = 0; i < e.size(); ++i) {
        acc += std::norm(e[i]);
    }
    return acc * e.grid().dt;
}

double norm(const Envelope& e) { return std::sqrt(squared_norm(e)); }

Envelope normalized(const Envelope& e) {
    double n = norm(e);
    if (!(n > 0.0)) {
        throw std::invalid_argument("normalized: envelope has zero norm");
    }
    std::vector<Complex> s = e.samples();
    for (Complex& v : s) v /= n;
    return Envelope(e.grid(), std::move(s));
}

double shape_overlap(const Envelope& a, const Envelope& b) {
    double na = norm(a), nb = norm(b);
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw std::invalid_argument("shape_overlap: zero-norm envelope");
    }
    return std::abs(inner_product(a, b)) / (na * nb);
}

Envelope make_gaussian_pulse(const PulseSpec& spec, const TimeGrid& grid) {
    if (spec.shape != PulseShape::gaussian_paper) {
        throw std::invalid_argument("make_gaussian_pulse: spec is not the gaussian shape");
    }
    double T = spec.duration;
    if (!(T > 0.0)) {
        throw std::invalid_argument("make_gaussian_pulse: duration must be positive");
    }
    if (grid.t_start > 0.0 || grid.t_end() < T) {
        throw std::invalid_argument("make_gaussian_pulse: grid does not cover [0, T]");
    }
    double width = T / 5.0;
    std::vector<Complex> s(grid.n_bins, Complex(0.0));
    for (int i = 0; i < grid.n_bins; ++i) {
        double t = grid.t_center(i);
        if (t < 0.0 || t > T) continue;
        double arg = (t - T / 2.0) / width;
        s[i] = std::exp(-arg * arg);
    }
    return normalized(Envelope(grid, std::move(s)));
}

void write_envelope_csv(const Envelope& e, std::ostream& os,
                        const std::vector<std::string>& provenance) {
    for (const std::string& line : provenance) {
        os << "# " << line << "\n";
    }
    os << "t,re,im\n";
    char buf[128];
    for (int i = 0; i < e.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", e.grid().t_center(i),
                      e[i].real(), e[i].imag());
        os << buf;
    }
}

Envelope read_envelope_csv(std::istream& is) {
    std::vector<double> t, re, im;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header row
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        double a, b, c;
        char c1, c2;
        if (!(row >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',') {
            throw std::invalid_argument("read_envelope_csv: malformed row: " + line);
        }
        t.push_back(a);
        re.push_back(b);
        im.push_back(c);
    }
    if (t.size() < 2) {
        throw std::invalid_argument("read_envelope_csv: need at least 2 samples");
    }
    double dt = t[1] - t[0];
    if (!(dt > 0.0)) {
        throw std::invalid_argument("read_envelope_csv: non-increasing time column");
    }
    for (size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
            throw std::invalid_argument("read_envelope_csv: non-uniform time spacing");
        }
    }
    TimeGrid grid = make_grid(t[0] - dt / 2.0, dt, static_cast<int>(t.size()));
    std::vector<Complex> s(t.size());
    for (size_t i = 0; i < t.size(); ++i) s[i] = Complex(re[i], im[i]);
    return Envelope(grid, std::move(s));
}

} // namespace cavsim
