#include "cavsim/fitting.hpp"

#include <cmath>
#include <stdexcept>

#include "cavsim/errors.hpp"

namespace cavsim {

namespace {

double sum_squares(const std::vector<double>& x, const std::vector<double>& y, double A,
                   double B) {
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - A / (1.0 + B * x[i]);
        ss += r * r;
    }
    return ss;
}

} // namespace

FitResult fit_rational_loss(const std::vector<double>& x, const std::vector<double>& y,
                            double A0, double B0, bool fit_B) {
    if (x.size() != y.size() || x.size() < (fit_B ? 2u : 1u)) {
        throw std::invalid_argument("fit_rational_loss: need matching x/y with enough points");
    }
    const int n = static_cast<int>(x.size());
    double A = A0, B = B0;

    // Gauss-Newton on residuals r_i = y_i - A/(1 + B x_i) with Levenberg
    // damping: the undamped step from (1, 2) overshoots B past the model pole
    // on typical loss data and never recovers, so steps are accepted only if
    // they reduce the sum of squares, with the damping raised until one does.
    FitResult result;
    result.model = "A/(1+B*x)";
    double lambda = 1e-3;
    double ss = sum_squares(x, y, A, B);
    if (!std::isfinite(ss)) {
        throw NumericalError("fit_rational_loss: model undefined at the initial point");
    }
    for (int iter = 0; iter < 100; ++iter) {
        result.iterations = iter + 1;
        double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0;
        for (int i = 0; i < n; ++i) {
            double denom = 1.0 + B * x[i];
            if (std::abs(denom) < 1e-12) {
                throw NumericalError("fit_rational_loss: model pole crosses a data point");
            }
            double model = A / denom;
            double r = y[i] - model;
            double jA = 1.0 / denom;                  // d model / dA
            double jB = -A * x[i] / (denom * denom);  // d model / dB
            jtj00 += jA * jA;
            jtj01 += jA * jB;
            jtj11 += jB * jB;
            jtr0 += jA * r;
            jtr1 += jB * r;
        }

        double dA = 0, dB = 0;
        bool accepted = false;
        for (int tries = 0; tries < 60 && !accepted; ++tries) {
            double m00 = jtj00 * (1.0 + lambda);
            double m11 = jtj11 * (1.0 + lambda);
            if (fit_B) {
                double det = m00 * m11 - jtj01 * jtj01;
                if (std::abs(det) < 1e-300) {
                    throw NumericalError("fit_rational_loss: singular normal equations");
                }
                dA = (m11 * jtr0 - jtj01 * jtr1) / det;
                dB = (m00 * jtr1 - jtj01 * jtr0) / det;
            } else {
                if (m00 < 1e-300) {
                    throw NumericalError("fit_rational_loss: singular normal equations");
                }
                dA = jtr0 / m00;
                dB = 0.0;
            }
            double ss_next = sum_squares(x, y, A + dA, B + dB);
            if (std::isfinite(ss_next) && ss_next <= ss) {
                A += dA;
                B += dB;
                ss = ss_next;
                lambda = std::max(lambda * 0.3, 1e-14);
                accepted = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) {
            throw NumericalError("fit_rational_loss: no descent step found");
        }
        if (!std::isfinite(A) || !std::isfinite(B)) {
            throw NumericalError("fit_rational_loss: iteration diverged");
        }
        if (std::abs(dA) < 1e-12 * std::max(1.0, std::abs(A)) &&
            std::abs(dB) < 1e-12 * std::max(1.0, std::abs(B))) {
            result.converged = true;
            break;
        }
    }

    result.A = A;
    result.B = B;
    result.residual = ss;
    return result;
}

} // namespace cavsim
