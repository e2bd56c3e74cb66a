#pragma once

#include <string>
#include <vector>

namespace cavsim {

struct FitResult {
    std::string model;
    double A = 0.0;
    double B = 0.0;
    double residual = 0.0;  // sum of squared residuals at the final iterate
    bool converged = false;
    int iterations = 0;
};

/// Damped Gauss-Newton (Levenberg) least squares for y ~ A / (1 + B x) with
/// analytic Jacobian, 100-iteration cap, 1e-12 step tolerance; steps are
/// accepted only when they reduce the sum of squares. fit_B = false freezes B
/// at B0 (one-parameter fit). Throws NumericalError if the normal equations
/// become singular or the model denominator collapses.
FitResult fit_rational_loss(const std::vector<double>& x, const std::vector<double>& y,
                            double A0 = 1.0, double B0 = 2.0, bool fit_B = true);

} // namespace cavsim
