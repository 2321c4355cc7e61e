#pragma once

#include <functional>

namespace resonance {

using ScalarFn = std::function<double(double)>;

struct QuadratureResult {
    double value = 0;
    double abs_error = 0;
    int intervals = 0;
};

/** Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].

    The interval with the largest error estimate is bisected until the summed
    estimate drops below abs_tol. The integrand is never evaluated at the
    endpoints, so an integrable singularity or a removable discontinuity there
    is harmless. Throws AccuracyError (carrying the achieved estimate) when
    max_intervals is reached first. a > b is allowed and flips the sign. */
QuadratureResult integrate_adaptive(const ScalarFn& f, double a, double b,
                                    double abs_tol = 1e-12, int max_intervals = 1 << 15);

/// Convenience wrapper returning only the value.
double integrate(const ScalarFn& f, double a, double b, double abs_tol = 1e-12);

}  // namespace resonance
