#pragma once

// Brute-force numerical counterparts of the closed forms used by the
// predictor. They share no code path with oscint/quadrature (Boost
// quadrature underneath) and exist for the verify suite and the tests.

#include "resonance/model.hpp"
#include "resonance/oscint.hpp"

#include <functional>

namespace resonance::oracle {

/** Integral over the real line of F(phase + curvature theta^2) for a 2 pi-periodic,
    zero-mean F: Gauss-Kronrod panels (one per phase period) up to theta = cutoff,
    plus a two-term integration-by-parts tail built from numerically computed
    periodic antiderivatives of F. */
double oscillatory_theta_integral(const std::function<double(double)>& periodic, double phase,
                                  double curvature, double cutoff);

/// Fresnel pair by truncated quadrature (cutoff 80) with tail correction.
FresnelPair fresnel_pair_numeric(double curvature, double cutoff = 80);

/// theta integral of dH1/dphi evaluated by harmonic summation, not the closed form.
double theta_integral_dphi_numeric(const HarmonicModel& model, const ResonanceGeometry& geometry,
                                   double action, double phase, double cutoff = 200);
double theta_integral_dI_numeric(const HarmonicModel& model, const ResonanceGeometry& geometry,
                                 double action, double phase, double cutoff = 200);

/** Principal value by symmetric exclusion of (tau* - delta, tau* + delta),
    Richardson-extrapolated to delta -> 0 (the excluded contribution is odd in delta). */
double pv_by_exclusion(const PvIntegrand& integrand, Interval window, double delta = 1e-2);

/// phi-average over [0, 2 pi) by the n-point trapezoid rule (spectrally exact for trig polynomials).
double phase_average(const std::function<double(double)>& f, int points = 1024);

}  // namespace resonance::oracle
