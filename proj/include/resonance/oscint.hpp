#pragma once

#include "resonance/model.hpp"
#include "resonance/quadrature.hpp"

namespace resonance {

/// Full-line integrals of cos(c theta^2) and sin(c theta^2); both equal sqrt(pi/(2c)).
struct FresnelPair {
    double cos_integral;
    double sin_integral;
};

FresnelPair fresnel_pair(double curvature);

/** Integral over theta in (-inf, inf) of dH1/dphi(I, phase + omega'(tau*) theta^2 / 2, tau*).

    Closed form per harmonic; requires omega'* > 0. */
double theta_integral_dphi(const HarmonicModel& model, const ResonanceGeometry& geometry,
                           double action, double phase);

/// Same for the I-derivative of the zero-mean part of H1.
double theta_integral_dI(const HarmonicModel& model, const ResonanceGeometry& geometry,
                         double action, double phase);

/** Integrand numerator(tau) / omega(tau) with a simple pole at tau* where
    omega vanishes with slope residue_slope. */
struct PvIntegrand {
    ScalarFn numerator;
    ScalarFn omega;
    double pole = 0;
    double residue_slope = 0;
};

/** Cauchy principal value over the window, by subtracting
    numerator(tau*) / (omega'* (tau - tau*)) and adding its log integral back. */
double pv_integral(const PvIntegrand& integrand, Interval window, double abs_tol = 1e-12);

/// Integrand for p.v. int dR2(I, tau)/dI dtau at fixed action.
PvIntegrand r2_pv_integrand(const HarmonicModel& model, const ResonanceGeometry& geometry,
                            double action);

}  // namespace resonance
