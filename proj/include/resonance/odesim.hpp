#pragma once

#include "resonance/model.hpp"

#include <iosfwd>
#include <vector>

namespace resonance {

/** Reference integration settings.

    step is in fast time t = tau/eps; step <= 0 selects default_step(). */
struct SimConfig {
    double eps = 0.01;
    double action0 = 1.0;  ///< I at tau-
    double phase0 = 0.0;   ///< phi at tau-
    Interval window{0.0, 2.0};
    double step = 0;
    std::vector<double> sample_times;  ///< slow times, each inside the window
};

struct StepPolicy {
    double steps_per_period = 400;
    double max_steps = 2e8;
};

struct TrajectorySample {
    double tau;
    double action;
    double chi;  ///< de-rotated phase phi - Phi(tau)/eps
    double phi;  ///< unwrapped angle
};

/// Phi(tau) = integral of omega from tau_from to tau; closed form when available.
double phase_accumulator(const HarmonicModel& model, double tau_from, double tau);

/** h = 2 pi / (steps_per_period (1 + max|omega|)) over the window,
    enlarged if needed so the step count stays below max_steps. */
double default_step(const HarmonicModel& model, Interval window, double eps,
                    const StepPolicy& policy = {});

/** Classic RK4 with fixed fast-time step on
        dI/dt = -eps dH1/dphi,  dchi/dt = eps dH1/dI,  phi = chi + Phi(tau)/eps.

    Returns one sample per requested slow time (in the order given); each one
    is hit exactly by shortening the last step before it. Throws
    TrajectoryError if the state leaves the domain or stops being finite. */
std::vector<TrajectorySample> integrate(const HarmonicModel& model, const SimConfig& cfg);

struct PhaseState {
    double action;
    double chi;
};

/** Low-level segment integration from tau_from to tau_to (either direction)
    with fast-time step |step|; Phi is measured from phase_origin. */
PhaseState integrate_segment(const HarmonicModel& model, double eps, double phase_origin,
                             PhaseState start, double tau_from, double tau_to, double step);

/// CSV with header tau,I,chi,phi and 17 significant digits.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples);

}  // namespace resonance
