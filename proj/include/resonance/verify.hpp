#pragma once

#include "resonance/model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace resonance {

struct CheckResult {
    std::string name;
    bool passed;
    std::string label;   ///< short expectation shown before the status, may be empty
    std::string detail;  ///< numbers behind the verdict
};

struct VerifyOptions {
    Interval window{0.0, 2.0};
    double action0 = 1.0;
    int phase_count = 48;
    std::vector<double> eps_ladder{0.02, 0.01, 0.005, 0.0025};
    /// Multiplies every tolerance; RESONANCE_VERIFY_TOL_SCALE overrides it.
    double tolerance_scale = 1.0;
};

/// Reads RESONANCE_VERIFY_TOL_SCALE if set; throws ConfigError on a malformed value.
VerifyOptions verify_options_from_environment(VerifyOptions base = {});

/** Oracle, closed-form and residual-order checks for one model: Fresnel
    quadrature, theta integrals vs quadrature, principal value vs exclusion,
    the worked-example values (paper-example only) and the eps-halving ratios
    of the mid-resonance estimates and of the improved-invariant residuals. */
std::vector<CheckResult> run_verify_suite(const HarmonicModel& model, const VerifyOptions& options);

/// One "name: [label] OK|FAILED (detail)" line per check.
void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace resonance
