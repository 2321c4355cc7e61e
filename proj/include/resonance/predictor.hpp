#pragma once

#include "resonance/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace resonance {

/** Pre-resonance data for a forward prediction.

    The window must be symmetric about tau* (checked to 1e-12). */
struct PredictionInputs {
    const HarmonicModel* model = nullptr;
    double eps = 0;
    double action_minus = 0;  ///< I- at tau-
    double phase_minus = 0;   ///< phi- at tau-
    ResonanceGeometry geometry;

    static PredictionInputs make(const HarmonicModel& model, const ResonanceGeometry& geometry,
                                 double eps, double action_minus, double phase_minus);
    /// Throws ConfigError / DomainError describing the first violated precondition.
    void validate() const;
};

/// One named additive contribution to a predicted value.
struct Term {
    std::string name;
    double value;
};

struct PredictionReport {
    double eps = 0;
    double action_minus = 0;
    double phase_minus = 0;

    // check quantities
    double phi_plus_check = 0;         ///< phi-check at tau+
    double phi_star_zeroth = 0;        ///< double-check phi at tau* (phase transport only)
    double phi_star_check = 0;         ///< phi-check at tau*
    double action_star_check = 0;      ///< I-check at tau*
    double improved_minus = 0;         ///< J- = I- + eps u1(I-, phi-, tau-)
    double improved_plus_check = 0;    ///< J-check at tau+

    double action_plus = 0;            ///< I+ prediction
    double phase_plus = 0;             ///< phi+ prediction (unwrapped)
    double action_plus_classic = 0;    ///< unsymmetrized jump formula

    double action_star_estimate = 0;   ///< minus-side mid-resonance estimates
    double phase_star_estimate = 0;

    std::vector<Term> action_terms;    ///< summed in order they reproduce action_plus
    std::vector<Term> phase_terms;     ///< summed in order they reproduce phase_plus
};

/// Sum of terms in stored order.
double sum_terms(const std::vector<Term>& terms);

/// phi- + Phi(tau+)/eps + int_{tau-}^{tau+} dmean/dI(I-, tau) dtau
double check_phi_plus(const PredictionInputs& in);
/// Same with upper limit tau*.
double check_phi_star_double(const PredictionInputs& in);
/// Adds the half Fresnel dI correction at the zeroth-order phase and the eps ln eps term.
double check_phi_star(const PredictionInputs& in);
/// I- minus half the Fresnel dphi jump at phi-check*; DomainError if the result leaves D_I.
double check_I_star(const PredictionInputs& in, double phi_star_check);

/// Classical jump formula at I- and the zeroth-order resonance phase.
double classical_jump(const PredictionInputs& in);

/// Complete forward prediction with term breakdown.
PredictionReport predict_crossing(const PredictionInputs& in);

enum class Side { minus, plus };

/** Numeric values that can replace the check quantities on the right-hand side
    of the mid-resonance formulas. The plus side needs action_plus/phase_plus. */
struct MidResonanceAnchors {
    std::optional<double> action_star;
    std::optional<double> phase_star;
    std::optional<double> action_plus;
    std::optional<double> phase_plus;
};

struct MidResonanceEstimate {
    double action_star;
    double phase_star;
};

MidResonanceEstimate mid_resonance_estimates(const PredictionInputs& in, Side side,
                                        const MidResonanceAnchors& anchors = {});

/// Numeric trajectory values at tau* and tau+.
struct NumericEndpoints {
    double action_star;
    double phase_star;
    double action_plus;
    double phase_plus;
};

struct CrossingResiduals {
    double action;  ///< LHS - RHS of the improved-invariant jump relation
    double phase;   ///< LHS - RHS of the phase relation
};

CrossingResiduals crossing_residuals(const PredictionInputs& in, const NumericEndpoints& numeric);

/// key = value lines, one per field and breakdown term.
void print_report(std::ostream& out, const PredictionReport& report);
/// Header row and value row with matching column names.
void write_report_csv(std::ostream& out, const PredictionReport& report);

}  // namespace resonance
