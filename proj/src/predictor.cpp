#include "resonance/predictor.hpp"

#include "resonance/errors.hpp"
#include "resonance/odesim.hpp"
#include "resonance/oscint.hpp"
#include "resonance/quadrature.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace resonance {

PredictionInputs PredictionInputs::make(const HarmonicModel& model, const ResonanceGeometry& geometry,
                                        double eps, double action_minus, double phase_minus)
{
    PredictionInputs in;
    in.model = &model;
    in.eps = eps;
    in.action_minus = action_minus;
    in.phase_minus = phase_minus;
    in.geometry = geometry;
    in.validate();
    return in;
}

void PredictionInputs::validate() const
{
    if (!model) throw ConfigError("prediction inputs carry no model");
    if (!(eps > 0)) throw ConfigError("eps must be positive");
    const Interval& w = geometry.window;
    if (std::abs((w.hi - geometry.tau_star) - (geometry.tau_star - w.lo)) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "prediction requires a window symmetric about tau*=" << geometry.tau_star << ", got ["
           << w.lo << ", " << w.hi << "]";
        throw ConfigError(os.str());
    }
    model->check_domain(action_minus, w.lo);
}

double sum_terms(const std::vector<Term>& terms)
{
    double s = 0;
    for (const Term& t : terms) s += t.value;
    return s;
}

namespace {

// integral of d(mean)/dI (action, tau) over [a, b]
double mean_drift(const HarmonicModel& model, double action, double a, double b)
{
    if (!model.has_mean()) return 0;
    return integrate([&](double tau) { return model.mean(action, tau, 1); }, a, b, 1e-12);
}

double log_eps_coefficient(const PredictionInputs& in)
{
    return in.eps * std::log(in.eps) / (4 * in.geometry.omega_prime_star);
}

}  // namespace

double check_phi_plus(const PredictionInputs& in)
{
    const HarmonicModel& m = *in.model;
    const Interval& w = in.geometry.window;
    return in.phase_minus + phase_accumulator(m, w.lo, w.hi) / in.eps +
           mean_drift(m, in.action_minus, w.lo, w.hi);
}

double check_phi_star_double(const PredictionInputs& in)
{
    const HarmonicModel& m = *in.model;
    const double lo = in.geometry.window.lo;
    const double ts = in.geometry.tau_star;
    return in.phase_minus + phase_accumulator(m, lo, ts) / in.eps + mean_drift(m, in.action_minus, lo, ts);
}

double check_phi_star(const PredictionInputs& in)
{
    const HarmonicModel& m = *in.model;
    const double zeroth = check_phi_star_double(in);
    return zeroth + 0.5 * std::sqrt(in.eps) * theta_integral_dI(m, in.geometry, in.action_minus, zeroth) +
           log_eps_coefficient(in) * m.m2_dI2(in.action_minus, in.geometry.tau_star);
}

double check_I_star(const PredictionInputs& in, double phi_star_check)
{
    const HarmonicModel& m = *in.model;
    const double value =
        in.action_minus - 0.5 * std::sqrt(in.eps) *
                              theta_integral_dphi(m, in.geometry, in.action_minus, phi_star_check);
    if (!m.action_domain().contains(value)) {
        std::ostringstream os;
        os.precision(17);
        os << "mid-resonance action estimate " << value << " leaves the model domain at eps=" << in.eps;
        throw DomainError(os.str());
    }
    return value;
}

double classical_jump(const PredictionInputs& in)
{
    const double phase = check_phi_star_double(in);
    return in.action_minus -
           std::sqrt(in.eps) * theta_integral_dphi(*in.model, in.geometry, in.action_minus, phase);
}

PredictionReport predict_crossing(const PredictionInputs& in)
{
    in.validate();
    const HarmonicModel& m = *in.model;
    const ResonanceGeometry& geo = in.geometry;
    const double eps = in.eps;
    const double root_eps = std::sqrt(eps);
    const double lo = geo.window.lo;
    const double hi = geo.window.hi;
    const double ts = geo.tau_star;
    const double I0 = in.action_minus;
    const double phi0 = in.phase_minus;

    PredictionReport r;
    r.eps = eps;
    r.action_minus = I0;
    r.phase_minus = phi0;
    r.phi_plus_check = check_phi_plus(in);
    r.phi_star_zeroth = check_phi_star_double(in);
    r.phi_star_check = check_phi_star(in);
    r.action_star_check = check_I_star(in, r.phi_star_check);

    const double jump = root_eps * theta_integral_dphi(m, geo, r.action_star_check, r.phi_star_check);
    const double u_minus = eps * m.u1(I0, phi0, lo);
    r.improved_minus = I0 + u_minus;
    r.improved_plus_check = r.improved_minus - jump;

    r.action_terms = {
        {"I_minus", I0},
        {"eps_u1_minus", u_minus},
        {"minus_eps_u1_plus", -eps * m.u1(I0, r.phi_plus_check, hi)},
        {"minus_jump", -jump},
    };
    r.action_plus = sum_terms(r.action_terms);

    const double log_coef = log_eps_coefficient(in);
    r.phase_terms = {
        {"phi_minus", phi0},
        {"eps_v1_minus", eps * m.v1(I0, phi0, lo)},
        {"minus_eps_v1_plus", -eps * m.v1(I0, r.phi_plus_check, hi)},
        {"rotation", phase_accumulator(m, lo, hi) / eps},
        {"mean_drift_before", mean_drift(m, r.improved_minus, lo, ts)},
        {"mean_drift_after", mean_drift(m, r.improved_plus_check, ts, hi)},
        {"fresnel_dI", root_eps * theta_integral_dI(m, geo, r.action_star_check, r.phi_star_check)},
        {"pv_r2", eps * pv_integral(r2_pv_integrand(m, geo, I0), geo.window)},
        {"eps32_log_eps", -root_eps * log_coef * m.m2_dI3(I0, ts) *
                              theta_integral_dphi(m, geo, I0, r.phi_star_check)},
    };
    r.phase_plus = sum_terms(r.phase_terms);

    r.action_plus_classic = classical_jump(in);
    const MidResonanceEstimate mid = mid_resonance_estimates(in, Side::minus);
    r.action_star_estimate = mid.action_star;
    r.phase_star_estimate = mid.phase_star;
    return r;
}

MidResonanceEstimate mid_resonance_estimates(const PredictionInputs& in, Side side,
                                        const MidResonanceAnchors& anchors)
{
    in.validate();
    const HarmonicModel& m = *in.model;
    const ResonanceGeometry& geo = in.geometry;
    const double root_eps = std::sqrt(in.eps);
    const double ts = geo.tau_star;

    // right-hand sides carry I*, phi*; substitute the check quantities unless anchored
    double phase_rhs;
    double action_rhs;
    if (anchors.action_star && anchors.phase_star) {
        action_rhs = *anchors.action_star;
        phase_rhs = *anchors.phase_star;
    } else {
        phase_rhs = check_phi_star(in);
        action_rhs = check_I_star(in, phase_rhs);
    }
    const double jump_half = 0.5 * root_eps * theta_integral_dphi(m, geo, action_rhs, phase_rhs);
    const double fresnel_half = 0.5 * root_eps * theta_integral_dI(m, geo, action_rhs, phase_rhs);
    const double log_term = log_eps_coefficient(in) * m.m2_dI2(action_rhs, ts);

    if (side == Side::minus) {
        const double lo = geo.window.lo;
        const double improved = in.action_minus + in.eps * m.u1(in.action_minus, in.phase_minus, lo);
        return {in.action_minus - jump_half,
                in.phase_minus + phase_accumulator(m, lo, ts) / in.eps +
                    mean_drift(m, improved, lo, ts) + fresnel_half + log_term};
    }

    if (!anchors.action_plus || !anchors.phase_plus)
        throw ConfigError("plus-side mid-resonance estimate needs numeric I+ and phi+");
    const double hi = geo.window.hi;
    const double I1 = *anchors.action_plus;
    const double phi1 = *anchors.phase_plus;
    const double improved = I1 + in.eps * m.u1(I1, phi1, hi);
    return {I1 + jump_half, phi1 + phase_accumulator(m, hi, ts) / in.eps +
                                mean_drift(m, improved, hi, ts) - fresnel_half + log_term};
}

CrossingResiduals crossing_residuals(const PredictionInputs& in, const NumericEndpoints& numeric)
{
    in.validate();
    const HarmonicModel& m = *in.model;
    const ResonanceGeometry& geo = in.geometry;
    const double eps = in.eps;
    const double root_eps = std::sqrt(eps);
    const double lo = geo.window.lo;
    const double hi = geo.window.hi;
    const double ts = geo.tau_star;
    const double Is = numeric.action_star;
    const double phis = numeric.phase_star;

    const double improved_minus = in.action_minus + eps * m.u1(in.action_minus, in.phase_minus, lo);
    const double improved_plus = numeric.action_plus + eps * m.u1(numeric.action_plus, numeric.phase_plus, hi);
    const double jump = theta_integral_dphi(m, geo, Is, phis);

    CrossingResiduals r;
    r.action = improved_plus - (improved_minus - root_eps * jump);

    const double lhs = numeric.phase_plus + eps * m.v1(numeric.action_plus, numeric.phase_plus, hi);
    const double rhs = in.phase_minus + eps * m.v1(in.action_minus, in.phase_minus, lo) +
                       phase_accumulator(m, lo, hi) / eps + mean_drift(m, improved_minus, lo, ts) +
                       mean_drift(m, improved_plus, ts, hi) +
                       root_eps * theta_integral_dI(m, geo, Is, phis) +
                       eps * pv_integral(r2_pv_integrand(m, geo, Is), geo.window) -
                       root_eps * log_eps_coefficient(in) * m.m2_dI3(Is, ts) * jump;
    r.phase = lhs - rhs;
    return r;
}

namespace {

std::vector<Term> report_fields(const PredictionReport& r)
{
    std::vector<Term> fields = {
        {"eps", r.eps},
        {"I_minus", r.action_minus},
        {"phi_minus", r.phase_minus},
        {"phi_plus_check", r.phi_plus_check},
        {"phi_star_double_check", r.phi_star_zeroth},
        {"phi_star_check", r.phi_star_check},
        {"I_star_check", r.action_star_check},
        {"J_minus", r.improved_minus},
        {"J_plus_check", r.improved_plus_check},
        {"I_plus_theor", r.action_plus},
        {"phi_plus_theor", r.phase_plus},
        {"I_plus_classic", r.action_plus_classic},
        {"I_star_estimate", r.action_star_estimate},
        {"phi_star_estimate", r.phase_star_estimate},
    };
    for (const Term& t : r.action_terms) fields.push_back({"I_plus." + t.name, t.value});
    for (const Term& t : r.phase_terms) fields.push_back({"phi_plus." + t.name, t.value});
    return fields;
}

}  // namespace

void print_report(std::ostream& out, const PredictionReport& report)
{
    const auto old_precision = out.precision(17);
    for (const Term& f : report_fields(report)) out << f.name << " = " << f.value << '\n';
    out.precision(old_precision);
}

void write_report_csv(std::ostream& out, const PredictionReport& report)
{
    const auto fields = report_fields(report);
    const auto old_precision = out.precision(17);
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].name;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].value;
    out << '\n';
    out.precision(old_precision);
}

}  // namespace resonance
