#include "resonance/verify.hpp"

#include "resonance/errors.hpp"
#include "resonance/experiment.hpp"
#include "resonance/oracles.hpp"
#include "resonance/oscint.hpp"
#include "resonance/predictor.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace resonance {

VerifyOptions verify_options_from_environment(VerifyOptions base)
{
    if (const char* env = std::getenv("RESONANCE_VERIFY_TOL_SCALE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v >= 0)) throw ConfigError("RESONANCE_VERIFY_TOL_SCALE must be a non-negative number");
        base.tolerance_scale = v;
    }
    return base;
}

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CheckResult compare(std::string name, double value, double expected, double tol, std::string label = {})
{
    const double err = std::abs(value - expected);
    std::string detail =
        "value " + fmt(value) + ", expected " + fmt(expected) + ", |diff| " + fmt(err) + ", tol " + fmt(tol);
    return {std::move(name), err <= tol, std::move(label), std::move(detail)};
}

CheckResult ratio_check(std::string name, const std::vector<double>& errors, double lo, double hi)
{
    bool all_zero = true;
    for (double e : errors) all_zero = all_zero && e == 0;
    if (all_zero) return {std::move(name), true, "all residuals exactly 0", ""};
    const std::vector<double> ratios = successive_ratios(errors);
    bool ok = true;
    std::string detail = "ratios";
    for (double r : ratios) {
        ok = ok && r >= lo && r <= hi;
        detail += " " + fmt(r);
    }
    detail += std::isinf(hi) ? ", each >= " + fmt(lo) : ", each in [" + fmt(lo) + ", " + fmt(hi) + "]";
    return {std::move(name), ok, "", detail};
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const HarmonicModel& model, const VerifyOptions& options)
{
    const double s = options.tolerance_scale;
    std::vector<CheckResult> checks;

    for (double c : {0.5, 1.0, 2.0}) {
        const FresnelPair closed = fresnel_pair(c);
        const FresnelPair numeric = oracle::fresnel_pair_numeric(c);
        const double err = std::max(std::abs(closed.cos_integral - numeric.cos_integral),
                                    std::abs(closed.sin_integral - numeric.sin_integral));
        checks.push_back({"fresnel_oracle_c" + fmt(c), err <= 1e-6 * s, "",
                          "closed " + fmt(closed.cos_integral) + ", |diff| " + fmt(err)});
    }

    const ResonanceGeometry geo = find_resonance(model, options.window);
    const double I0 = options.action0;
    for (double phase : {0.3, 1.7, 4.0}) {
        checks.push_back(compare("theta_dphi_oracle_phase" + fmt(phase), theta_integral_dphi(model, geo, I0, phase),
                                 oracle::theta_integral_dphi_numeric(model, geo, I0, phase), 1e-5 * s));
        checks.push_back(compare("theta_dI_oracle_phase" + fmt(phase), theta_integral_dI(model, geo, I0, phase),
                                 oracle::theta_integral_dI_numeric(model, geo, I0, phase), 1e-5 * s));
    }

    const PvIntegrand pv = r2_pv_integrand(model, geo, I0);
    checks.push_back(compare("pv_oracle", pv_integral(pv, options.window), oracle::pv_by_exclusion(pv, options.window),
                             1e-8 * s));

    if (model.name() == "paper-example") {
        constexpr double eps = 0.01;
        const double e = std::numbers::e;
        const PredictionInputs in = PredictionInputs::make(model, geo, eps, 1.0, 0.0);
        const double pv_value = eps * pv_integral(pv, options.window);
        checks.push_back(compare("pv_example", pv_value, eps / 2, 1e-10 * eps / 2 * s, "ε/2"));
        checks.push_back(compare("m2_dI2_example", model.m2_dI2(1.0, geo.tau_star), 0.5, 1e-10 * 0.5 * s));
        checks.push_back(compare("m2_dI3_example", model.m2_dI3(1.0, geo.tau_star), -1.5, 1e-10 * 1.5 * s));
        const double plus = (e - 1 / e - 2) / eps;
        checks.push_back(compare("phi_plus_check_example", check_phi_plus(in), plus, 1e-10 * std::abs(plus) * s));
        const double zeroth = -1 / (eps * e);
        checks.push_back(
            compare("phi_star_double_check_example", check_phi_star_double(in), zeroth, 1e-10 * std::abs(zeroth) * s));
        const double star = zeroth + 5 * std::sqrt(std::numbers::pi * eps) / (4 * std::sqrt(6.0)) *
                                         (std::cos(zeroth) + std::sin(zeroth)) +
                            eps * std::log(eps) / 8;
        checks.push_back(compare("phi_star_check_example", check_phi_star(in), star, 1e-10 * std::abs(star) * s));
    }

    SweepConfig ladder;
    ladder.phase_count = options.phase_count;
    ladder.eps_values = options.eps_ladder;
    ladder.action0 = I0;
    ladder.window = options.window;
    const std::vector<ResidualRow> rows = run_residual_ladder(model, ladder);
    std::vector<double> is, ps, ri, rp;
    for (const ResidualRow& r : rows) {
        is.push_back(r.action_star_error);
        ps.push_back(r.phase_star_error);
        ri.push_back(r.action_residual);
        rp.push_back(r.phase_residual);
    }
    // O(eps) mid-resonance estimates: ratio 2 within 30%; endpoint relations O(eps^3/2): ratio >= 2.5
    checks.push_back(ratio_check("mid_resonance_action_order", is, 2 - 0.6 * s, 2 + 0.6 * s));
    checks.push_back(ratio_check("mid_resonance_phase_order", ps, 2 - 0.6 * s, 2 + 0.6 * s));
    checks.push_back(ratio_check("crossing_action_order", ri, 2.5 + 0.33 * (1 - s), std::numeric_limits<double>::infinity()));
    checks.push_back(ratio_check("crossing_phase_order", rp, 2.5 + 0.33 * (1 - s), std::numeric_limits<double>::infinity()));
    return checks;
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks)
{
    for (const CheckResult& c : checks) {
        out << c.name << ": " << (c.label.empty() ? "" : c.label + " ") << (c.passed ? "OK" : "FAILED");
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
    }
}

}  // namespace resonance
