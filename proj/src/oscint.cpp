#include "resonance/oscint.hpp"

#include "resonance/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace resonance {

namespace {

void require_positive_orientation(double omega_prime_star)
{
    if (!(omega_prime_star > 0)) {
        std::ostringstream os;
        os.precision(17);
        os << "theta integrals assume omega'* > 0, got " << omega_prime_star;
        throw std::domain_error(os.str());
    }
}

}  // namespace

FresnelPair fresnel_pair(double curvature)
{
    if (!(curvature > 0)) throw std::invalid_argument("Fresnel curvature must be positive");
    const double v = std::sqrt(std::numbers::pi / (2 * curvature));
    return {v, v};
}

// cos(k phase + k c theta^2) integrates to sqrt(pi/(k omega'*)) (cos k phase - sin k phase),
// sin(...) to sqrt(pi/(k omega'*)) (cos k phase + sin k phase), with c = omega'*/2.

double theta_integral_dphi(const HarmonicModel& model, const ResonanceGeometry& geometry,
                           double action, double phase)
{
    require_positive_orientation(geometry.omega_prime_star);
    double sum = 0;
    for (const HarmonicValue& c : model.coefficients(action, geometry.tau_star, 0)) {
        const FresnelPair f = fresnel_pair(0.5 * c.k * geometry.omega_prime_star);
        const double cs = std::cos(c.k * phase);
        const double sn = std::sin(c.k * phase);
        const double int_cos = f.cos_integral * cs - f.sin_integral * sn;
        const double int_sin = f.cos_integral * sn + f.sin_integral * cs;
        sum += c.k * (c.b * int_cos - c.a * int_sin);
    }
    return sum;
}

double theta_integral_dI(const HarmonicModel& model, const ResonanceGeometry& geometry,
                         double action, double phase)
{
    require_positive_orientation(geometry.omega_prime_star);
    double sum = 0;
    for (const HarmonicValue& c : model.coefficients(action, geometry.tau_star, 1)) {
        const FresnelPair f = fresnel_pair(0.5 * c.k * geometry.omega_prime_star);
        const double cs = std::cos(c.k * phase);
        const double sn = std::sin(c.k * phase);
        const double int_cos = f.cos_integral * cs - f.sin_integral * sn;
        const double int_sin = f.cos_integral * sn + f.sin_integral * cs;
        sum += c.a * int_cos + c.b * int_sin;
    }
    return sum;
}

double pv_integral(const PvIntegrand& integrand, Interval window, double abs_tol)
{
    const double pole = integrand.pole;
    if (!(window.lo < pole && pole < window.hi)) {
        std::ostringstream os;
        os.precision(17);
        os << "principal value pole tau*=" << pole << " is not interior to [" << window.lo << ", "
           << window.hi << "]";
        throw std::invalid_argument(os.str());
    }
    if (integrand.residue_slope == 0) throw std::invalid_argument("principal value needs omega'* != 0");

    const double g_pole = integrand.numerator(pole);
    const double residue = g_pole / integrand.residue_slope;
    const ScalarFn regular = [&](double tau) {
        return integrand.numerator(tau) / integrand.omega(tau) - residue / (tau - pole);
    };
    // split at the pole so no node ever lands on it
    const double left = integrate_adaptive(regular, window.lo, pole, 0.5 * abs_tol).value;
    const double right = integrate_adaptive(regular, pole, window.hi, 0.5 * abs_tol).value;
    const double log_term = residue * std::log((window.hi - pole) / (pole - window.lo));
    return left + right + log_term;
}

PvIntegrand r2_pv_integrand(const HarmonicModel& model, const ResonanceGeometry& geometry,
                            double action)
{
    // dR2/dI = -(1/(2 omega)) d2<deviation^2>/dI2, so the numerator is -m2''/2
    return {[&model, action](double tau) { return -0.5 * model.m2(action, tau, 2); },
            model.frequency().omega, geometry.tau_star, geometry.omega_prime_star};
}

}  // namespace resonance
