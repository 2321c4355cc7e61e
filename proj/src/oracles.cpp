#include "resonance/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resonance::oracle {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

template <class F>
double gk(F&& f, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 5, 1e-12);
}

// Non-adaptive 61-point rule on n equal panels; for integrands with a few
// oscillations per panel this is at roundoff, and cost stays predictable.
template <class F>
double gk_panels(F&& f, double a, double b, int n)
{
    double s = 0;
    for (int i = 0; i < n; ++i)
        s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a + (b - a) * i / n,
                                                                          a + (b - a) * (i + 1) / n, 0, 0.0);
    return s;
}

constexpr int kPanelsPerPeriod = 8;

// First and second zero-mean periodic antiderivatives of a zero-mean 2 pi-periodic f,
// both reduced to single integrals over one period:
//   G1(x) = int_0^x f - m1,                      m1 = (1/2pi) int_0^2pi (2pi - z) f(z) dz
//   G2(x) = int_0^x (x - z) f(z) dz - x m1 - m2,  m2 = (1/2pi) int_0^2pi (2pi - z)^2/2 f(z) dz - pi m1
class PeriodicAntiderivatives {
public:
    explicit PeriodicAntiderivatives(const std::function<double(double)>& f) : f_(f)
    {
        m1_ = gk_panels([&](double z) { return (kTwoPi - z) * f_(z); }, 0.0, kTwoPi, kPanelsPerPeriod) / kTwoPi;
        m2_ = gk_panels([&](double z) { return 0.5 * (kTwoPi - z) * (kTwoPi - z) * f_(z); }, 0.0, kTwoPi,
                        kPanelsPerPeriod) / kTwoPi -
              std::numbers::pi * m1_;
    }

    double first(double x) const
    {
        const double r = reduce(x);
        return gk_panels(f_, 0.0, r, panels(r)) - m1_;
    }

    double second(double x) const
    {
        const double r = reduce(x);
        return gk_panels([&](double z) { return (r - z) * f_(z); }, 0.0, r, panels(r)) - r * m1_ - m2_;
    }

private:
    static double reduce(double x) { return x - kTwoPi * std::floor(x / kTwoPi); }
    static int panels(double r) { return 1 + static_cast<int>(kPanelsPerPeriod * r / kTwoPi); }

    const std::function<double(double)>& f_;
    double m1_ = 0;
    double m2_ = 0;
};

}  // namespace

double phase_average(const std::function<double(double)>& f, int points)
{
    double s = 0;
    for (int j = 0; j < points; ++j) s += f(kTwoPi * j / points);
    return s / points;
}

double oscillatory_theta_integral(const std::function<double(double)>& periodic, double phase,
                                  double curvature, double cutoff)
{
    if (!(curvature > 0) || !(cutoff > 0)) throw std::invalid_argument("oracle needs positive curvature and cutoff");
    const auto integrand = [&](double theta) { return periodic(phase + curvature * theta * theta); };

    // panels delimited where curvature theta^2 advances by 2 pi
    const double total_phase = curvature * cutoff * cutoff;
    const int panels = static_cast<int>(std::ceil(total_phase / kTwoPi));
    double body = 0;
    double prev = 0;
    for (int j = 1; j <= panels; ++j) {
        const double next = j == panels ? cutoff : std::sqrt(kTwoPi * j / curvature);
        body += gk_panels(integrand, prev, next, 1);
        prev = next;
    }

    // tail: substitute s = c theta^2, weight w(s) = 1/(2 sqrt(c s)); by parts twice
    // int_S^inf F(phase + s) w(s) ds = -G1 w(S) + G2 w'(S) + ...
    const double S = total_phase;
    const double w = 1 / (2 * std::sqrt(curvature * S));
    const double dw = -1 / (4 * std::sqrt(curvature) * std::pow(S, 1.5));
    const PeriodicAntiderivatives g(periodic);
    const double G1 = g.first(phase + S);
    const double G2 = g.second(phase + S);
    const double tail = -G1 * w + G2 * dw;

    return 2 * (body + tail);
}

FresnelPair fresnel_pair_numeric(double curvature, double cutoff)
{
    const auto c = [](double x) { return std::cos(x); };
    const auto s = [](double x) { return std::sin(x); };
    return {oscillatory_theta_integral(c, 0.0, curvature, cutoff),
            oscillatory_theta_integral(s, 0.0, curvature, cutoff)};
}

double theta_integral_dphi_numeric(const HarmonicModel& model, const ResonanceGeometry& geometry,
                                   double action, double phase, double cutoff)
{
    const double ts = geometry.tau_star;
    return oscillatory_theta_integral([&](double x) { return model.h1_dphi(action, x, ts); }, phase,
                                      0.5 * geometry.omega_prime_star, cutoff);
}

double theta_integral_dI_numeric(const HarmonicModel& model, const ResonanceGeometry& geometry,
                                 double action, double phase, double cutoff)
{
    const double ts = geometry.tau_star;
    return oscillatory_theta_integral([&](double x) { return model.deviation_dI(action, x, ts); }, phase,
                                      0.5 * geometry.omega_prime_star, cutoff);
}

double pv_by_exclusion(const PvIntegrand& integrand, Interval window, double delta)
{
    const double pole = integrand.pole;
    if (!(window.lo < pole - 4 * delta && pole + 4 * delta < window.hi))
        throw std::invalid_argument("exclusion oracle needs the pole well inside the window");
    const auto f = [&](double tau) { return integrand.numerator(tau) / integrand.omega(tau); };
    const auto excluded = [&](double d) { return gk(f, window.lo, pole - d) + gk(f, pole + d, window.hi); };

    // I(d) = PV + c1 d + c3 d^3 + ...; two Richardson levels
    const double i1 = excluded(delta), i2 = excluded(delta / 2), i4 = excluded(delta / 4);
    const double r1 = 2 * i2 - i1;
    const double r2 = 2 * i4 - i2;
    return (8 * r2 - r1) / 7;
}

}  // namespace resonance::oracle
