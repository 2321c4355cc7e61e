#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resonance/errors.hpp"
#include "resonance/oracles.hpp"
#include "resonance/oscint.hpp"
#include "resonance/quadrature.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace resonance;
using std::numbers::pi;

TEST_CASE("adaptive quadrature basics")
{
    const auto sine = [](double x) { return std::sin(x); };
    CHECK(integrate(sine, 0, pi) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate(sine, pi, 0) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-10) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(integrate(sine, 1, 1) == 0.0);
    const QuadratureResult r = integrate_adaptive(sine, 0, pi);
    CHECK(r.abs_error <= 1e-12);
    CHECK(r.intervals >= 1);
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1 / x); }, 0, 1, 1e-14, 4), AccuracyError);
}

TEST_CASE("Fresnel pair closed form and scaling")
{
    const FresnelPair half = fresnel_pair(0.5);
    CHECK(half.cos_integral == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
    CHECK(half.sin_integral == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
    const FresnelPair quad = fresnel_pair(2.0);
    CHECK(quad.cos_integral == doctest::Approx(half.cos_integral / 2).epsilon(1e-15));
    CHECK_THROWS_AS(fresnel_pair(0.0), std::invalid_argument);
    CHECK_THROWS_AS(fresnel_pair(-1.0), std::invalid_argument);

    const FresnelPair numeric = oracle::fresnel_pair_numeric(0.5);
    CHECK(std::abs(numeric.cos_integral - half.cos_integral) < 1e-6);
    CHECK(std::abs(numeric.sin_integral - half.sin_integral) < 1e-6);
}

TEST_CASE("example model theta integrals in closed form")
{
    const HarmonicModel m = example_model();
    const ResonanceGeometry g = find_resonance(m, {0, 2});
    for (double I : {0.8, 1.0, 1.3}) {
        for (double p : {-36.7, 0.0, 0.3, 2.2}) {
            const double jump = std::sqrt(pi / 2) * I * std::sqrt(4 - I) * (std::cos(p) - std::sin(p));
            CHECK(theta_integral_dphi(m, g, I, p) == doctest::Approx(jump).epsilon(1e-12));
        }
    }
    for (double p : {-36.7, 0.0, 0.3}) {
        const double half = 0.5 * theta_integral_dI(m, g, 1.0, p);
        CHECK(half == doctest::Approx(5 * std::sqrt(pi) / (4 * std::sqrt(6.0)) * (std::cos(p) + std::sin(p)))
                          .epsilon(1e-12));
    }
    CHECK(std::abs(theta_integral_dphi(m, g, 1.0, 0.3) - oracle::theta_integral_dphi_numeric(m, g, 1.0, 0.3)) < 1e-5);
}

TEST_CASE("theta integrals scale as omega'^(-1/2) for a single harmonic")
{
    const HarmonicModel m = example_model();
    ResonanceGeometry g = find_resonance(m, {0, 2});
    const double base = theta_integral_dphi(m, g, 1.0, 0.4);
    g.omega_prime_star *= 4;
    CHECK(theta_integral_dphi(m, g, 1.0, 0.4) == doctest::Approx(base / 2).epsilon(1e-14));
    g.omega_prime_star = -1;
    CHECK_THROWS_AS(theta_integral_dphi(m, g, 1.0, 0.4), std::domain_error);
    CHECK_THROWS_AS(theta_integral_dI(m, g, 1.0, 0.4), std::domain_error);
}

TEST_CASE("closed-form theta integrals match the oracle on random models")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> phase(0, 2 * pi), action(0.3, 3.0);
    for (int i = 0; i < 10; ++i) {
        const HarmonicModel m = support::random_model(rng);
        const ResonanceGeometry g = find_resonance(m, {0, 2});
        const double I = action(rng), p = phase(rng);
        CHECK(std::abs(theta_integral_dphi(m, g, I, p) - oracle::theta_integral_dphi_numeric(m, g, I, p)) < 1e-5);
        CHECK(std::abs(theta_integral_dI(m, g, I, p) - oracle::theta_integral_dI_numeric(m, g, I, p)) < 1e-5);
    }
}

TEST_CASE("theta integrals vanish without phase dependence")
{
    const HarmonicModel z = zero_model();
    const ResonanceGeometry g = find_resonance(z, {0, 2});
    CHECK(theta_integral_dphi(z, g, 1.0, 0.7) == 0.0);
    CHECK(theta_integral_dI(z, g, 1.0, 0.7) == 0.0);

    // coefficient independent of I: the dI integral is zero, the dphi one is not
    const HarmonicModel flat = build_model(nlohmann::json{
        {"type", "polynomial-harmonics"},
        {"frequency", {{"kind", "exp_shift"}}},
        {"harmonics", {{{"k", 1}, {"cos", {{{"poly", {0.7}}}}}}}}});
    const ResonanceGeometry gf = find_resonance(flat, {0, 2});
    CHECK(theta_integral_dI(flat, gf, 1.0, 0.7) == 0.0);
    CHECK(theta_integral_dphi(flat, gf, 1.0, 0.7) != 0.0);
}

TEST_CASE("principal value of the example R2 derivative")
{
    const HarmonicModel m = example_model();
    const ResonanceGeometry g = find_resonance(m, {0, 2});
    const PvIntegrand pv = r2_pv_integrand(m, g, 1.0);
    const double value = pv_integral(pv, g.window);
    for (double eps : {0.01, 0.003}) CHECK(std::abs(eps * value - eps / 2) < 1e-10 * eps / 2);
    CHECK(std::abs(value - oracle::pv_by_exclusion(pv, g.window)) < 1e-8);
}

TEST_CASE("principal value against known integrals")
{
    const ScalarFn line = [](double t) { return t - 1; };
    // constant numerator, symmetric window: the log term is zero and so is the total
    const PvIntegrand constant{[](double) { return 1.0; }, line, 1.0, 1.0};
    CHECK(std::abs(pv_integral(constant, {0, 2})) < 1e-14);
    // asymmetric window: pv int_0^3 dt/(t-1) = ln 2
    CHECK(pv_integral(constant, {0, 3}) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    // (t^2) / (t-1) on [0, 3]: pv = int (t + 1) + pv 1/(t-1) = 7.5 + ln 2
    const PvIntegrand quadratic{[](double t) { return t * t; }, line, 1.0, 1.0};
    CHECK(pv_integral(quadratic, {0, 3}) == doctest::Approx(7.5 + std::log(2.0)).epsilon(1e-12));
    CHECK(std::abs(pv_integral(quadratic, {0, 3}) - oracle::pv_by_exclusion(quadratic, {0, 3})) < 1e-8);

    const PvIntegrand zero{[](double) { return 0.0; }, line, 1.0, 1.0};
    CHECK(pv_integral(zero, {0, 2}) == 0.0);
    CHECK_THROWS_AS(pv_integral(constant, {1.5, 2}), std::invalid_argument);
}
