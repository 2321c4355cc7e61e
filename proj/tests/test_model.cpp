#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resonance/errors.hpp"
#include "resonance/model.hpp"
#include "resonance/oracles.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace resonance;
using std::numbers::pi;

TEST_CASE("example model frequency and resonance")
{
    const HarmonicModel m = example_model();
    CHECK(m.omega(1.0) == doctest::Approx(0.0));
    const ResonanceGeometry g = find_resonance(m, {0, 2});
    CHECK(std::abs(g.tau_star - 1.0) < 1e-13);
    CHECK(g.omega_prime_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.symmetric);
    CHECK_FALSE(find_resonance(m, {0, 3}).symmetric);
}

TEST_CASE("H1 is 2pi-periodic and its deviation has zero phase mean")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> action(0.2, 3.5), tau(-0.5, 2.5), phase(-20, 20);
    const HarmonicModel example = example_model();
    const HarmonicModel synthetic = support::random_model(rng, true);
    for (const HarmonicModel* m : {&example, &synthetic}) {
        for (int i = 0; i < 100; ++i) {
            const double I = action(rng), t = tau(rng), p = phase(rng);
            CHECK(std::abs(m->h1(I, p + 2 * pi, t) - m->h1(I, p, t)) < 1e-12);
            CHECK(std::abs(m->h1_dphi(I, p + 2 * pi, t) - m->h1_dphi(I, p, t)) < 1e-12);
            if (i % 10 == 0) {
                const double avg = oracle::phase_average([&](double x) { return m->deviation(I, x, t); });
                CHECK(std::abs(avg) < 1e-12);
                const double full = oracle::phase_average([&](double x) { return m->h1(I, x, t); });
                CHECK(full == doctest::Approx(m->mean(I, t)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gradient matches central differences")
{
    std::mt19937_64 rng(11);
    const HarmonicModel m = support::random_model(rng, true);
    const double I = 1.3, p = 0.9, t = 0.4, h = 1e-5;
    const auto grad = m.h1_gradient(I, p, t);
    CHECK(grad.dphi == doctest::Approx((m.h1(I, p + h, t) - m.h1(I, p - h, t)) / (2 * h)).epsilon(1e-8));
    CHECK(grad.dI == doctest::Approx((m.h1(I + h, p, t) - m.h1(I - h, p, t)) / (2 * h)).epsilon(1e-8));
    CHECK(grad.dphi == doctest::Approx(m.h1_dphi(I, p, t)).epsilon(1e-14));
    CHECK(grad.dI == doctest::Approx(m.h1_dI(I, p, t)).epsilon(1e-14));
}

TEST_CASE("finite-difference fallback agrees with analytic derivatives")
{
    const HarmonicModel m = example_model();
    const Coefficient& b1 = m.harmonics().front().b;
    for (double I : {0.5, 1.0, 2.0, 3.0}) {
        for (int order = 1; order <= 3; ++order) {
            REQUIRE(b1.has_analytic(order));
            const double exact = b1.derivative(order, I, 0.3);
            const double tol = order < 3 ? 1e-6 : 1e-4;  // third differences use the wider step
            CHECK(std::abs(b1.finite_difference(order, I, 0.3) - exact) < tol * std::max(1.0, std::abs(exact)));
        }
    }
    Coefficient bare;
    bare.value = b1.value;
    CHECK_FALSE(bare.has_analytic(2));
    CHECK(bare.derivative(2, 1.0, 0.3) == bare.finite_difference(2, 1.0, 0.3));
}

TEST_CASE("u1 and v1 solve the homological equations")
{
    std::mt19937_64 rng(3);
    const HarmonicModel m = support::random_model(rng, true);
    const double I = 1.1, t = 0.3, h = 1e-5;
    for (double p : {0.0, 1.0, 2.5, 5.0}) {
        const double w = m.omega(t);
        CHECK(w * m.u1(I, p, t) == doctest::Approx(m.deviation(I, p, t)).epsilon(1e-13));
        const double dv = (m.v1(I, p + h, t) - m.v1(I, p - h, t)) / (2 * h);
        CHECK(w * dv == doctest::Approx(-m.deviation_dI(I, p, t)).epsilon(1e-7));
    }
    CHECK(std::abs(oracle::phase_average([&](double x) { return m.v1(I, x, t); })) < 1e-12);
}

TEST_CASE("m2 obeys Parseval and its derivatives match differences")
{
    std::mt19937_64 rng(5);
    const HarmonicModel m = support::random_model(rng);
    for (double t : {0.0, 1.0, 1.7}) {
        for (double I : {0.5, 1.5, 2.5}) {
            const double quad = oracle::phase_average([&](double x) {
                const double d = m.deviation(I, x, t);
                return d * d;
            });
            CHECK(m.m2(I, t) == doctest::Approx(quad).epsilon(1e-12));
            const double h = 1e-4;
            for (int order = 1; order <= 3; ++order) {
                const double fd = (m.m2(I + h, t, order - 1) - m.m2(I - h, t, order - 1)) / (2 * h);
                CHECK(m.m2(I, t, order) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("example model second-moment derivatives at the resonance")
{
    const HarmonicModel m = example_model();
    CHECK(std::abs(m.m2_dI2(1.0, 1.0) - 0.5) < 1e-10 * 0.5);
    CHECK(std::abs(m.m2_dI3(1.0, 1.0) + 1.5) < 1e-10 * 1.5);
    CHECK(std::abs(m.m2_dI3(2.7, 1.0) + 1.5) < 1e-10 * 1.5);
}

TEST_CASE("r2_dI differentiates R2 = -(dm2/dI) / (2 omega)")
{
    std::mt19937_64 rng(9);
    const HarmonicModel synthetic = support::random_model(rng);
    const double I = 1.2, t = 0.4, h = 1e-4;
    const auto r2 = [&](double a) { return -synthetic.m2(a, t, 1) / (2 * synthetic.omega(t)); };
    CHECK(std::abs(synthetic.r2_dI(I, t) - (r2(I + h) - r2(I - h)) / (2 * h)) < 1e-6);

    const HarmonicModel m = example_model();
    for (double tau : {0.2, 0.7, 1.6}) {
        const double expected = -1 / (2 * m.omega(tau) * (std::exp(tau - 1) + 1));
        CHECK(m.r2_dI(1.0, tau) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(zero_model().r2_dI(1.0, 0.5) == 0.0);
}

TEST_CASE("evaluators reject points outside the domain and the resonance itself")
{
    const HarmonicModel m = example_model();
    CHECK_THROWS_AS(m.h1(4.5, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(m.h1(1.0, 0.0, 3.5), DomainError);
    CHECK_THROWS_AS(m.u1(1.0, 0.3, 1.0), SingularityError);
    CHECK_THROWS_AS(m.v1(1.0, 0.3, 1.0), SingularityError);
    try {
        m.h1(9.0, 0.0, 0.5);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("I") != std::string::npos);
    }
}

TEST_CASE("find_resonance error paths")
{
    const HarmonicModel m = example_model();
    CHECK_THROWS_AS(find_resonance(m, {1.5, 2.5}), ConfigError);

    const auto build = [](FrequencyProfile f) {
        return HarmonicModel("custom", std::move(f), {}, {}, {0, 4}, {-5, 5});
    };
    const HarmonicModel twice = build({[](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); }, {}});
    CHECK_THROWS_AS(find_resonance(twice, {0, 5}), ConfigError);

    const HarmonicModel flat = build({[](double t) { return (t - 1) * (t - 1) * (t - 1); },
                                      [](double t) { return 3 * (t - 1) * (t - 1); }, {}});
    CHECK_THROWS_AS(find_resonance(flat, {0, 2}), DegenerateResonanceError);
}

TEST_CASE("zero model has no perturbation anywhere")
{
    const HarmonicModel z = zero_model();
    CHECK(z.has_no_harmonics());
    CHECK(z.h1(1.0, 0.4, 0.2) == 0.0);
    CHECK(z.u1(1.0, 0.4, 0.2) == 0.0);
    CHECK(z.v1(1.0, 0.4, 0.2) == 0.0);
    CHECK(z.m2(1.0, 1.0, 2) == 0.0);
}
