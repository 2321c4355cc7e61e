#pragma once

#include "resonance/quadrature.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace resonance {

using CoefficientFn = std::function<double(double action, double tau)>;

struct Interval {
    double lo = 0;
    double hi = 0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

/// Smallest |omega| at which 1/omega evaluators (u1, v1, R2) still run.
inline constexpr double kOmegaFloor = 1e-12;
/// Smallest |omega'(tau*)| accepted as a non-degenerate resonance.
inline constexpr double kOmegaPrimeFloor = 1e-8;

/** Unperturbed frequency omega(tau).

    omega_antiderivative is optional; when set it must be some F with F' = omega
    (the additive constant is irrelevant, only differences are used). */
struct FrequencyProfile {
    ScalarFn omega;
    ScalarFn omega_prime;
    ScalarFn omega_antiderivative;
};

/** One real coefficient function c(I, tau) with optional analytic I-derivatives.

    Missing derivatives fall back to central differences with
    h = 1e-4 max(1,|I|) for orders 1-2 and h = 1e-3 max(1,|I|) for order 3. */
struct Coefficient {
    CoefficientFn value;
    std::array<CoefficientFn, 3> dI;  ///< d/dI, d2/dI2, d3/dI3; empty when not supplied

    /// order 0 returns the value; orders 1-3 the I-derivatives.
    double derivative(int order, double action, double tau) const;
    /// Same, but ignores analytic suppliers (used for cross-checks).
    double finite_difference(int order, double action, double tau) const;
    bool has_analytic(int order) const { return order == 0 || static_cast<bool>(dI[order - 1]); }
    bool empty() const { return !value; }
};

/// a_k(I,tau) cos(k phi) + b_k(I,tau) sin(k phi)
struct HarmonicCoefficient {
    int k = 1;
    Coefficient a;
    Coefficient b;
};

/// Coefficients of one harmonic (or their I-derivatives) evaluated at a point.
struct HarmonicValue {
    int k;
    double a;
    double b;
};

/** H(I, phi, tau) = omega(tau) I + eps H1(I, phi, tau) with
    H1 = a0(I,tau) + sum_k [a_k cos(k phi) + b_k sin(k phi)].

    Immutable after construction; every evaluator is const and thread-safe.
    All public evaluators reject (I, tau) outside the domain box. */
class HarmonicModel {
public:
    HarmonicModel(std::string name, FrequencyProfile frequency, Coefficient mean,
                  std::vector<HarmonicCoefficient> harmonics, Interval action_domain,
                  Interval time_domain);

    const std::string& name() const { return name_; }
    const FrequencyProfile& frequency() const { return frequency_; }
    const std::vector<HarmonicCoefficient>& harmonics() const { return harmonics_; }
    const Interval& action_domain() const { return action_domain_; }
    const Interval& time_domain() const { return time_domain_; }

    /// True when H1 carries no phi-dependence at all.
    bool has_no_harmonics() const { return harmonics_.empty(); }
    bool has_mean() const { return !mean_.empty(); }

    double omega(double tau) const { return frequency_.omega(tau); }
    double omega_prime(double tau) const { return frequency_.omega_prime(tau); }

    /// Throws DomainError naming the offending coordinate.
    void check_domain(double action, double tau) const;

    double h1(double action, double phi, double tau) const;
    double h1_dphi(double action, double phi, double tau) const;
    double h1_dI(double action, double phi, double tau) const;

    struct Gradient {
        double dphi;
        double dI;
    };
    /// Both partials in one pass; the integrator's right-hand side.
    Gradient h1_gradient(double action, double phi, double tau) const;

    /// phi-average of H1 (the k = 0 coefficient) and its I-derivatives.
    double mean(double action, double tau, int order = 0) const;
    /// H1 minus its phi-average.
    double deviation(double action, double phi, double tau) const;
    double deviation_dI(double action, double phi, double tau) const;

    /// u1 = deviation / omega
    double u1(double action, double phi, double tau) const;
    /// Zero-mean phi-antiderivative correction, per harmonic (b'_k cos k phi - a'_k sin k phi)/(k omega).
    double v1(double action, double phi, double tau) const;

    /// <deviation^2>_phi = 1/2 sum_k (a_k^2 + b_k^2) and its I-derivatives (order 0..3).
    double m2(double action, double tau, int order = 0) const;
    double m2_dI2(double action, double tau) const { return m2(action, tau, 2); }
    double m2_dI3(double action, double tau) const { return m2(action, tau, 3); }

    /// dR2/dI with R2 = -(1/(2 omega)) d/dI <deviation^2>_phi.
    double r2_dI(double action, double tau) const;

    /// Per-harmonic coefficients' I-derivative of the given order at (I, tau).
    std::vector<HarmonicValue> coefficients(double action, double tau, int order = 0) const;

private:
    double checked_omega(double tau) const;

    std::string name_;
    FrequencyProfile frequency_;
    Coefficient mean_;
    std::vector<HarmonicCoefficient> harmonics_;
    Interval action_domain_;
    Interval time_domain_;
};

/** Located resonance inside an integration window. */
struct ResonanceGeometry {
    double tau_star = 0;
    double omega_prime_star = 0;
    Interval window;
    bool symmetric = false;  ///< |(tau+ - tau*) - (tau* - tau-)| <= 1e-12

    double fast_time_star(double eps) const { return tau_star / eps; }
    double fast_time_minus(double eps) const { return window.lo / eps; }
    double fast_time_plus(double eps) const { return window.hi / eps; }
};

/** Bisection for the unique root of omega in the window.

    Throws ConfigError when omega does not change sign across the window or
    changes sign more than once, DegenerateResonanceError when |omega'*| is
    below kOmegaPrimeFloor. */
ResonanceGeometry find_resonance(const HarmonicModel& model, Interval window);

/// omega(tau) = exp(tau - 1) - 1, H1 = I sqrt(4 - I) / sqrt(exp(tau - 1) + 1) sin(phi).
HarmonicModel example_model();

/// Same frequency profile as example_model, H1 identically zero.
HarmonicModel zero_model();

}  // namespace resonance
