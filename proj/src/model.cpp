#include "resonance/model.hpp"

#include "resonance/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace resonance {

namespace {

std::string format_interval(const Interval& iv)
{
    std::ostringstream os;
    os.precision(17);
    os << "[" << iv.lo << ", " << iv.hi << "]";
    return os.str();
}

}  // namespace

double Coefficient::finite_difference(int order, double action, double tau) const
{
    const auto f = [&](double x) { return value(x, tau); };
    switch (order) {
    case 0:
        return f(action);
    case 1: {
        const double h = 1e-4 * std::max(1.0, std::abs(action));
        return (f(action + h) - f(action - h)) / (2 * h);
    }
    case 2: {
        const double h = 1e-4 * std::max(1.0, std::abs(action));
        return (f(action + h) - 2 * f(action) + f(action - h)) / (h * h);
    }
    case 3: {
        const double h = 1e-3 * std::max(1.0, std::abs(action));
        return (f(action + 2 * h) - 2 * f(action + h) + 2 * f(action - h) - f(action - 2 * h)) /
               (2 * h * h * h);
    }
    default:
        throw std::invalid_argument("coefficient derivative order must be in 0..3");
    }
}

double Coefficient::derivative(int order, double action, double tau) const
{
    if (order == 0) return value(action, tau);
    if (order < 0 || order > 3) throw std::invalid_argument("coefficient derivative order must be in 0..3");
    if (dI[order - 1]) return dI[order - 1](action, tau);
    return finite_difference(order, action, tau);
}

HarmonicModel::HarmonicModel(std::string name, FrequencyProfile frequency, Coefficient mean,
                             std::vector<HarmonicCoefficient> harmonics, Interval action_domain,
                             Interval time_domain)
    : name_(std::move(name)),
      frequency_(std::move(frequency)),
      mean_(std::move(mean)),
      harmonics_(std::move(harmonics)),
      action_domain_(action_domain),
      time_domain_(time_domain)
{
    if (!frequency_.omega || !frequency_.omega_prime)
        throw ConfigError("frequency profile needs omega and omega_prime");
    if (!(action_domain_.lo < action_domain_.hi) || !(time_domain_.lo < time_domain_.hi))
        throw ConfigError("model domain intervals must be non-empty");
    for (const HarmonicCoefficient& h : harmonics_) {
        if (h.k < 1) throw ConfigError("harmonic index must be a positive integer");
        if (h.a.empty() && h.b.empty()) throw ConfigError("harmonic needs a cosine or sine coefficient");
    }
}

void HarmonicModel::check_domain(double action, double tau) const
{
    if (!action_domain_.contains(action)) {
        std::ostringstream os;
        os.precision(17);
        os << "action I=" << action << " outside domain " << format_interval(action_domain_)
           << " of model '" << name_ << "'";
        throw DomainError(os.str());
    }
    if (!time_domain_.contains(tau)) {
        std::ostringstream os;
        os.precision(17);
        os << "slow time tau=" << tau << " outside domain " << format_interval(time_domain_)
           << " of model '" << name_ << "'";
        throw DomainError(os.str());
    }
}

std::vector<HarmonicValue> HarmonicModel::coefficients(double action, double tau, int order) const
{
    check_domain(action, tau);
    std::vector<HarmonicValue> out;
    out.reserve(harmonics_.size());
    for (const HarmonicCoefficient& h : harmonics_) {
        out.push_back({h.k, h.a.empty() ? 0.0 : h.a.derivative(order, action, tau),
                       h.b.empty() ? 0.0 : h.b.derivative(order, action, tau)});
    }
    return out;
}

double HarmonicModel::mean(double action, double tau, int order) const
{
    check_domain(action, tau);
    return mean_.empty() ? 0.0 : mean_.derivative(order, action, tau);
}

double HarmonicModel::deviation(double action, double phi, double tau) const
{
    double sum = 0;
    for (const HarmonicValue& c : coefficients(action, tau, 0))
        sum += c.a * std::cos(c.k * phi) + c.b * std::sin(c.k * phi);
    return sum;
}

double HarmonicModel::deviation_dI(double action, double phi, double tau) const
{
    double sum = 0;
    for (const HarmonicValue& c : coefficients(action, tau, 1))
        sum += c.a * std::cos(c.k * phi) + c.b * std::sin(c.k * phi);
    return sum;
}

double HarmonicModel::h1(double action, double phi, double tau) const
{
    return mean(action, tau) + deviation(action, phi, tau);
}

double HarmonicModel::h1_dphi(double action, double phi, double tau) const
{
    double sum = 0;
    for (const HarmonicValue& c : coefficients(action, tau, 0))
        sum += c.k * (c.b * std::cos(c.k * phi) - c.a * std::sin(c.k * phi));
    return sum;
}

double HarmonicModel::h1_dI(double action, double phi, double tau) const
{
    return mean(action, tau, 1) + deviation_dI(action, phi, tau);
}

HarmonicModel::Gradient HarmonicModel::h1_gradient(double action, double phi, double tau) const
{
    check_domain(action, tau);
    Gradient g{0.0, mean_.empty() ? 0.0 : mean_.derivative(1, action, tau)};
    for (const HarmonicCoefficient& h : harmonics_) {
        const double c = std::cos(h.k * phi);
        const double s = std::sin(h.k * phi);
        if (!h.a.empty()) {
            g.dphi -= h.k * h.a.value(action, tau) * s;
            g.dI += h.a.derivative(1, action, tau) * c;
        }
        if (!h.b.empty()) {
            g.dphi += h.k * h.b.value(action, tau) * c;
            g.dI += h.b.derivative(1, action, tau) * s;
        }
    }
    return g;
}

double HarmonicModel::checked_omega(double tau) const
{
    const double w = omega(tau);
    if (!(std::abs(w) > kOmegaFloor)) throw SingularityError(tau, w);
    return w;
}

double HarmonicModel::u1(double action, double phi, double tau) const
{
    check_domain(action, tau);
    const double w = checked_omega(tau);
    return deviation(action, phi, tau) / w;
}

double HarmonicModel::v1(double action, double phi, double tau) const
{
    check_domain(action, tau);
    const double w = checked_omega(tau);
    double sum = 0;
    for (const HarmonicValue& c : coefficients(action, tau, 1))
        sum += (c.b * std::cos(c.k * phi) - c.a * std::sin(c.k * phi)) / c.k;
    return sum / w;
}

double HarmonicModel::m2(double action, double tau, int order) const
{
    if (order < 0 || order > 3) throw std::invalid_argument("m2 derivative order must be in 0..3");
    check_domain(action, tau);
    // Leibniz rule on c^2/2 for each coefficient
    const auto half_square_derivative = [&](const Coefficient& c) {
        if (c.empty()) return 0.0;
        const double c0 = c.derivative(0, action, tau);
        if (order == 0) return 0.5 * c0 * c0;
        const double c1 = c.derivative(1, action, tau);
        if (order == 1) return c0 * c1;
        const double c2 = c.derivative(2, action, tau);
        if (order == 2) return c1 * c1 + c0 * c2;
        const double c3 = c.derivative(3, action, tau);
        return 3 * c1 * c2 + c0 * c3;
    };
    double sum = 0;
    for (const HarmonicCoefficient& h : harmonics_)
        sum += half_square_derivative(h.a) + half_square_derivative(h.b);
    return sum;
}

double HarmonicModel::r2_dI(double action, double tau) const
{
    check_domain(action, tau);
    const double w = checked_omega(tau);
    return -m2(action, tau, 2) / (2 * w);
}

ResonanceGeometry find_resonance(const HarmonicModel& model, Interval window)
{
    if (!(window.lo < window.hi)) throw ConfigError("resonance window must satisfy tau- < tau+");
    const auto& omega = model.frequency().omega;
    double lo = window.lo;
    double hi = window.hi;
    double w_lo = omega(lo);
    const double w_hi = omega(hi);
    if (!(w_lo * w_hi < 0)) {
        std::ostringstream os;
        os.precision(17);
        os << "omega does not change sign on " << format_interval(window) << ": omega(tau-)=" << w_lo
           << ", omega(tau+)=" << w_hi;
        throw ConfigError(os.str());
    }

    // a second sign change would mean more than one resonance in the window
    constexpr int kScan = 4096;
    int sign_changes = 0;
    double prev = w_lo;
    for (int i = 1; i <= kScan; ++i) {
        const double w = omega(window.lo + window.width() * i / kScan);
        if ((prev < 0 && w > 0) || (prev > 0 && w < 0)) ++sign_changes;
        if (w != 0) prev = w;
    }
    if (sign_changes > 1) throw ConfigError("omega vanishes more than once in the window");

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double w = omega(mid);
        if (std::abs(w) < 1e-14 || hi - lo < 1e-14) break;
        if ((w < 0) == (w_lo < 0)) {
            lo = mid;
            w_lo = w;
        } else {
            hi = mid;
        }
    }

    ResonanceGeometry g;
    g.tau_star = mid;
    g.omega_prime_star = model.omega_prime(mid);
    g.window = window;
    g.symmetric = std::abs((window.hi - mid) - (mid - window.lo)) <= 1e-12;
    if (!(std::abs(g.omega_prime_star) >= kOmegaPrimeFloor)) {
        std::ostringstream os;
        os.precision(17);
        os << "degenerate resonance at tau*=" << mid << ": omega'*=" << g.omega_prime_star;
        throw DegenerateResonanceError(os.str());
    }
    return g;
}

namespace {

FrequencyProfile exp_shift_frequency()
{
    return {[](double tau) { return std::exp(tau - 1) - 1; },
            [](double tau) { return std::exp(tau - 1); },
            [](double tau) { return std::exp(tau - 1) - tau; }};
}

constexpr Interval kExampleActions{0.0, 3.9};
constexpr Interval kExampleTimes{-1.0, 3.0};

}  // namespace

HarmonicModel example_model()
{
    // A = I s g with s = sqrt(4 - I), g = 1/sqrt(exp(tau - 1) + 1)
    const auto g = [](double tau) { return 1 / std::sqrt(std::exp(tau - 1) + 1); };
    Coefficient amplitude;
    amplitude.value = [g](double I, double tau) { return I * std::sqrt(4 - I) * g(tau); };
    amplitude.dI[0] = [g](double I, double tau) {
        const double s = std::sqrt(4 - I);
        return (8 - 3 * I) / (2 * s) * g(tau);
    };
    amplitude.dI[1] = [g](double I, double tau) {
        const double s = std::sqrt(4 - I);
        return (3 * I - 16) / (4 * s * s * s) * g(tau);
    };
    amplitude.dI[2] = [g](double I, double tau) {
        const double s = std::sqrt(4 - I);
        return (3 * I - 24) / (8 * s * s * s * s * s) * g(tau);
    };
    HarmonicCoefficient first;
    first.k = 1;
    first.b = std::move(amplitude);
    return HarmonicModel("paper-example", exp_shift_frequency(), Coefficient{}, {first},
                         kExampleActions, kExampleTimes);
}

HarmonicModel zero_model()
{
    return HarmonicModel("zero", exp_shift_frequency(), Coefficient{}, {}, kExampleActions,
                         kExampleTimes);
}

}  // namespace resonance
