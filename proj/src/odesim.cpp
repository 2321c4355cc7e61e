#include "resonance/odesim.hpp"

#include "resonance/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace resonance {

double phase_accumulator(const HarmonicModel& model, double tau_from, double tau)
{
    const FrequencyProfile& freq = model.frequency();
    if (freq.omega_antiderivative)
        return freq.omega_antiderivative(tau) - freq.omega_antiderivative(tau_from);
    return integrate(freq.omega, tau_from, tau, 1e-13);
}

double default_step(const HarmonicModel& model, Interval window, double eps, const StepPolicy& policy)
{
    constexpr int kProbe = 2000;
    double max_omega = 0;
    for (int i = 0; i <= kProbe; ++i)
        max_omega = std::max(max_omega, std::abs(model.omega(window.lo + window.width() * i / kProbe)));
    double h = 2 * std::numbers::pi / (policy.steps_per_period * (1 + max_omega));
    const double span = window.width() / eps;
    if (span / h > policy.max_steps) h = span / policy.max_steps;
    return h;
}

namespace {

class Rotator {
public:
    Rotator(const HarmonicModel& model, double eps, double phase_origin)
        : model_(model), eps_(eps), origin_(phase_origin)
    {
    }

    double phase(double tau) const { return phase_accumulator(model_, origin_, tau) / eps_; }

    // derivatives with respect to slow time: dI/dtau = -dH1/dphi, dchi/dtau = dH1/dI
    PhaseState rhs(double tau, const PhaseState& s) const
    {
        if (!std::isfinite(s.action) || !std::isfinite(s.chi))
            throw TrajectoryError("numerical blow-up: non-finite state", tau, s.action, s.chi);
        if (!model_.action_domain().contains(s.action) || !model_.time_domain().contains(tau)) {
            std::ostringstream os;
            os.precision(17);
            os << "trajectory left the domain of model '" << model_.name() << "' at tau=" << tau
               << " with I=" << s.action;
            throw TrajectoryError(os.str(), tau, s.action, s.chi);
        }
        const auto g = model_.h1_gradient(s.action, s.chi + phase(tau), tau);
        return {-g.dphi, g.dI};
    }

private:
    const HarmonicModel& model_;
    double eps_;
    double origin_;
};

PhaseState rk4_step(const Rotator& f, double tau, const PhaseState& s, double dtau)
{
    const PhaseState k1 = f.rhs(tau, s);
    const PhaseState k2 = f.rhs(tau + 0.5 * dtau, {s.action + 0.5 * dtau * k1.action, s.chi + 0.5 * dtau * k1.chi});
    const PhaseState k3 = f.rhs(tau + 0.5 * dtau, {s.action + 0.5 * dtau * k2.action, s.chi + 0.5 * dtau * k2.chi});
    const PhaseState k4 = f.rhs(tau + dtau, {s.action + dtau * k3.action, s.chi + dtau * k3.chi});
    return {s.action + dtau / 6 * (k1.action + 2 * (k2.action + k3.action) + k4.action),
            s.chi + dtau / 6 * (k1.chi + 2 * (k2.chi + k3.chi) + k4.chi)};
}

PhaseState advance(const Rotator& f, PhaseState s, double tau_from, double tau_to, double dtau_abs)
{
    const double span = tau_to - tau_from;
    if (span == 0) return s;
    const double dtau = std::copysign(dtau_abs, span);
    // full steps, then one shortened step onto tau_to; a remainder below
    // 1e-9 of a step is absorbed into the count rather than taken separately
    const double ratio = std::abs(span) / dtau_abs;
    auto full = static_cast<long long>(std::floor(ratio));
    if (ratio - static_cast<double>(full) > 1 - 1e-9) ++full;
    for (long long n = 0; n < full; ++n) {
        const double tau = tau_from + static_cast<double>(n) * dtau;
        s = rk4_step(f, tau, s, dtau);
    }
    const double reached = tau_from + static_cast<double>(full) * dtau;
    const double rest = tau_to - reached;
    if (std::abs(rest) > 1e-9 * dtau_abs) s = rk4_step(f, reached, s, rest);
    f.rhs(tau_to, s);  // domain and finiteness check at the landing point
    return s;
}

}  // namespace

PhaseState integrate_segment(const HarmonicModel& model, double eps, double phase_origin,
                             PhaseState start, double tau_from, double tau_to, double step)
{
    if (!(eps > 0)) throw ConfigError("eps must be positive");
    if (step == 0) throw ConfigError("integration step must be nonzero");
    Rotator f(model, eps, phase_origin);
    return advance(f, start, tau_from, tau_to, std::abs(step) * eps);
}

std::vector<TrajectorySample> integrate(const HarmonicModel& model, const SimConfig& cfg)
{
    if (!(cfg.eps > 0 && cfg.eps <= 0.1)) throw ConfigError("eps must lie in (0, 0.1]");
    if (!(cfg.window.lo < cfg.window.hi)) throw ConfigError("window must satisfy tau- < tau+");
    for (double t : cfg.sample_times)
        if (!cfg.window.contains(t)) throw ConfigError("sampling time outside the integration window");
    model.check_domain(cfg.action0, cfg.window.lo);

    const double h = cfg.step > 0 ? cfg.step : default_step(model, cfg.window, cfg.eps);
    const double dtau = h * cfg.eps;
    const Rotator f(model, cfg.eps, cfg.window.lo);

    // visit sampling times in increasing order, report in the caller's order
    std::vector<std::size_t> order(cfg.sample_times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.sample_times[a] < cfg.sample_times[b]; });

    std::vector<TrajectorySample> out(cfg.sample_times.size());
    PhaseState state{cfg.action0, cfg.phase0};
    double tau = cfg.window.lo;
    for (std::size_t idx : order) {
        const double target = cfg.sample_times[idx];
        state = advance(f, state, tau, target, dtau);
        tau = target;
        out[idx] = {target, state.action, state.chi, state.chi + f.phase(target)};
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples)
{
    const auto old_precision = out.precision(17);
    out << "tau,I,chi,phi\n";
    for (const TrajectorySample& s : samples)
        out << s.tau << ',' << s.action << ',' << s.chi << ',' << s.phi << '\n';
    out.precision(old_precision);
}

}  // namespace resonance
