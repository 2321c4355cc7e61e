#include "resonance/quadrature.hpp"

#include "resonance/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace resonance {

namespace {

// Kronrod abscissae on [0,1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> XGK = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> WGK = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> WG = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod15(const ScalarFn& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * WGK[7];
    double gauss = fc * WG[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * XGK[j];
        const double sum = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * sum;
        if (j % 2 == 1) gauss += WG[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const ScalarFn& f, double a, double b,
                                    double abs_tol, int max_intervals)
{
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = integrate_adaptive(f, b, a, abs_tol, max_intervals);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<Panel> panels;
    Panel first = kronrod15(f, a, b);
    double total = first.value;
    double error = first.error;
    panels.push(first);

    while (error > abs_tol) {
        if (static_cast<int>(panels.size()) >= max_intervals) {
            std::ostringstream os;
            os.precision(17);
            os << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimate "
               << total << ", error " << error << " after " << panels.size() << " intervals";
            throw AccuracyError(os.str(), total, error);
        }
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // cannot bisect further in double precision
            std::ostringstream os;
            os << "adaptive quadrature exhausted floating-point resolution near " << mid;
            throw AccuracyError(os.str(), total, error);
        }
        panels.pop();
        const Panel left = kronrod15(f, worst.a, mid);
        const Panel right = kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        if (!std::isfinite(total)) {
            throw AccuracyError("adaptive quadrature produced a non-finite value", total, error);
        }
    }

    // re-sum from scratch; the running totals accumulate cancellation error
    QuadratureResult out;
    out.intervals = static_cast<int>(panels.size());
    std::vector<Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : all) {
        out.value += p.value;
        out.abs_error += p.error;
    }
    return out;
}

double integrate(const ScalarFn& f, double a, double b, double abs_tol)
{
    return integrate_adaptive(f, a, b, abs_tol).value;
}

}  // namespace resonance
