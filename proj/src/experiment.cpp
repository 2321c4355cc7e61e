#include "resonance/experiment.hpp"

#include "resonance/errors.hpp"
#include "resonance/predictor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace resonance {

std::vector<double> default_eps_grid()
{
    return {0.02, 0.015, 0.01, 0.007, 0.005, 0.003, 0.002, 0.0015, 0.001, 0.0007, 0.0005};
}

std::vector<double> fast_eps_grid() { return {0.02, 0.01, 0.005, 0.0025}; }

void SweepConfig::validate() const
{
    if (phase_count < 2) throw ConfigError("phase count must be at least 2");
    if (eps_values.empty()) throw ConfigError("eps list is empty");
    for (std::size_t i = 0; i < eps_values.size(); ++i) {
        if (!(eps_values[i] > 0 && eps_values[i] <= 0.1)) throw ConfigError("eps values must lie in (0, 0.1]");
        if (i > 0 && !(eps_values[i] < eps_values[i - 1]))
            throw ConfigError("eps values must be strictly descending");
    }
    if (threads < 0) throw ConfigError("thread count must be non-negative");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw DegenerateFitError("least-squares fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw DegenerateFitError("least-squares fit needs distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0 ? 1.0 : 1 - ss_res / syy;
    return fit;
}

LineFit fit_slope(const std::vector<double>& eps, const std::vector<double>& errors)
{
    if (eps.size() != errors.size()) throw std::invalid_argument("fit_slope: size mismatch");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0) || !(errors[i] > 0)) {
            std::ostringstream os;
            os.precision(17);
            os << "log-log fit needs positive data, got eps=" << eps[i] << ", E=" << errors[i];
            throw DegenerateFitError(os.str());
        }
        x.push_back(std::log(eps[i]));
        y.push_back(std::log(errors[i]));
    }
    return fit_line(x, y);
}

CellRecord run_cell(const HarmonicModel& model, const ResonanceGeometry& geometry,
                    const SweepConfig& cfg, double eps, double phase_minus)
{
    SimConfig sim;
    sim.eps = eps;
    sim.action0 = cfg.action0;
    sim.phase0 = phase_minus;
    sim.window = cfg.window;
    sim.step = cfg.step > 0 ? cfg.step : default_step(model, cfg.window, eps, cfg.step_policy);
    sim.sample_times = {cfg.window.hi};
    const TrajectorySample end = integrate(model, sim).front();

    const PredictionInputs in = PredictionInputs::make(model, geometry, eps, cfg.action0, phase_minus);
    const PredictionReport report = predict_crossing(in);
    return {eps, phase_minus, end.action, end.phi, report.action_plus, report.phase_plus,
            report.action_plus_classic};
}

ConvergenceTable run_sweep(const HarmonicModel& model, const SweepConfig& cfg)
{
    cfg.validate();
    const ResonanceGeometry geometry = find_resonance(model, cfg.window);

    const std::size_t n_phase = static_cast<std::size_t>(cfg.phase_count);
    const std::size_t n_cells = cfg.eps_values.size() * n_phase;
    std::vector<CellRecord> cells(n_cells);
    std::vector<std::exception_ptr> failures(n_cells);
    std::vector<char> done(n_cells, 0);

    const auto phase_of = [&](std::size_t j) {
        return 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phase);
    };

    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    const auto worker = [&]() {
        for (;;) {
            if (abort.load()) return;
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_cells) return;
            try {
                cells[idx] = run_cell(model, geometry, cfg, cfg.eps_values[idx / n_phase], phase_of(idx % n_phase));
                done[idx] = 1;
            } catch (...) {
                failures[idx] = std::current_exception();
                abort.store(true);
            }
        }
    };

    unsigned width = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : static_cast<unsigned>(cfg.threads);
    width = static_cast<unsigned>(std::min<std::size_t>(width, n_cells));
    if (width <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    for (std::size_t idx = 0; idx < n_cells; ++idx) {
        if (!failures[idx]) continue;
        std::ostringstream os;
        os.precision(17);
        os << "sweep cell (eps=" << cfg.eps_values[idx / n_phase] << ", phi-=" << phase_of(idx % n_phase)
           << ") failed: ";
        try {
            std::rethrow_exception(failures[idx]);
        } catch (const std::exception& e) {
            os << e.what();
        }
        std::vector<CellRecord> completed;
        for (std::size_t k = 0; k < n_cells; ++k)
            if (done[k]) completed.push_back(cells[k]);
        throw SweepError(os.str(), std::move(completed));
    }

    ConvergenceTable table;
    table.cells = cells;
    std::vector<double> eps, e_action, e_phase, e_classic;
    for (std::size_t i = 0; i < cfg.eps_values.size(); ++i) {
        ErrorRow row{cfg.eps_values[i], 0, 0, 0};
        for (std::size_t j = 0; j < n_phase; ++j) {
            const CellRecord& c = cells[i * n_phase + j];
            row.action_error = std::max(row.action_error, std::abs(c.action_plus_numeric - c.action_plus_theory));
            row.phase_error = std::max(row.phase_error, std::abs(c.phase_plus_numeric - c.phase_plus_theory));
            row.action_error_classic =
                std::max(row.action_error_classic, std::abs(c.action_plus_numeric - c.action_plus_classic));
        }
        table.rows.push_back(row);
        eps.push_back(row.eps);
        e_action.push_back(row.action_error);
        e_phase.push_back(row.phase_error);
        e_classic.push_back(row.action_error_classic);
    }

    const auto try_fit = [&](const std::vector<double>& errors) -> std::optional<LineFit> {
        if (eps.size() < 2) return std::nullopt;
        if (std::any_of(errors.begin(), errors.end(), [](double e) { return !(e > 0); })) {
            table.degenerate = true;
            return std::nullopt;
        }
        return fit_slope(eps, errors);
    };
    table.action_fit = try_fit(e_action);
    table.phase_fit = try_fit(e_phase);
    table.classic_fit = try_fit(e_classic);
    return table;
}

std::vector<ResidualRow> run_residual_ladder(const HarmonicModel& model, const SweepConfig& cfg)
{
    cfg.validate();
    const ResonanceGeometry geometry = find_resonance(model, cfg.window);
    std::vector<ResidualRow> rows;
    for (double eps : cfg.eps_values) {
        ResidualRow row{eps, 0, 0, 0, 0};
        for (int j = 0; j < cfg.phase_count; ++j) {
            const double phase = 2 * std::numbers::pi * j / cfg.phase_count;
            SimConfig sim;
            sim.eps = eps;
            sim.action0 = cfg.action0;
            sim.phase0 = phase;
            sim.window = cfg.window;
            sim.step = cfg.step > 0 ? cfg.step : default_step(model, cfg.window, eps, cfg.step_policy);
            sim.sample_times = {geometry.tau_star, cfg.window.hi};
            const std::vector<TrajectorySample> s = integrate(model, sim);

            const PredictionInputs in = PredictionInputs::make(model, geometry, eps, cfg.action0, phase);
            const MidResonanceEstimate mid = mid_resonance_estimates(in, Side::minus);
            const CrossingResiduals r =
                crossing_residuals(in, {s[0].action, s[0].phi, s[1].action, s[1].phi});
            row.action_star_error = std::max(row.action_star_error, std::abs(s[0].action - mid.action_star));
            row.phase_star_error = std::max(row.phase_star_error, std::abs(s[0].phi - mid.phase_star));
            row.action_residual = std::max(row.action_residual, std::abs(r.action));
            row.phase_residual = std::max(row.phase_residual, std::abs(r.phase));
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> successive_ratios(const std::vector<double>& errors)
{
    std::vector<double> out;
    for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(errors[i - 1] / errors[i]);
    return out;
}

void write_cells_csv(std::ostream& out, const std::vector<CellRecord>& cells)
{
    const auto old_precision = out.precision(17);
    out << "eps,phi_minus,I_plus_num,phi_plus_num,I_plus_theor,phi_plus_theor,I_plus_classic\n";
    for (const CellRecord& c : cells) {
        out << c.eps << ',' << c.phase_minus << ',' << c.action_plus_numeric << ',' << c.phase_plus_numeric
            << ',' << c.action_plus_theory << ',' << c.phase_plus_theory << ',' << c.action_plus_classic << '\n';
    }
    out.precision(old_precision);
}

void write_errors_csv(std::ostream& out, const std::vector<ErrorRow>& rows)
{
    const auto old_precision = out.precision(17);
    out << "eps,E_I,E_phi,E_I_classic\n";
    for (const ErrorRow& r : rows)
        out << r.eps << ',' << r.action_error << ',' << r.phase_error << ',' << r.action_error_classic << '\n';
    out.precision(old_precision);
}

namespace {

void write_fit_line(std::ostream& out, const char* label, const std::optional<LineFit>& fit)
{
    out << label << ": ";
    if (fit)
        out << "slope=" << fit->slope << " intercept=" << fit->intercept << " r2=" << fit->r_squared << '\n';
    else
        out << "degenerate (no fit)\n";
}

}  // namespace

void write_fit_text(std::ostream& out, const ConvergenceTable& table)
{
    const auto old_precision = out.precision(17);
    write_fit_line(out, "E_I", table.action_fit);
    write_fit_line(out, "E_phi", table.phase_fit);
    write_fit_line(out, "E_I_classic", table.classic_fit);
    out.precision(old_precision);
}

void write_loglog_svg(std::ostream& out, const std::vector<double>& eps, const std::vector<double>& errors,
                      const std::optional<LineFit>& fit, const std::string& title)
{
    constexpr double W = 640, H = 480, L = 70, R = 20, T = 40, B = 60;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] > 0 && errors[i] > 0) {
            xs.push_back(std::log(eps[i]));
            ys.push_back(std::log(errors[i]));
        }
    }
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    if (!xs.empty()) {
        x0 = *std::min_element(xs.begin(), xs.end());
        x1 = *std::max_element(xs.begin(), xs.end());
        y0 = *std::min_element(ys.begin(), ys.end());
        y1 = *std::max_element(ys.begin(), ys.end());
    }
    const double padx = std::max(0.05 * (x1 - x0), 0.1), pady = std::max(0.05 * (y1 - y0), 0.1);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
    const auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    const auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    const auto old_precision = out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        out << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << xv << "</text>\n";
        out << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << yv
            << "</text>\n";
    }
    out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">ln eps</text>\n";
    out << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (T + H - B) / 2 << ")\">ln E</text>\n";
    if (fit) {
        out << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(fit->intercept + fit->slope * x0) << "\" x2=\"" << sx(x1)
            << "\" y2=\"" << sy(fit->intercept + fit->slope * x1) << "\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << L + 10 << "\" y=\"" << T + 14 << "\" font-size=\"12\">slope " << fit->slope << "</text>\n";
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << "<circle cx=\"" << sx(xs[i]) << "\" cy=\"" << sy(ys[i]) << "\" r=\"4\" fill=\"crimson\"/>\n";
    out << "</svg>\n";
    out.precision(old_precision);
}

void write_sweep_outputs(const std::filesystem::path& dir, const ConvergenceTable& table)
{
    std::filesystem::create_directories(dir);
    const auto open = [&](const char* name) {
        std::ofstream f(dir / name);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("cells.csv");
        write_cells_csv(f, table.cells);
    }
    {
        auto f = open("errors.csv");
        write_errors_csv(f, table.rows);
    }
    {
        auto f = open("fit.txt");
        write_fit_text(f, table);
    }
    std::vector<double> eps, e_action, e_phase, e_classic;
    for (const ErrorRow& r : table.rows) {
        eps.push_back(r.eps);
        e_action.push_back(r.action_error);
        e_phase.push_back(r.phase_error);
        e_classic.push_back(r.action_error_classic);
    }
    {
        // gnuplot: plot 'errors.dat' using 1:2, '' using 1:3, '' using 1:4
        auto f = open("errors.dat");
        f.precision(17);
        f << "# ln_eps ln_E_I ln_E_phi ln_E_I_classic\n";
        for (std::size_t i = 0; i < eps.size(); ++i) {
            const auto ln = [](double v) { return v > 0 ? std::log(v) : std::nan(""); };
            f << std::log(eps[i]) << ' ' << ln(e_action[i]) << ' ' << ln(e_phase[i]) << ' ' << ln(e_classic[i]) << '\n';
        }
    }
    {
        auto f = open("E_I.svg");
        write_loglog_svg(f, eps, e_action, table.action_fit, "E_I: max |I+ num - I+ theor|");
    }
    {
        auto f = open("E_phi.svg");
        write_loglog_svg(f, eps, e_phase, table.phase_fit, "E_phi: max |phi+ num - phi+ theor|");
    }
    {
        auto f = open("E_I_classic.svg");
        write_loglog_svg(f, eps, e_classic, table.classic_fit, "E_I classical jump formula");
    }
}

}  // namespace resonance
