#include "resonance/cli.hpp"

#include "resonance/config.hpp"
#include "resonance/errors.hpp"
#include "resonance/experiment.hpp"
#include "resonance/odesim.hpp"
#include "resonance/predictor.hpp"
#include "resonance/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace resonance {

namespace {

namespace fs = std::filesystem;

struct Overrides {
    std::string config_path;
    std::optional<double> eps;
    std::optional<double> phi0;
    std::optional<double> step;
    std::optional<int> threads;
    std::optional<std::string> out;
    bool fast = false;
};

RunConfig resolve(const Overrides& o)
{
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
    nlohmann::json j = to_json(cfg);
    if (o.eps) j["eps"] = *o.eps;
    if (o.phi0) j["phi0"] = *o.phi0;
    if (o.step) j["step"] = *o.step;
    if (o.threads) j["threads"] = *o.threads;
    if (o.out) j["out"] = *o.out;
    if (o.fast) j["fast"] = true;
    return run_config_from_json(j);  // re-validates with overrides applied
}

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out)
{
    const HarmonicModel model = build_model(cfg.model);
    const ResonanceGeometry geo = find_resonance(model, cfg.window);
    const PredictionReport report =
        predict_crossing(PredictionInputs::make(model, geo, cfg.eps, cfg.action0, cfg.phi0));
    print_report(out, report);
    std::ofstream csv = open_output(fs::path(cfg.out) / "prediction.csv");
    write_report_csv(csv, report);
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out)
{
    const HarmonicModel model = build_model(cfg.model);
    const ResonanceGeometry geo = find_resonance(model, cfg.window);
    SimConfig sim;
    sim.eps = cfg.eps;
    sim.action0 = cfg.action0;
    sim.phase0 = cfg.phi0;
    sim.window = cfg.window;
    sim.step = cfg.step > 0 ? cfg.step : default_step(model, cfg.window, cfg.eps, {cfg.steps_per_period, cfg.max_steps});
    sim.sample_times = {cfg.window.lo, geo.tau_star, cfg.window.hi};
    for (int j = 1; j <= cfg.dense_samples; ++j)
        sim.sample_times.push_back(cfg.window.lo + cfg.window.width() * j / (cfg.dense_samples + 1));
    std::sort(sim.sample_times.begin(), sim.sample_times.end());
    const std::vector<TrajectorySample> samples = integrate(model, sim);
    const fs::path path = fs::path(cfg.out) / "trajectory.csv";
    std::ofstream csv = open_output(path);
    write_trajectory_csv(csv, samples);
    const auto old = out.precision(17);
    out << "step = " << sim.step << '\n'
        << "tau_star = " << geo.tau_star << '\n'
        << "I_plus = " << samples.back().action << '\n'
        << "phi_plus = " << samples.back().phi << '\n'
        << "rows = " << samples.size() << '\n'
        << "wrote " << path.string() << '\n';
    out.precision(old);
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const HarmonicModel model = build_model(cfg.model);
    const SweepConfig sc = sweep_config(cfg);
    const fs::path dir(cfg.out);
    try {
        const ConvergenceTable table = run_sweep(model, sc);
        write_sweep_outputs(dir, table);
        write_fit_text(out, table);
        out << "wrote " << dir.string() << '\n';
        return 0;
    } catch (const SweepError& e) {
        std::ofstream csv = open_output(dir / "cells.partial.csv");
        write_cells_csv(csv, e.completed());
        err << "error: " << e.what() << "\n" << e.completed().size() << " completed cells written to "
            << (dir / "cells.partial.csv").string() << '\n';
        return 1;
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    const HarmonicModel model = build_model(cfg.model);
    VerifyOptions base;
    base.window = cfg.window;
    base.action0 = cfg.action0;
    base.phase_count = cfg.phase_count;
    const VerifyOptions options = verify_options_from_environment(base);
    const std::vector<CheckResult> checks = run_verify_suite(model, options);
    print_checks(out, checks);
    std::size_t failed = 0;
    for (const CheckResult& c : checks)
        if (!c.passed) ++failed;
    if (failed) {
        out << failed << " of " << checks.size() << " checks FAILED:";
        for (const CheckResult& c : checks)
            if (!c.passed) out << ' ' << c.name;
        out << '\n';
        return 1;
    }
    out << "all " << checks.size() << " checks passed\n";
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Resonance-passage prediction and verification"};
    app.require_subcommand(1);
    Overrides o;
    app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--eps", o.eps, "small parameter");
    app.add_option("--phi0", o.phi0, "phase at the start of the window");
    app.add_option("--step", o.step, "fixed fast-time RK4 step (0 = default)");
    app.add_option("--threads", o.threads, "sweep workers (0 = hardware concurrency)");
    app.add_option("--out", o.out, "output directory");
    app.add_flag("--fast", o.fast, "reduced sweep grid");

    std::string command;
    for (const char* name : {"predict", "simulate", "sweep", "verify", "print-config"}) {
        app.add_subcommand(name)->fallthrough()->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    RunConfig cfg;
    try {
        cfg = resolve(o);
        if (command == "print-config") {
            out << to_json(cfg).dump(2) << '\n';
            return 0;
        }
        if (command == "predict") return cmd_predict(cfg, out);
        if (command == "simulate") return cmd_simulate(cfg, out);
        if (command == "sweep") return cmd_sweep(cfg, out, err);
        return cmd_verify(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace resonance
