#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resonance/config.hpp"
#include "resonance/errors.hpp"
#include "resonance/experiment.hpp"
#include "resonance/predictor.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace resonance;
namespace fs = std::filesystem;

namespace {

SweepConfig small_sweep(int threads = 1)
{
    SweepConfig cfg;
    cfg.phase_count = 4;
    cfg.eps_values = {0.02, 0.01};
    cfg.threads = threads;
    return cfg;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("fit on an exact power law")
{
    std::vector<double> eps{0.02, 0.01, 0.005, 0.001}, err;
    for (double x : eps) err.push_back(3.0 * std::pow(x, 1.5));
    const LineFit fit = fit_slope(eps, err);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("three-point least squares by hand")
{
    // x = 0,1,2; y = 1,2,4: slope 3/2, intercept 5/6, r^2 = 27/28
    const LineFit fit = fit_line({0, 1, 2}, {1, 2, 4});
    CHECK(std::abs(fit.slope - 1.5) < 1e-12);
    CHECK(std::abs(fit.intercept - 5.0 / 6.0) < 1e-12);
    CHECK(std::abs(fit.r_squared - 27.0 / 28.0) < 1e-12);
}

TEST_CASE("degenerate fits are rejected")
{
    CHECK_THROWS_AS(fit_line({1.0}, {2.0}), DegenerateFitError);
    CHECK_THROWS_AS(fit_line({1.0, 1.0}, {2.0, 3.0}), DegenerateFitError);
    CHECK_THROWS_AS(fit_slope({0.02, 0.01}, {0.0, 1e-3}), DegenerateFitError);
    CHECK_THROWS_AS(fit_slope({0.02, 0.01}, {-1.0, 1e-3}), DegenerateFitError);
}

TEST_CASE("successive ratios")
{
    const auto r = successive_ratios({8, 4, 1});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == 2.0);
    CHECK(r[1] == 4.0);
    CHECK(successive_ratios({1.0}).empty());
}

TEST_CASE("sweep configuration validation")
{
    SweepConfig cfg = small_sweep();
    cfg.phase_count = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_sweep();
    cfg.eps_values.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.eps_values = {0.01, 0.02};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.eps_values = {0.2, 0.01};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.eps_values = {0.01, 0.01};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_sweep(-1);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(default_eps_grid().size() == 11);
    CHECK_NOTHROW(SweepConfig{}.validate());
}

TEST_CASE("a cell pairs the reference run with the predictions")
{
    const HarmonicModel m = example_model();
    const ResonanceGeometry geo = find_resonance(m, {0, 2});
    const SweepConfig cfg = small_sweep();
    const CellRecord c = run_cell(m, geo, cfg, 0.01, 0.5);
    const PredictionReport r = predict_crossing(PredictionInputs::make(m, geo, 0.01, 1.0, 0.5));
    CHECK(c.action_plus_theory == r.action_plus);
    CHECK(c.phase_plus_theory == r.phase_plus);
    CHECK(c.action_plus_classic == r.action_plus_classic);
    CHECK(std::abs(c.action_plus_numeric - r.action_plus) < 5e-3);
    CHECK(std::abs(c.phase_plus_numeric - r.phase_plus) < 5e-2);
}

TEST_CASE("sweep is deterministic and independent of the thread count")
{
    const HarmonicModel m = example_model();
    const ConvergenceTable serial = run_sweep(m, small_sweep(1));
    const ConvergenceTable again = run_sweep(m, small_sweep(1));
    const ConvergenceTable parallel = run_sweep(m, small_sweep(3));
    REQUIRE(serial.cells.size() == 8);
    for (const ConvergenceTable* t : {&again, &parallel}) {
        REQUIRE(t->cells.size() == serial.cells.size());
        for (std::size_t i = 0; i < serial.cells.size(); ++i) {
            CHECK(t->cells[i].eps == serial.cells[i].eps);
            CHECK(t->cells[i].phase_minus == serial.cells[i].phase_minus);
            CHECK(t->cells[i].action_plus_numeric == serial.cells[i].action_plus_numeric);
            CHECK(t->cells[i].phase_plus_numeric == serial.cells[i].phase_plus_numeric);
        }
        for (std::size_t i = 0; i < serial.rows.size(); ++i) {
            CHECK(t->rows[i].action_error == serial.rows[i].action_error);
            CHECK(t->rows[i].phase_error == serial.rows[i].phase_error);
        }
        CHECK(t->action_fit->slope == serial.action_fit->slope);
    }
    CHECK(serial.cells[1].phase_minus == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("error columns are maxima over the phase cells")
{
    const HarmonicModel m = example_model();
    const ConvergenceTable t = run_sweep(m, small_sweep());
    for (const ErrorRow& row : t.rows) {
        double e_i = 0, e_phi = 0, e_c = 0;
        for (const CellRecord& c : t.cells) {
            if (c.eps != row.eps) continue;
            e_i = std::max(e_i, std::abs(c.action_plus_numeric - c.action_plus_theory));
            e_phi = std::max(e_phi, std::abs(c.phase_plus_numeric - c.phase_plus_theory));
            e_c = std::max(e_c, std::abs(c.action_plus_numeric - c.action_plus_classic));
        }
        CHECK(row.action_error == e_i);
        CHECK(row.phase_error == e_phi);
        CHECK(row.action_error_classic == e_c);
    }
}

TEST_CASE("errors shrink with eps on the reduced grid")
{
    const HarmonicModel m = example_model();
    SweepConfig cfg;
    cfg.phase_count = 8;
    cfg.eps_values = fast_eps_grid();
    const ConvergenceTable t = run_sweep(m, cfg);
    int inversions = 0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i].action_error > t.rows[i - 1].action_error) ++inversions;
    CHECK(inversions <= 1);
    REQUIRE(t.action_fit);
    REQUIRE(t.classic_fit);
    CHECK(t.action_fit->slope > 1.3);
    CHECK(t.classic_fit->slope < t.action_fit->slope);
}

TEST_CASE("unperturbed model gives zero errors and skips the fits")
{
    const ConvergenceTable t = run_sweep(zero_model(), small_sweep());
    CHECK(t.degenerate);
    CHECK_FALSE(t.action_fit);
    CHECK_FALSE(t.classic_fit);
    for (const ErrorRow& r : t.rows) {
        CHECK(r.action_error == 0.0);
        CHECK(r.action_error_classic == 0.0);
        CHECK(r.phase_error <= 1e-12);
    }
    std::ostringstream fit;
    write_fit_text(fit, t);
    CHECK(fit.str().find("E_I: degenerate (no fit)") != std::string::npos);
}

TEST_CASE("failing cells surface with their coordinates")
{
    const HarmonicModel narrow = build_model(nlohmann::json{
        {"type", "polynomial-harmonics"},
        {"frequency", {{"kind", "exp_shift"}}},
        {"harmonics", {{{"k", 1}, {"sin", {{{"poly", {0.0, 1.0}}, {"profile", "inv_sqrt_exp"}}}}}}},
        {"action_domain", {0.97, 1.03}}});
    try {
        run_sweep(narrow, small_sweep());
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        const std::string what = e.what();
        CHECK(what.find("eps=") != std::string::npos);
        CHECK(what.find("phi-=") != std::string::npos);
        CHECK(e.completed().size() < 8);
    }
}

TEST_CASE("sweep artifacts")
{
    const HarmonicModel m = example_model();
    const ConvergenceTable t = run_sweep(m, small_sweep());
    const fs::path dir = fs::temp_directory_path() / "resonance_sweep_artifacts";
    fs::remove_all(dir);
    write_sweep_outputs(dir, t);
    for (const char* f : {"cells.csv", "errors.csv", "fit.txt", "errors.dat", "E_I.svg", "E_phi.svg", "E_I_classic.svg"})
        CHECK(fs::exists(dir / f));
    const std::string cells = slurp(dir / "cells.csv");
    CHECK(std::count(cells.begin(), cells.end(), '\n') == 9);
    CHECK(cells.rfind("eps,phi_minus,I_plus_num", 0) == 0);
    CHECK(slurp(dir / "fit.txt").find("r2=") != std::string::npos);
    CHECK(slurp(dir / "E_I.svg").rfind("<svg", 0) == 0);
    CHECK(slurp(dir / "errors.csv").rfind("eps,E_I,E_phi,E_I_classic\n", 0) == 0);

    // byte-identical on a second write
    const std::string first = slurp(dir / "errors.csv") + slurp(dir / "E_phi.svg");
    write_sweep_outputs(dir, run_sweep(m, small_sweep(2)));
    CHECK(slurp(dir / "errors.csv") + slurp(dir / "E_phi.svg") == first);
    fs::remove_all(dir);
}
