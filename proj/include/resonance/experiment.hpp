#pragma once

#include "resonance/model.hpp"
#include "resonance/odesim.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resonance {

/// The eleven eps values of the reference experiment, descending.
std::vector<double> default_eps_grid();
/// Reduced desk-scale grid used by --fast.
std::vector<double> fast_eps_grid();

struct SweepConfig {
    int phase_count = 48;  ///< phi- = 2 pi j / phase_count, j = 0 .. phase_count-1
    std::vector<double> eps_values = default_eps_grid();
    double action0 = 1.0;
    Interval window{0.0, 2.0};
    StepPolicy step_policy;
    double step = 0;   ///< fixed fast-time step override; <= 0 uses the policy
    int threads = 1;   ///< 0 picks hardware concurrency

    void validate() const;
};

struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares of y on x; throws DegenerateFitError for < 2 points or constant x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// OLS on (ln eps, ln E); throws DegenerateFitError when any E <= 0.
LineFit fit_slope(const std::vector<double>& eps, const std::vector<double>& errors);

struct CellRecord {
    double eps;
    double phase_minus;
    double action_plus_numeric;
    double phase_plus_numeric;
    double action_plus_theory;
    double phase_plus_theory;
    double action_plus_classic;
};

struct ErrorRow {
    double eps;
    double action_error;          ///< E_I
    double phase_error;           ///< E_phi
    double action_error_classic;  ///< E_I for the classical jump formula
};

struct ConvergenceTable {
    std::vector<ErrorRow> rows;
    std::vector<CellRecord> cells;  ///< eps-major, phase-minor
    std::optional<LineFit> action_fit;
    std::optional<LineFit> phase_fit;
    std::optional<LineFit> classic_fit;
    bool degenerate = false;  ///< some error column had zeros; affected fits skipped
};

/// A cell failed; carries the cells that did complete so they can be dumped.
class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& what, std::vector<CellRecord> completed)
        : std::runtime_error(what), completed_(std::move(completed))
    {
    }
    const std::vector<CellRecord>& completed() const { return completed_; }

private:
    std::vector<CellRecord> completed_;
};

/** One reference integration and one prediction per (eps, phi-) cell, maxima
    per eps, slope fits per error column. Cells run on a worker pool; the result
    does not depend on the thread count. */
ConvergenceTable run_sweep(const HarmonicModel& model, const SweepConfig& cfg);

/// Single cell, exposed for tests and for partial dumps.
CellRecord run_cell(const HarmonicModel& model, const ResonanceGeometry& geometry,
                    const SweepConfig& cfg, double eps, double phase_minus);

/// Max-over-phase residuals of the mid-resonance estimates and of the exact-value relations.
struct ResidualRow {
    double eps;
    double action_star_error;  ///< max |I*num - I* estimate|
    double phase_star_error;   ///< max |phi*num - phi* estimate|
    double action_residual;    ///< max |r_I|
    double phase_residual;     ///< max |r_phi|
};

/** For each eps, integrates every phase of the grid to tau* and tau+ and
    compares with the minus-side mid-resonance estimates and the endpoint
    relations evaluated on the numeric trajectory. */
std::vector<ResidualRow> run_residual_ladder(const HarmonicModel& model, const SweepConfig& cfg);

/// Ratios E(eps_i) / E(eps_{i+1}) of consecutive entries.
std::vector<double> successive_ratios(const std::vector<double>& errors);

void write_cells_csv(std::ostream& out, const std::vector<CellRecord>& cells);
void write_errors_csv(std::ostream& out, const std::vector<ErrorRow>& rows);
void write_fit_text(std::ostream& out, const ConvergenceTable& table);

/// log-log plot: points (ln eps, ln E) plus the fitted line.
void write_loglog_svg(std::ostream& out, const std::vector<double>& eps,
                      const std::vector<double>& errors, const std::optional<LineFit>& fit,
                      const std::string& title);

/// Writes cells.csv, errors.csv, fit.txt, errors.dat and one SVG per error column.
void write_sweep_outputs(const std::filesystem::path& dir, const ConvergenceTable& table);

}  // namespace resonance
