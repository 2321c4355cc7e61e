#pragma once

#include "resonance/experiment.hpp"
#include "resonance/model.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace resonance {

/** Everything a CLI run needs, loadable from one JSON file.

    "model" is either a builtin name ("paper-example", "zero") or an inline
    "polynomial-harmonics" object:

        {"type": "polynomial-harmonics",
         "frequency": {"kind": "exp_shift", "shift": 1} | {"kind": "linear", "slope": 1, "root": 1},
         "mean": [term, ...],
         "harmonics": [{"k": 1, "cos": [term, ...], "sin": [term, ...]}, ...],
         "action_domain": [lo, hi], "time_domain": [lo, hi]}

    with term = {"poly": [c0, c1, ...], "profile": "constant" | "exp_shift" | "inv_sqrt_exp",
    "shift": s}; the term is (c0 + c1 I + ...) * profile(tau). Unknown keys are rejected. */
struct RunConfig {
    nlohmann::json model = "paper-example";
    Interval window{0.0, 2.0};
    double action0 = 1.0;
    double eps = 0.01;
    double phi0 = 0.0;
    std::vector<double> eps_list = default_eps_grid();
    int phase_count = 48;
    bool fast = false;
    double step = 0;  ///< fast-time RK4 step; 0 = default policy
    double steps_per_period = 400;
    double max_steps = 2e8;
    int threads = 1;
    int dense_samples = 0;  ///< extra equally spaced rows in simulate output
    std::string out = "out";

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Builds the model named or described by the definition; throws ConfigError.
HarmonicModel build_model(const nlohmann::json& definition);

/// Sweep settings implied by the config (honours --fast).
SweepConfig sweep_config(const RunConfig& cfg);

}  // namespace resonance
