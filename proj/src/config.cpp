#include "resonance/config.hpp"

#include "resonance/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace resonance {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

double get_number(const json& obj, const std::string& key, const std::string& where)
{
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    return v.get<double>();
}

Interval get_interval(const json& v, const std::string& what)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(what + " must be a two-element numeric array");
    Interval iv{v[0].get<double>(), v[1].get<double>()};
    if (!(iv.lo < iv.hi)) throw ConfigError(what + " must satisfy lo < hi");
    return iv;
}

// value and derivatives of a polynomial with ascending coefficients
double poly_derivative(const std::vector<double>& c, int order, double x)
{
    double sum = 0;
    double power = 1;
    for (std::size_t i = static_cast<std::size_t>(order); i < c.size(); ++i) {
        double falling = 1;
        for (int j = 0; j < order; ++j) falling *= static_cast<double>(i - static_cast<std::size_t>(j));
        sum += c[i] * falling * power;
        power *= x;
    }
    return sum;
}

struct PolyTerm {
    std::vector<double> poly;
    std::function<double(double)> profile;
};

PolyTerm parse_term(const json& t, const std::string& where)
{
    reject_unknown_keys(t, {"poly", "profile", "shift"}, where);
    PolyTerm term;
    if (!t.contains("poly") || !t["poly"].is_array()) throw ConfigError(where + ".poly must be an array");
    for (const json& c : t["poly"]) {
        if (!c.is_number()) throw ConfigError(where + ".poly entries must be numbers");
        term.poly.push_back(c.get<double>());
    }
    const std::string profile = t.value("profile", std::string("constant"));
    const double shift = t.contains("shift") ? get_number(t, "shift", where) : 1.0;
    if (profile == "constant")
        term.profile = [](double) { return 1.0; };
    else if (profile == "exp_shift")
        term.profile = [shift](double tau) { return std::exp(tau - shift); };
    else if (profile == "inv_sqrt_exp")
        term.profile = [shift](double tau) { return 1 / std::sqrt(std::exp(tau - shift) + 1); };
    else
        throw ConfigError("unknown tau-profile '" + profile + "' in " + where);
    return term;
}

Coefficient parse_coefficient(const json& terms, const std::string& where)
{
    if (!terms.is_array()) throw ConfigError(where + " must be an array of terms");
    if (terms.empty()) return {};
    std::vector<PolyTerm> parsed;
    for (std::size_t i = 0; i < terms.size(); ++i)
        parsed.push_back(parse_term(terms[i], where + "[" + std::to_string(i) + "]"));
    const auto derivative = [parsed](int order) {
        return [parsed, order](double action, double tau) {
            double s = 0;
            for (const PolyTerm& t : parsed) s += poly_derivative(t.poly, order, action) * t.profile(tau);
            return s;
        };
    };
    Coefficient c;
    c.value = derivative(0);
    for (int order = 1; order <= 3; ++order) c.dI[order - 1] = derivative(order);
    return c;
}

FrequencyProfile parse_frequency(const json& f)
{
    const std::string where = "model.frequency";
    if (!f.is_object() || !f.contains("kind")) throw ConfigError(where + " needs a 'kind'");
    const std::string kind = f["kind"].get<std::string>();
    if (kind == "exp_shift") {
        reject_unknown_keys(f, {"kind", "shift"}, where);
        const double s = f.contains("shift") ? get_number(f, "shift", where) : 1.0;
        return {[s](double tau) { return std::exp(tau - s) - 1; }, [s](double tau) { return std::exp(tau - s); },
                [s](double tau) { return std::exp(tau - s) - tau; }};
    }
    if (kind == "linear") {
        reject_unknown_keys(f, {"kind", "slope", "root"}, where);
        const double slope = f.contains("slope") ? get_number(f, "slope", where) : 1.0;
        const double root = f.contains("root") ? get_number(f, "root", where) : 1.0;
        return {[=](double tau) { return slope * (tau - root); }, [=](double) { return slope; },
                [=](double tau) { return 0.5 * slope * (tau - root) * (tau - root); }};
    }
    throw ConfigError("unknown frequency kind '" + kind + "'");
}

HarmonicModel build_polynomial_model(const json& definition)
{
    reject_unknown_keys(definition, {"type", "name", "frequency", "mean", "harmonics", "action_domain", "time_domain"},
                        "model");
    if (!definition.contains("frequency")) throw ConfigError("model.frequency is required");
    const FrequencyProfile freq = parse_frequency(definition["frequency"]);
    const Coefficient mean = definition.contains("mean") ? parse_coefficient(definition["mean"], "model.mean") : Coefficient{};
    std::vector<HarmonicCoefficient> harmonics;
    if (definition.contains("harmonics")) {
        if (!definition["harmonics"].is_array()) throw ConfigError("model.harmonics must be an array");
        for (std::size_t i = 0; i < definition["harmonics"].size(); ++i) {
            const json& h = definition["harmonics"][i];
            const std::string where = "model.harmonics[" + std::to_string(i) + "]";
            reject_unknown_keys(h, {"k", "cos", "sin"}, where);
            if (!h.contains("k") || !h["k"].is_number_integer()) throw ConfigError(where + ".k must be an integer");
            HarmonicCoefficient hc;
            hc.k = h["k"].get<int>();
            if (h.contains("cos")) hc.a = parse_coefficient(h["cos"], where + ".cos");
            if (h.contains("sin")) hc.b = parse_coefficient(h["sin"], where + ".sin");
            if (hc.a.empty() && hc.b.empty()) continue;  // all-empty harmonic contributes nothing
            harmonics.push_back(std::move(hc));
        }
    }
    const Interval actions =
        definition.contains("action_domain") ? get_interval(definition["action_domain"], "model.action_domain") : Interval{0, 10};
    const Interval times =
        definition.contains("time_domain") ? get_interval(definition["time_domain"], "model.time_domain") : Interval{-1, 3};
    return HarmonicModel(definition.value("name", std::string("polynomial-harmonics")), freq, mean, std::move(harmonics),
                         actions, times);
}

}  // namespace

HarmonicModel build_model(const json& definition)
{
    try {
        if (definition.is_string()) {
            const std::string name = definition.get<std::string>();
            if (name == "paper-example") return example_model();
            if (name == "zero") return zero_model();
            throw ConfigError("unknown builtin model '" + name + "'");
        }
        if (definition.is_object()) {
            if (definition.value("type", std::string()) != "polynomial-harmonics")
                throw ConfigError("inline model needs \"type\": \"polynomial-harmonics\"");
            return build_polynomial_model(definition);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed model definition: ") + e.what());
    }
    throw ConfigError("model must be a builtin name or a polynomial-harmonics object");
}

json to_json(const RunConfig& cfg)
{
    return json{{"model", cfg.model},
                {"window", {cfg.window.lo, cfg.window.hi}},
                {"I0", cfg.action0},
                {"eps", cfg.eps},
                {"phi0", cfg.phi0},
                {"eps_list", cfg.eps_list},
                {"phase_count", cfg.phase_count},
                {"fast", cfg.fast},
                {"step", cfg.step},
                {"steps_per_period", cfg.steps_per_period},
                {"max_steps", cfg.max_steps},
                {"threads", cfg.threads},
                {"dense_samples", cfg.dense_samples},
                {"out", cfg.out}};
}

RunConfig run_config_from_json(const json& j)
{
    reject_unknown_keys(j, {"model", "window", "I0", "eps", "phi0", "eps_list", "phase_count", "fast", "step",
                            "steps_per_period", "max_steps", "threads", "dense_samples", "out"},
                        "config");
    RunConfig cfg;
    try {
        if (j.contains("model")) cfg.model = j["model"];
        if (j.contains("window")) cfg.window = get_interval(j["window"], "window");
        if (j.contains("I0")) cfg.action0 = get_number(j, "I0", "config");
        if (j.contains("eps")) cfg.eps = get_number(j, "eps", "config");
        if (j.contains("phi0")) cfg.phi0 = get_number(j, "phi0", "config");
        if (j.contains("eps_list")) {
            if (!j["eps_list"].is_array()) throw ConfigError("eps_list must be an array");
            cfg.eps_list = j["eps_list"].get<std::vector<double>>();
        }
        if (j.contains("phase_count")) cfg.phase_count = j["phase_count"].get<int>();
        if (j.contains("fast")) cfg.fast = j["fast"].get<bool>();
        if (j.contains("step")) cfg.step = get_number(j, "step", "config");
        if (j.contains("steps_per_period")) cfg.steps_per_period = get_number(j, "steps_per_period", "config");
        if (j.contains("max_steps")) cfg.max_steps = get_number(j, "max_steps", "config");
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("dense_samples")) cfg.dense_samples = j["dense_samples"].get<int>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!(cfg.eps > 0 && cfg.eps <= 0.1)) throw ConfigError("eps must lie in (0, 0.1]");
    if (cfg.eps_list.empty()) throw ConfigError("eps_list is empty");
    if (cfg.phase_count < 2) throw ConfigError("phase_count must be at least 2");
    if (cfg.step < 0) throw ConfigError("step must be non-negative");
    if (!(cfg.steps_per_period > 0) || !(cfg.max_steps >= 1)) throw ConfigError("invalid step policy");
    if (cfg.threads < 0) throw ConfigError("threads must be non-negative");
    if (cfg.dense_samples < 0) throw ConfigError("dense_samples must be non-negative");
    build_model(cfg.model);  // validates the model definition up front
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

SweepConfig sweep_config(const RunConfig& cfg)
{
    SweepConfig s;
    s.phase_count = cfg.fast ? 8 : cfg.phase_count;
    s.eps_values = cfg.fast ? fast_eps_grid() : cfg.eps_list;
    s.action0 = cfg.action0;
    s.window = cfg.window;
    s.step_policy = {cfg.steps_per_period, cfg.max_steps};
    s.step = cfg.step;
    s.threads = cfg.threads;
    s.validate();
    return s;
}

}  // namespace resonance
