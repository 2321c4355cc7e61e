#pragma once

#include "resonance/config.hpp"

#include <random>

namespace support {

inline nlohmann::json random_term(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    static const char* profiles[] = {"constant", "exp_shift", "inv_sqrt_exp"};
    std::uniform_int_distribution<int> pick(0, 2);
    return {{"poly", {coef(rng), coef(rng), 0.3 * coef(rng)}}, {"profile", profiles[pick(rng)]}};
}

// One or two harmonics (k in 1..3), polynomial coefficients, omega = slope (tau - 1).
inline nlohmann::json random_model_definition(std::mt19937_64& rng, bool with_mean = false)
{
    std::uniform_real_distribution<double> slope(0.5, 2.0);
    std::uniform_int_distribution<int> count(1, 2);
    std::uniform_int_distribution<int> wave(1, 3);
    nlohmann::json harmonics = nlohmann::json::array();
    const int n = count(rng);
    int k = wave(rng);
    for (int i = 0; i < n; ++i) {
        harmonics.push_back({{"k", k}, {"cos", {random_term(rng)}}, {"sin", {random_term(rng)}}});
        k = k % 3 + 1;
    }
    nlohmann::json definition = {{"type", "polynomial-harmonics"},
                           {"frequency", {{"kind", "linear"}, {"slope", slope(rng)}, {"root", 1.0}}},
                           {"harmonics", harmonics},
                           {"action_domain", {0.0, 4.0}}};
    if (with_mean) definition["mean"] = {random_term(rng)};
    return definition;
}

inline resonance::HarmonicModel random_model(std::mt19937_64& rng, bool with_mean = false)
{
    return resonance::build_model(random_model_definition(rng, with_mean));
}

}  // namespace support
