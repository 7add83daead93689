#include "qfluid/presets.hpp"

#include <algorithm>

namespace qfluid {
namespace {

Preset make(std::string name, std::string summary, Estimator est, NoiseMode noise, double kp,
            std::size_t steps) {
    Scenario s = default_scenario();
    s.config.estimator = est;
    s.config.noise = noise;
    s.config.steps = steps;
    s.config.seed = 1;
    s.params.kp = kp;
    return Preset{std::move(name), std::move(summary), std::move(s)};
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = {
        make("fig1", "Gaussian-fit feedback, no noise, 1.2 periods", Estimator::gaussian_fit,
             NoiseMode::none, 0.0, 77),
        make("fig2", "Gaussian-fit feedback, exp(U[0,1]) noise on the initial density, one period",
             Estimator::gaussian_fit, NoiseMode::initial, 0.0, 64),
        make("fig3", "Gaussian-fit feedback, exp(U[0,1]) noise at every step",
             Estimator::gaussian_fit, NoiseMode::per_step, 0.0, 25),
        make("fig4", "Gaussian-fit feedback with pressure kp = 5, half period",
             Estimator::gaussian_fit, NoiseMode::none, 5.0, 32),
        make("fig5", "Gaussian-fit feedback with pressure kp = 1, one period",
             Estimator::gaussian_fit, NoiseMode::none, 1.0, 64),
        make("fig6", "finite-difference feedback, no noise, quarter period",
             Estimator::finite_difference, NoiseMode::none, 0.0, 16),
        make("fig7", "finite-difference feedback with pressure kp = 1",
             Estimator::finite_difference, NoiseMode::none, 1.0, 20),
    };
    return all;
}

const Preset& find_preset(std::string_view name) {
    const auto& all = presets();
    const auto it =
        std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
    if (it == all.end()) throw InvalidArgument("unknown preset '" + std::string(name) + "'");
    return *it;
}

}  // namespace qfluid
