#include "qfluid/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfluid {

SpatialGrid::SpatialGrid(double x0, double dx, std::size_t n) : x0_(x0), dx_(dx), n_(n) {
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw InvalidArgument("grid spacing must be positive, got " + std::to_string(dx));
    }
    if (n < min_points) {
        throw InvalidArgument("grid needs at least 7 points for the force stencil, got " +
                              std::to_string(n));
    }
    if (!std::isfinite(x0)) throw InvalidArgument("grid origin must be finite");
    x_.resize(n);
    for (std::size_t j = 0; j < n; ++j) x_[j] = position(j);
}

SpatialGrid make_grid(double x0, double dx, std::size_t n) { return SpatialGrid(x0, dx, n); }

SpatialGrid make_centered_grid(double dx, std::size_t n) {
    return SpatialGrid(-0.5 * static_cast<double>(n - 1) * dx, dx, n);
}

void PhysicalParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!positive(D)) throw InvalidArgument("D must be positive");
    if (!positive(omega)) throw InvalidArgument("omega must be positive");
    if (!positive(M)) throw InvalidArgument("M must be positive");
    if (!non_negative(a)) throw InvalidArgument("a must be non-negative");
    if (!non_negative(kp)) throw InvalidArgument("kp must be non-negative");
}

bool FluidState::all_finite() const noexcept {
    auto finite = [](double v) { return std::isfinite(v); };
    return std::isfinite(t) && std::all_of(ln_rho.begin(), ln_rho.end(), finite) &&
           std::all_of(V.begin(), V.end(), finite);
}

std::vector<double> FluidState::density() const {
    std::vector<double> rho(ln_rho.size());
    std::transform(ln_rho.begin(), ln_rho.end(), rho.begin(), [](double l) { return std::exp(l); });
    return rho;
}

double FluidState::max_ln_rho() const noexcept {
    return ln_rho.empty() ? 0.0 : *std::max_element(ln_rho.begin(), ln_rho.end());
}

std::string_view to_string(Estimator e) noexcept {
    switch (e) {
        case Estimator::gaussian_fit: return "gauss";
        case Estimator::finite_difference: return "fd";
        case Estimator::oracle_exact: return "oracle";
        case Estimator::none: return "none";
    }
    return "?";
}

std::string_view to_string(NoiseMode m) noexcept {
    switch (m) {
        case NoiseMode::none: return "none";
        case NoiseMode::initial: return "initial";
        case NoiseMode::per_step: return "per-step";
    }
    return "?";
}

std::string_view to_string(TimeSplit s) noexcept {
    switch (s) {
        case TimeSplit::kick_drift_kick: return "kdk";
        case TimeSplit::forward: return "forward";
    }
    return "?";
}

Estimator parse_estimator(std::string_view s) {
    if (s == "gauss" || s == "gaussian_fit") return Estimator::gaussian_fit;
    if (s == "fd" || s == "finite_difference") return Estimator::finite_difference;
    if (s == "oracle" || s == "oracle_exact") return Estimator::oracle_exact;
    if (s == "none") return Estimator::none;
    throw InvalidArgument("unknown estimator '" + std::string(s) + "'");
}

NoiseMode parse_noise_mode(std::string_view s) {
    if (s == "none") return NoiseMode::none;
    if (s == "initial") return NoiseMode::initial;
    if (s == "per-step" || s == "per_step") return NoiseMode::per_step;
    throw InvalidArgument("unknown noise mode '" + std::string(s) + "'");
}

TimeSplit parse_time_split(std::string_view s) {
    if (s == "kdk" || s == "kick_drift_kick") return TimeSplit::kick_drift_kick;
    if (s == "forward") return TimeSplit::forward;
    throw InvalidArgument("unknown time split '" + std::string(s) + "'");
}

void RunConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
    if (steps < 1) throw InvalidArgument("steps must be at least 1");
    if (!(rho_floor > 0.0) || rho_floor >= 1.0) {
        throw InvalidArgument("rho_floor must lie in (0, 1)");
    }
    if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude)) {
        throw InvalidArgument("noise amplitude must be non-negative");
    }
    if (!(coupling_floor >= 0.0) || !(fd_trust >= 0.0) || fd_trust > 1.0) {
        throw InvalidArgument("coupling_floor and fd_trust must be non-negative, fd_trust <= 1");
    }
}

FluidState init_coherent_state(const PhysicalParams& params, const SpatialGrid& grid, double t0) {
    params.validate();
    const double w = params.omega;
    const double centre = params.a * std::cos(w * t0);
    const double ln_peak =
        std::log(params.M * std::sqrt(w / (2.0 * std::numbers::pi * params.D)));
    const double curvature = w / (2.0 * params.D);

    FluidState s;
    s.t = t0;
    s.ln_rho.resize(grid.size());
    s.V.assign(grid.size(), -params.a * w * std::sin(w * t0));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double d = grid.position(j) - centre;
        s.ln_rho[j] = ln_peak - curvature * d * d;
    }
    return s;
}

double mass(const FluidState& state, const SpatialGrid& grid) {
    double sum = 0.0;
    for (double l : state.ln_rho) sum += std::exp(l);
    return sum * grid.dx();
}

void apply_density_floor(FluidState& state, double ln_floor) noexcept {
    for (double& l : state.ln_rho) l = std::max(l, ln_floor);
}

bool packet_fits(const PhysicalParams& params, const SpatialGrid& grid) noexcept {
    const double reach = params.a + 5.0 * std::sqrt(params.equilibrium_sigma2());
    return -reach >= grid.position(0) && reach <= grid.position(grid.size() - 1);
}

Scenario default_scenario() { return refined_scenario(1); }

Scenario refined_scenario(std::size_t factor) {
    if (factor == 0) throw InvalidArgument("refinement factor must be positive");
    const double f = static_cast<double>(factor);
    PhysicalParams p;
    p.omega = 1.0;
    p.D = 16.0 * p.omega;  // sigma = 4 length units = 4 coarse cells
    p.a = 8.0;
    p.kp = 0.0;
    p.M = 1.0;
    RunConfig c;
    c.dt = p.period() / (64.0 * f);
    c.steps = 64 * factor;
    return Scenario{p, make_centered_grid(1.0 / f, 160 * factor), c};
}

}  // namespace qfluid
