#include "qfluid/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qfluid/kernels.hpp"

namespace qfluid {

StepOutcome lax_step(const FluidState& state, std::span<const double> force,
                     const SpatialGrid& grid, double dt) {
    const std::size_t n = grid.size();
    if (state.ln_rho.size() != n || state.V.size() != n || force.size() != n) {
        throw InvalidArgument("lax_step: field size does not match the grid");
    }
    if (!(dt > 0.0)) throw InvalidArgument("lax_step: dt must be positive");

    StepOutcome out;
    out.state.t = state.t + dt;
    out.state.ln_rho.resize(n);
    out.state.V.resize(n);
    auto& l = out.state.ln_rho;
    auto& v = out.state.V;
    kernels::active().lax_update(state.ln_rho.data(), state.V.data(), force.data(), l.data(),
                                 v.data(), n, dt, grid.dx());
    l[0] = l[1];
    l[n - 1] = l[n - 2];
    v[0] = v[1];
    v[n - 1] = v[n - 2];

    if (!out.state.all_finite()) {
        out.status = StepStatus::diverged_nonfinite;
        return out;
    }
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (vmax * dt / grid.dx() > 1.0) out.status = StepStatus::cfl_warning;
    return out;
}

StepOutcome lax_step(const FluidState& state, const ForceField& forces, const SpatialGrid& grid,
                     double dt) {
    return lax_step(state, forces.total(), grid, dt);
}

void kick(FluidState& state, std::span<const double> force, double h) {
    if (force.size() != state.V.size()) throw InvalidArgument("kick: size mismatch");
    kernels::active().axpy(h, force.data(), state.V.data(), force.size());
}

RunRecord run(const RunConfig& config, const PhysicalParams& params, const SpatialGrid& grid,
              std::optional<FluidState> initial, DivergenceLimits limits) {
    config.validate();
    params.validate();

    RunRecord record;
    record.params = params;
    FluidState state = initial ? std::move(*initial) : init_coherent_state(params, grid);
    if (state.size() != grid.size() || state.V.size() != grid.size()) {
        throw InvalidArgument("initial state does not match the grid");
    }
    const double ln_floor = state.max_ln_rho() + std::log(config.rho_floor);
    apply_density_floor(state, ln_floor);

    std::mt19937_64 rng(config.seed);
    const double amp = config.noise_amplitude;
    if (config.noise == NoiseMode::initial) perturb_density(state, rng, amp);

    auto finish = [&](StepStatus status) {
        record.summary.final_status = status;
        summarize(record);
        return record;
    };
    auto snapshot_due = [&](std::size_t step) {
        return config.snapshot_every > 0 && step % config.snapshot_every == 0;
    };

    const ForceOptions options = ForceOptions::from(config);
    std::vector<double> force;
    try {
        record.steps.push_back(measure(state, grid, params, 0));
        force = compute_forces(state, grid, params, options).total();
    } catch (const DegenerateDensity&) {
        return finish(StepStatus::diverged_dispersion);
    }
    if (snapshot_due(0)) record.snapshots.push_back(take_snapshot(state, 0));

    const double var0 = record.steps.front().var;
    double mass_prev = record.steps.front().mass;
    const std::vector<double> no_force(grid.size(), 0.0);
    const bool kdk = config.split == TimeSplit::kick_drift_kick;
    StepStatus last = StepStatus::ok;

    for (std::size_t step = 1; step <= config.steps; ++step) {
        try {
            if (config.noise == NoiseMode::per_step) {
                perturb_density(state, rng, amp);
                force = compute_forces(state, grid, params, options).total();
            }
            if (kdk) kick(state, force, 0.5 * config.dt);
            StepOutcome out = lax_step(state, kdk ? no_force : force, grid, config.dt);
            if (out.status == StepStatus::diverged_nonfinite) return finish(out.status);
            apply_density_floor(out.state, ln_floor);
            force = compute_forces(out.state, grid, params, options).total();
            if (kdk) kick(out.state, force, 0.5 * config.dt);
            if (!out.state.all_finite()) return finish(StepStatus::diverged_nonfinite);

            StepRecord r = measure(out.state, grid, params, step);
            if (!std::isfinite(r.var) || !std::isfinite(r.mass) || !std::isfinite(r.center_energy)) {
                return finish(StepStatus::diverged_nonfinite);
            }
            if (r.var > limits.var_growth * var0) return finish(StepStatus::diverged_dispersion);
            const double ratio = r.mass / mass_prev;
            if (!(ratio <= limits.mass_step_ratio && ratio >= 1.0 / limits.mass_step_ratio)) {
                return finish(StepStatus::diverged_mass);
            }
            r.status = out.status;
            if (r.status == StepStatus::cfl_warning) last = r.status;
            mass_prev = r.mass;
            state = std::move(out.state);
            record.steps.push_back(r);
            if (snapshot_due(step)) record.snapshots.push_back(take_snapshot(state, step));
        } catch (const DegenerateDensity&) {
            return finish(StepStatus::diverged_dispersion);
        }
    }
    return finish(last);
}

}  // namespace qfluid
