#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>

#include "qfluid/core.hpp"
#include "qfluid/diagnostics.hpp"
#include "qfluid/force.hpp"

namespace qfluid {

struct StepOutcome {
    StepStatus status = StepStatus::ok;
    FluidState state;
};

/// One Lax-Friedrichs step of (ln rho, V) under the per-point total force.
/// End points copy their interior neighbour. Reports diverged_nonfinite on any
/// non-finite output and cfl_warning when max|V| dt / dx > 1.
StepOutcome lax_step(const FluidState& state, std::span<const double> force,
                     const SpatialGrid& grid, double dt);
StepOutcome lax_step(const FluidState& state, const ForceField& forces, const SpatialGrid& grid,
                     double dt);

/// V += h * force.
void kick(FluidState& state, std::span<const double> force, double h);

/// Uniform draw on [0, 1) from the top 53 bits of a 64-bit engine, or by
/// scaling for narrower engines.
template <class Engine>
double unit_uniform(Engine& rng) {
    using R = typename Engine::result_type;
    const R raw = rng() - Engine::min();
    if constexpr (Engine::min() == 0 && Engine::max() == std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<double>(static_cast<std::uint64_t>(raw) >> 11) * 0x1.0p-53;
    } else {
        return static_cast<double>(raw) /
               (static_cast<double>(Engine::max() - Engine::min()) + 1.0);
    }
}

/// Multiplies rho(x_j) by exp(alpha_j), alpha_j ~ U[0, amplitude), independently per point.
template <class Engine>
void perturb_density(FluidState& state, Engine& rng, double amplitude = 1.0) {
    for (double& l : state.ln_rho) l += amplitude * unit_uniform(rng);
}

/// Thresholds of the divergence guard.
struct DivergenceLimits {
    double var_growth = 10.0;      // var > var_growth * initial var
    double mass_step_ratio = 10.0;  // per-step mass ratio outside [1/r, r]
};

/// Feedback loop: measure the density, compute the force, apply it, repeat.
///
/// Stops at the first diverged step; that state is never advanced further and
/// is not part of the recorded series.
RunRecord run(const RunConfig& config, const PhysicalParams& params, const SpatialGrid& grid,
              std::optional<FluidState> initial = std::nullopt, DivergenceLimits limits = {});

}  // namespace qfluid
