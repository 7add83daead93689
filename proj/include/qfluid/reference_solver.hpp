#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qfluid/core.hpp"
#include "qfluid/diagnostics.hpp"

namespace qfluid {

/// Tridiagonal solve hit a zero pivot.
class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WaveState {
    double t = 0.0;
    std::vector<std::complex<double>> psi;

    /// sum |psi_j|^2 dx
    [[nodiscard]] double norm(const SpatialGrid& grid) const;
};

/// Samples the closed-form coherent packet at time t0.
WaveState init_coherent_wave(const PhysicalParams& params, const SpatialGrid& grid,
                             double t0 = 0.0);

/// Crank-Nicolson step of  psi_t = i D psi_xx - i (phi + w) / (2D) psi  with
/// phi = omega^2 x^2 / 2, w = kp ln|psi|^2 and psi = 0 at both grid ends.
/// For kp > 0 the potential is the average of its values at the old state and
/// at a linear predictor.
WaveState cn_step(const WaveState& wave, const SpatialGrid& grid, const PhysicalParams& params,
                  double dt);

/// rho = M |psi|^2 (clamped at rel_floor * max rho), V = 2D d(arg psi)/dx by
/// central phase differences; V = 0 where the amplitude is below that floor.
FluidState wave_to_fluid(const WaveState& wave, const SpatialGrid& grid,
                         const PhysicalParams& params, double rel_floor = 1e-12);

/// psi = sqrt(rho / M) exp(i theta), theta = (1 / 2D) * trapezoid integral of V from
/// the left end, where theta = 0.
WaveState fluid_to_wave(const FluidState& state, const SpatialGrid& grid,
                        const PhysicalParams& params);

/// Integrates the wave equation for `steps` steps and records the same
/// diagnostics as the feedback loop, measured on wave_to_fluid of each state.
RunRecord run_reference(const WaveState& initial, const SpatialGrid& grid,
                        const PhysicalParams& params, double dt, std::size_t steps,
                        std::size_t snapshot_every = 0);

}  // namespace qfluid
