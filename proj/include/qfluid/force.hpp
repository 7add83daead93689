#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "qfluid/core.hpp"

namespace qfluid {

/// Raised when the density is concentrated on a single cell (var < (dx/10)^2).
class DegenerateDensity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Density-weighted mean and variance of position, in physical units.
struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

Moments moments(std::span<const double> ln_rho, const SpatialGrid& grid);
Moments moments(const FluidState& state, const SpatialGrid& grid);

/// Per-point force split into its three sources. total(j) = external + quantum + pressure.
struct ForceField {
    std::vector<double> external;
    std::vector<double> quantum;
    std::vector<double> pressure;

    [[nodiscard]] std::size_t size() const noexcept { return external.size(); }
    [[nodiscard]] double total(std::size_t j) const noexcept {
        return external[j] + quantum[j] + pressure[j];
    }
    [[nodiscard]] std::vector<double> total() const;
    [[nodiscard]] bool all_finite() const noexcept;
};

/// Quantum force of the Gaussian with the measured moments: D^2 (x - mean) / var^2.
std::vector<double> gaussian_fit_force(const FluidState& state, const SpatialGrid& grid,
                                       const PhysicalParams& params);

/// H = d ln(rho)/dx by central differences; zero at both end points.
std::vector<double> fd_log_gradient(const FluidState& state, const SpatialGrid& grid);

/// Q = -D^2 (dH/dx + H^2 / 2) by central differences; zero at both end points.
std::vector<double> fd_quantum_potential(std::span<const double> H, const SpatialGrid& grid,
                                         const PhysicalParams& params);

/// F_Q = -dQ/dx through the H -> Q -> F stencil chain; zero on the three
/// outermost points at each end.
std::vector<double> fd_quantum_force(const FluidState& state, const SpatialGrid& grid,
                                     const PhysicalParams& params);

/// -kp d ln(rho)/dx; zero at both end points.
std::vector<double> pressure_force(const FluidState& state, const SpatialGrid& grid,
                                   const PhysicalParams& params);

/// Harmonic restoring force -omega^2 x.
std::vector<double> external_force(const SpatialGrid& grid, const PhysicalParams& params);

/// Closed-form quantum force of the coherent packet at time t.
std::vector<double> oracle_quantum_force(const SpatialGrid& grid, const PhysicalParams& params,
                                         double t);

struct ForceOptions {
    Estimator estimator = Estimator::gaussian_fit;
    // Finite-difference force where rho >= fd_trust * max rho, Gaussian fit elsewhere.
    double fd_trust = 1e-2;
    // Every component is scaled by r / (r + coupling_floor), r = rho / max rho.
    double coupling_floor = 1e-11;

    static ForceOptions from(const RunConfig& config) noexcept {
        return {config.estimator, config.fd_trust, config.coupling_floor};
    }
};

/// Full force decomposition applied by the feedback loop at time state.t.
ForceField compute_forces(const FluidState& state, const SpatialGrid& grid,
                          const PhysicalParams& params, const ForceOptions& options);

}  // namespace qfluid
