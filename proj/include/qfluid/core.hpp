#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qfluid {

/// Thrown when a value violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform 1D grid. All fields of a run live on one of these.
///
/// The quantum-force stencil reaches three cells to either side of an
/// evaluation point, so a grid must hold at least seven points.
class SpatialGrid {
public:
    static constexpr std::size_t min_points = 7;

    SpatialGrid(double x0, double dx, std::size_t n);

    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double dx() const noexcept { return dx_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double position(std::size_t j) const noexcept {
        return x0_ + static_cast<double>(j) * dx_;
    }
    [[nodiscard]] std::span<const double> positions() const noexcept { return x_; }

private:
    double x0_;
    double dx_;
    std::size_t n_;
    std::vector<double> x_;
};

/// Validating factory; rejects dx <= 0 and n < 7.
SpatialGrid make_grid(double x0, double dx, std::size_t n);

/// Grid of n points centred on the origin.
SpatialGrid make_centered_grid(double dx, std::size_t n);

/// Constants of one physical scenario.
struct PhysicalParams {
    double D = 16.0;     // generalized quantum constant (length^2 / time)
    double omega = 1.0;  // harmonic angular frequency (1 / time)
    double a = 8.0;      // oscillation amplitude of the packet centre
    double kp = 0.0;     // pressure amplitude, squared sound speed
    double M = 1.0;      // total fluid mass

    /// Variance of the coherent packet.
    [[nodiscard]] double equilibrium_sigma2() const noexcept { return D / omega; }
    [[nodiscard]] double period() const noexcept {
        return 2.0 * std::numbers::pi / omega;
    }

    void validate() const;
};

/// Evolving hydrodynamic state. Density is stored as its logarithm because
/// both update equations and both force estimators consume ln(rho).
struct FluidState {
    double t = 0.0;
    std::vector<double> ln_rho;
    std::vector<double> V;

    [[nodiscard]] std::size_t size() const noexcept { return ln_rho.size(); }
    [[nodiscard]] bool all_finite() const noexcept;
    [[nodiscard]] std::vector<double> density() const;
    [[nodiscard]] double max_ln_rho() const noexcept;
};

enum class Estimator { gaussian_fit, finite_difference, oracle_exact, none };
enum class NoiseMode { none, initial, per_step };

/// How the feedback force enters one time step.
///
/// `kick_drift_kick` splits the applied force into two half-kicks around the
/// Lax-Friedrichs transport and is second-order accurate for the packet
/// centre. `forward` applies the full force inside the explicit update.
enum class TimeSplit { kick_drift_kick, forward };

std::string_view to_string(Estimator e) noexcept;
std::string_view to_string(NoiseMode m) noexcept;
std::string_view to_string(TimeSplit s) noexcept;
Estimator parse_estimator(std::string_view s);
NoiseMode parse_noise_mode(std::string_view s);
TimeSplit parse_time_split(std::string_view s);

struct RunConfig {
    double dt = 2.0 * std::numbers::pi / 64.0;
    std::size_t steps = 64;
    Estimator estimator = Estimator::gaussian_fit;
    NoiseMode noise = NoiseMode::none;
    double noise_amplitude = 1.0;  // alpha ~ U[0, amplitude]
    std::uint64_t seed = 1;
    std::size_t snapshot_every = 0;  // 0 = off
    double rho_floor = 1e-12;        // relative to the initial peak density
    TimeSplit split = TimeSplit::kick_drift_kick;
    // Forces act on a cell in proportion to rho / (rho + coupling_floor * max rho).
    double coupling_floor = 1e-11;
    // Finite-difference force is used where rho >= fd_trust * max rho.
    double fd_trust = 1e-2;

    void validate() const;
};

/// Coherent oscillating packet sampled on the grid at time t0.
FluidState init_coherent_state(const PhysicalParams& params, const SpatialGrid& grid,
                               double t0 = 0.0);

/// Total mass, sum of exp(ln_rho) * dx.
double mass(const FluidState& state, const SpatialGrid& grid);

/// Clamp ln_rho from below at ln_floor.
void apply_density_floor(FluidState& state, double ln_floor) noexcept;

/// True when centre +- 5 sigma (over the whole oscillation) lies inside the grid.
bool packet_fits(const PhysicalParams& params, const SpatialGrid& grid) noexcept;

/// Calibrated scenario used by the presets: 64 steps per period, sigma = 4 dx,
/// a = 8 dx, 160 points.
struct Scenario {
    PhysicalParams params;
    SpatialGrid grid;
    RunConfig config;
};
Scenario default_scenario();

/// The default scenario with dx and dt divided by `factor` over the same domain.
Scenario refined_scenario(std::size_t factor);

}  // namespace qfluid
