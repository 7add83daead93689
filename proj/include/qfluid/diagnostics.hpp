#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qfluid/core.hpp"
#include "qfluid/force.hpp"

namespace qfluid {

enum class StepStatus { ok, cfl_warning, diverged_nonfinite, diverged_dispersion, diverged_mass };

std::string_view to_string(StepStatus s) noexcept;
[[nodiscard]] constexpr bool is_diverged(StepStatus s) noexcept {
    return s == StepStatus::diverged_nonfinite || s == StepStatus::diverged_dispersion ||
           s == StepStatus::diverged_mass;
}

struct StepRecord {
    std::size_t step = 0;
    double t = 0.0;
    double mean = 0.0;
    double var = 0.0;
    double mass = 0.0;
    double max_abs_V = 0.0;
    double center_energy = 0.0;
    double smoothness = 0.0;
    StepStatus status = StepStatus::ok;
};

struct Snapshot {
    std::size_t step = 0;
    double t = 0.0;
    std::vector<double> rho;
    std::vector<double> V;
};

struct RunSummary {
    std::size_t steps_survived = 0;
    StepStatus final_status = StepStatus::ok;
    double max_center_error = 0.0;
    double max_var_error = 0.0;
    std::vector<double> smoothness_series;
};

/// Time series of one run. steps[0] is the initial state, so
/// steps.size() == summary.steps_survived + 1.
struct RunRecord {
    PhysicalParams params;
    std::vector<StepRecord> steps;
    std::vector<Snapshot> snapshots;
    RunSummary summary;

    [[nodiscard]] bool diverged() const noexcept { return is_diverged(summary.final_status); }
};

/// Measures one state. Throws DegenerateDensity if the moments are undefined.
StepRecord measure(const FluidState& state, const SpatialGrid& grid, const PhysicalParams& params,
                   std::size_t step);

Snapshot take_snapshot(const FluidState& state, std::size_t step);

/// Fills record.summary from the step series. final_status is left untouched.
void summarize(RunRecord& record);

/// |mean - a cos(omega t)| / a per step; the absolute offset when a == 0.
std::vector<double> center_error(const RunRecord& record, const PhysicalParams& params);

/// |var / (D/omega) - 1| per step.
std::vector<double> dispersion_error(const RunRecord& record, const PhysicalParams& params);

/// V(mean)^2/2 + omega^2 mean^2 / 2 + Q(mean), with V and the finite-difference Q
/// linearly interpolated at the density mean.
double center_energy_estimate(const FluidState& state, const SpatialGrid& grid,
                              const PhysicalParams& params);

/// Mean squared second difference of ln(rho), (d2 ln rho / dx2)^2, over |x - mean| <= 3 sigma.
double smoothness(const FluidState& state, const SpatialGrid& grid);

/// sqrt(sum (rho_a - rho_b)^2 dx) / sqrt(sum rho_a^2 dx). With `normalize_mass`
/// each density is first divided by its own mass, so only shape differences count.
double l2_density_distance(std::span<const double> rho_a, std::span<const double> rho_b,
                           double dx, bool normalize_mass = true);

/// Distance per matching snapshot step, in the order of record_a's snapshots.
std::vector<double> l2_density_distance(const RunRecord& record_a, const RunRecord& record_b,
                                        double dx, bool normalize_mass = true);

}  // namespace qfluid
