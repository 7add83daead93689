#include "qfluid/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfluid {
namespace {

// Linear interpolation of a grid field at x, clamped to the grid.
double interpolate(std::span<const double> f, const SpatialGrid& grid, double x) {
    const double s = (x - grid.x0()) / grid.dx();
    const double last = static_cast<double>(grid.size() - 1);
    if (!(s > 0.0)) return f.front();
    if (s >= last) return f.back();
    const auto j = static_cast<std::size_t>(s);
    const double u = s - static_cast<double>(j);
    return (1.0 - u) * f[j] + u * f[j + 1];
}

double max_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

std::string_view to_string(StepStatus s) noexcept {
    switch (s) {
        case StepStatus::ok: return "ok";
        case StepStatus::cfl_warning: return "cfl_warning";
        case StepStatus::diverged_nonfinite: return "diverged_nonfinite";
        case StepStatus::diverged_dispersion: return "diverged_dispersion";
        case StepStatus::diverged_mass: return "diverged_mass";
    }
    return "?";
}

StepRecord measure(const FluidState& state, const SpatialGrid& grid, const PhysicalParams& params,
                   std::size_t step) {
    const Moments m = moments(state, grid);
    StepRecord r;
    r.step = step;
    r.t = state.t;
    r.mean = m.mean;
    r.var = m.var;
    r.mass = mass(state, grid);
    for (double v : state.V) r.max_abs_V = std::max(r.max_abs_V, std::abs(v));
    r.center_energy = center_energy_estimate(state, grid, params);
    r.smoothness = smoothness(state, grid);
    return r;
}

Snapshot take_snapshot(const FluidState& state, std::size_t step) {
    return Snapshot{step, state.t, state.density(), state.V};
}

void summarize(RunRecord& record) {
    auto& s = record.summary;
    s.steps_survived = record.steps.empty() ? 0 : record.steps.size() - 1;
    s.max_center_error = max_of(center_error(record, record.params));
    s.max_var_error = max_of(dispersion_error(record, record.params));
    s.smoothness_series.clear();
    for (const auto& r : record.steps) s.smoothness_series.push_back(r.smoothness);
}

std::vector<double> center_error(const RunRecord& record, const PhysicalParams& params) {
    std::vector<double> e;
    e.reserve(record.steps.size());
    for (const auto& r : record.steps) {
        const double offset = std::abs(r.mean - params.a * std::cos(params.omega * r.t));
        e.push_back(params.a > 0.0 ? offset / params.a : offset);
    }
    return e;
}

std::vector<double> dispersion_error(const RunRecord& record, const PhysicalParams& params) {
    const double var0 = params.equilibrium_sigma2();
    std::vector<double> e;
    e.reserve(record.steps.size());
    for (const auto& r : record.steps) e.push_back(std::abs(r.var / var0 - 1.0));
    return e;
}

double center_energy_estimate(const FluidState& state, const SpatialGrid& grid,
                              const PhysicalParams& params) {
    const Moments m = moments(state, grid);
    const auto Q = fd_quantum_potential(fd_log_gradient(state, grid), grid, params);
    const double v = interpolate(state.V, grid, m.mean);
    const double q = interpolate(Q, grid, m.mean);
    return 0.5 * v * v + 0.5 * params.omega * params.omega * m.mean * m.mean + q;
}

double smoothness(const FluidState& state, const SpatialGrid& grid) {
    const Moments m = moments(state, grid);
    const double reach = 3.0 * std::sqrt(m.var);
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    const auto& l = state.ln_rho;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 1; j + 1 < l.size(); ++j) {
        if (std::abs(grid.position(j) - m.mean) > reach) continue;
        const double c = (l[j + 1] - 2.0 * l[j] + l[j - 1]) * inv_dx2;
        sum += c * c;
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double l2_density_distance(std::span<const double> rho_a, std::span<const double> rho_b,
                           double dx, bool normalize_mass) {
    if (rho_a.size() != rho_b.size()) throw InvalidArgument("density sizes differ");
    double ma = 1.0;
    double mb = 1.0;
    if (normalize_mass) {
        ma = std::accumulate(rho_a.begin(), rho_a.end(), 0.0) * dx;
        mb = std::accumulate(rho_b.begin(), rho_b.end(), 0.0) * dx;
        if (!(ma > 0.0) || !(mb > 0.0)) throw InvalidArgument("density has no mass");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < rho_a.size(); ++j) {
        const double a = rho_a[j] / ma;
        const double d = a - rho_b[j] / mb;
        num += d * d;
        den += a * a;
    }
    if (!(den > 0.0)) throw InvalidArgument("reference density is zero");
    return std::sqrt(num / den);
}

std::vector<double> l2_density_distance(const RunRecord& record_a, const RunRecord& record_b,
                                        double dx, bool normalize_mass) {
    std::vector<double> out;
    for (const auto& sa : record_a.snapshots) {
        const auto it = std::find_if(record_b.snapshots.begin(), record_b.snapshots.end(),
                                     [&](const Snapshot& sb) { return sb.step == sa.step; });
        if (it == record_b.snapshots.end()) continue;
        out.push_back(l2_density_distance(sa.rho, it->rho, dx, normalize_mass));
    }
    return out;
}

}  // namespace qfluid
