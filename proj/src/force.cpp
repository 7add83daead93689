#include "qfluid/force.hpp"

#include <algorithm>
#include <cmath>

#include "qfluid/kernels.hpp"

namespace qfluid {
namespace {

void check_size(std::size_t got, const SpatialGrid& grid) {
    if (got != grid.size()) throw InvalidArgument("field size does not match the grid");
}

// exp(ln_rho - max ln_rho), so the weights are independent of the overall scale.
std::vector<double> relative_density(std::span<const double> ln_rho) {
    const double top = *std::max_element(ln_rho.begin(), ln_rho.end());
    std::vector<double> w(ln_rho.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::exp(ln_rho[j] - top);
    return w;
}

}  // namespace

Moments moments(std::span<const double> ln_rho, const SpatialGrid& grid) {
    check_size(ln_rho.size(), grid);
    const auto& k = kernels::active();
    const auto w = relative_density(ln_rho);
    const auto x = grid.positions();
    const auto sums = k.weighted_sums(w.data(), x.data(), w.size());
    if (!(sums.w > 0.0) || !std::isfinite(sums.w) || !std::isfinite(sums.wx)) {
        throw DegenerateDensity("density has no finite positive weight");
    }
    Moments m;
    m.mean = sums.wx / sums.w;
    m.var = k.weighted_spread(w.data(), x.data(), w.size(), m.mean) / sums.w;
    const double min_var = 0.01 * grid.dx() * grid.dx();
    if (!(m.var >= min_var)) {
        throw DegenerateDensity("density variance " + std::to_string(m.var) +
                                " is below (dx/10)^2");
    }
    return m;
}

Moments moments(const FluidState& state, const SpatialGrid& grid) {
    return moments(std::span<const double>(state.ln_rho), grid);
}

std::vector<double> ForceField::total() const {
    std::vector<double> f(external.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = total(j);
    return f;
}

bool ForceField::all_finite() const noexcept {
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return finite(external) && finite(quantum) && finite(pressure);
}

std::vector<double> gaussian_fit_force(const FluidState& state, const SpatialGrid& grid,
                                       const PhysicalParams& params) {
    const Moments m = moments(state, grid);
    const double c = params.D * params.D / (m.var * m.var);
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = c * (grid.position(j) - m.mean);
    return f;
}

std::vector<double> fd_log_gradient(const FluidState& state, const SpatialGrid& grid) {
    check_size(state.size(), grid);
    std::vector<double> H(grid.size(), 0.0);
    kernels::active().central_difference(state.ln_rho.data(), H.data(), H.size(),
                                         1.0 / (2.0 * grid.dx()));
    return H;
}

std::vector<double> fd_quantum_potential(std::span<const double> H, const SpatialGrid& grid,
                                         const PhysicalParams& params) {
    check_size(H.size(), grid);
    std::vector<double> Q(grid.size(), 0.0);
    kernels::active().quantum_potential(H.data(), Q.data(), Q.size(), params.D * params.D,
                                        1.0 / (2.0 * grid.dx()));
    return Q;
}

std::vector<double> fd_quantum_force(const FluidState& state, const SpatialGrid& grid,
                                     const PhysicalParams& params) {
    const auto H = fd_log_gradient(state, grid);
    const auto Q = fd_quantum_potential(H, grid, params);
    const std::size_t n = grid.size();
    std::vector<double> F(n, 0.0);
    // F_j = (Q_{j-1} - Q_{j+1}) / 2dx, i.e. the central difference of Q times -1.
    kernels::active().central_difference(Q.data(), F.data(), n, -1.0 / (2.0 * grid.dx()));
    for (std::size_t j = 0; j < 3; ++j) {
        F[j] = 0.0;
        F[n - 1 - j] = 0.0;
    }
    return F;
}

std::vector<double> pressure_force(const FluidState& state, const SpatialGrid& grid,
                                   const PhysicalParams& params) {
    check_size(state.size(), grid);
    std::vector<double> f(grid.size(), 0.0);
    if (params.kp == 0.0) return f;
    kernels::active().central_difference(state.ln_rho.data(), f.data(), f.size(),
                                         -params.kp / (2.0 * grid.dx()));
    return f;
}

std::vector<double> external_force(const SpatialGrid& grid, const PhysicalParams& params) {
    const double w2 = params.omega * params.omega;
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = -w2 * grid.position(j);
    return f;
}

std::vector<double> oracle_quantum_force(const SpatialGrid& grid, const PhysicalParams& params,
                                         double t) {
    const double w2 = params.omega * params.omega;
    const double centre = params.a * std::cos(params.omega * t);
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = w2 * (grid.position(j) - centre);
    return f;
}

ForceField compute_forces(const FluidState& state, const SpatialGrid& grid,
                          const PhysicalParams& params, const ForceOptions& options) {
    check_size(state.size(), grid);
    ForceField ff;
    ff.external = external_force(grid, params);
    ff.pressure = pressure_force(state, grid, params);

    switch (options.estimator) {
        case Estimator::gaussian_fit:
            ff.quantum = gaussian_fit_force(state, grid, params);
            break;
        case Estimator::finite_difference: {
            ff.quantum = fd_quantum_force(state, grid, params);
            if (options.fd_trust > 0.0) {
                const auto rel = relative_density(state.ln_rho);
                const auto fit = gaussian_fit_force(state, grid, params);
                for (std::size_t j = 0; j < rel.size(); ++j) {
                    if (rel[j] < options.fd_trust) ff.quantum[j] = fit[j];
                }
            }
            break;
        }
        case Estimator::oracle_exact:
            ff.quantum = oracle_quantum_force(grid, params, state.t);
            break;
        case Estimator::none:
            ff.quantum.assign(grid.size(), 0.0);
            break;
    }

    if (options.coupling_floor > 0.0) {
        auto w = relative_density(state.ln_rho);
        for (double& r : w) r = r / (r + options.coupling_floor);
        const auto& k = kernels::active();
        k.multiply(ff.external.data(), w.data(), ff.external.data(), w.size());
        k.multiply(ff.quantum.data(), w.data(), ff.quantum.data(), w.size());
        k.multiply(ff.pressure.data(), w.data(), ff.pressure.data(), w.size());
    }
    return ff;
}

}  // namespace qfluid
