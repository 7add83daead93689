#include "qfluid/reference_solver.hpp"

#include <algorithm>
#include <cmath>

#include "qfluid/oracle.hpp"

namespace qfluid {
namespace {

using cplx = std::complex<double>;

// Diagonal potential (phi + w) / (2D) of the linear operator.
std::vector<double> potential(const WaveState& wave, const SpatialGrid& grid,
                              const PhysicalParams& params) {
    std::vector<double> v(grid.size());
    const double w2 = params.omega * params.omega;
    const double inv2D = 1.0 / (2.0 * params.D);
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = grid.position(j);
        double u = 0.5 * w2 * x * x;
        if (params.kp > 0.0) {
            u += params.kp * std::log(std::max(std::norm(wave.psi[j]), 1e-300));
        }
        v[j] = u * inv2D;
    }
    return v;
}

// Solves (1 + i dt/2 H) psi' = (1 - i dt/2 H) psi on the interior, H = -D d2/dx2 + v.
std::vector<cplx> cn_solve(const std::vector<cplx>& psi, const std::vector<double>& v,
                           double D, double dx, double dt) {
    const std::size_t n = psi.size();
    const cplx r(0.0, D * dt / (2.0 * dx * dx));
    const cplx half_i(0.0, 0.5 * dt);
    std::vector<cplx> out(n, cplx{});
    const std::size_t m = n - 2;
    std::vector<cplx> c(m);
    std::vector<cplx> d(m);

    // Thomas algorithm: sub = super = -r, diag = 1 + 2r + i dt/2 v.
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = k + 1;
        const cplx rhs = (1.0 - 2.0 * r - half_i * v[j]) * psi[j] + r * (psi[j - 1] + psi[j + 1]);
        const cplx diag = 1.0 + 2.0 * r + half_i * v[j];
        const cplx denom = k == 0 ? diag : diag + r * c[k - 1];
        if (std::abs(denom) < 1e-300) throw SolverFailure("zero pivot in tridiagonal solve");
        c[k] = -r / denom;
        d[k] = (k == 0 ? rhs : rhs + r * d[k - 1]) / denom;
    }
    out[m] = d[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) out[k + 1] = d[k] - c[k] * out[k + 2];
    return out;
}

}  // namespace

double WaveState::norm(const SpatialGrid& grid) const {
    double s = 0.0;
    for (const auto& z : psi) s += std::norm(z);
    return s * grid.dx();
}

WaveState init_coherent_wave(const PhysicalParams& params, const SpatialGrid& grid, double t0) {
    params.validate();
    const OracleWave oracle(params);
    WaveState w;
    w.t = t0;
    w.psi.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) w.psi[j] = oracle.psi(grid.position(j), t0);
    return w;
}

WaveState cn_step(const WaveState& wave, const SpatialGrid& grid, const PhysicalParams& params,
                  double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("cn_step: dt must be positive");
    if (wave.psi.size() != grid.size()) throw InvalidArgument("cn_step: size mismatch");

    WaveState next;
    next.t = wave.t + dt;
    const auto v_old = potential(wave, grid, params);
    next.psi = cn_solve(wave.psi, v_old, params.D, grid.dx(), dt);
    if (params.kp > 0.0) {
        const auto v_pred = potential(next, grid, params);
        std::vector<double> v_mid(v_old.size());
        for (std::size_t j = 0; j < v_mid.size(); ++j) v_mid[j] = 0.5 * (v_old[j] + v_pred[j]);
        next.psi = cn_solve(wave.psi, v_mid, params.D, grid.dx(), dt);
    }
    for (const auto& z : next.psi) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw SolverFailure("non-finite amplitude after Crank-Nicolson step");
        }
    }
    return next;
}

FluidState wave_to_fluid(const WaveState& wave, const SpatialGrid& grid,
                         const PhysicalParams& params, double rel_floor) {
    const std::size_t n = grid.size();
    if (wave.psi.size() != n) throw InvalidArgument("wave_to_fluid: size mismatch");
    std::vector<double> p2(n);
    for (std::size_t j = 0; j < n; ++j) p2[j] = std::norm(wave.psi[j]);
    const double top = *std::max_element(p2.begin(), p2.end());
    if (!(top > 0.0)) throw InvalidArgument("wave_to_fluid: wave function vanishes");
    const double floor = rel_floor * top;

    FluidState s;
    s.t = wave.t;
    s.ln_rho.resize(n);
    s.V.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) s.ln_rho[j] = std::log(params.M * std::max(p2[j], floor));
    const double scale = 2.0 * params.D / (2.0 * grid.dx());
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (p2[j - 1] < floor || p2[j + 1] < floor) continue;
        s.V[j] = scale * std::arg(wave.psi[j + 1] * std::conj(wave.psi[j - 1]));
    }
    s.V[0] = s.V[1];
    s.V[n - 1] = s.V[n - 2];
    return s;
}

WaveState fluid_to_wave(const FluidState& state, const SpatialGrid& grid,
                        const PhysicalParams& params) {
    const std::size_t n = grid.size();
    if (state.size() != n || state.V.size() != n) {
        throw InvalidArgument("fluid_to_wave: size mismatch");
    }
    WaveState w;
    w.t = state.t;
    w.psi.resize(n);
    const double k = grid.dx() / (2.0 * 2.0 * params.D);
    double theta = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) theta += k * (state.V[j - 1] + state.V[j]);
        w.psi[j] = std::polar(std::sqrt(std::exp(state.ln_rho[j]) / params.M), theta);
    }
    return w;
}

RunRecord run_reference(const WaveState& initial, const SpatialGrid& grid,
                        const PhysicalParams& params, double dt, std::size_t steps,
                        std::size_t snapshot_every) {
    params.validate();
    RunRecord record;
    record.params = params;
    auto observe = [&](const WaveState& w, std::size_t step) {
        const FluidState f = wave_to_fluid(w, grid, params);
        record.steps.push_back(measure(f, grid, params, step));
        if (snapshot_every > 0 && step % snapshot_every == 0) {
            record.snapshots.push_back(take_snapshot(f, step));
        }
    };

    WaveState wave = initial;
    try {
        observe(wave, 0);
        for (std::size_t step = 1; step <= steps; ++step) {
            wave = cn_step(wave, grid, params, dt);
            observe(wave, step);
        }
    } catch (const SolverFailure&) {
        record.summary.final_status = StepStatus::diverged_nonfinite;
    } catch (const DegenerateDensity&) {
        record.summary.final_status = StepStatus::diverged_dispersion;
    }
    summarize(record);
    return record;
}

}  // namespace qfluid
