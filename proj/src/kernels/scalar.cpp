#include "qfluid/kernels.hpp"

namespace qfluid::kernels::scalar {
namespace {

void central_difference(const double* in, double* out, std::size_t n, double scale) {
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (in[j + 1] - in[j - 1]) * scale;
}

void quantum_potential(const double* H, double* Q, std::size_t n, double D2, double inv2dx) {
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double div = (H[j + 1] - H[j - 1]) * inv2dx;
        const double half_sq = 0.5 * (H[j] * H[j]);
        Q[j] = -D2 * (div + half_sq);
    }
}

void lax_update(const double* l, const double* v, const double* f, double* l_out, double* v_out,
                std::size_t n, double dt, double dx) {
    const double c = dt / (2.0 * dx);
    const double inv2dx = 1.0 / (2.0 * dx);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double dl = l[j + 1] - l[j - 1];
        const double dv = v[j + 1] - v[j - 1];
        l_out[j] = 0.5 * (l[j + 1] + l[j - 1]) - c * (dv + v[j] * dl);
        v_out[j] = 0.5 * (v[j + 1] + v[j - 1]) + dt * (-v[j] * dv * inv2dx + f[j]);
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) y[j] += alpha * x[j];
}

void multiply(const double* x, const double* w, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = x[j] * w[j];
}

WeightedSums weighted_sums(const double* w, const double* x, std::size_t n) {
    WeightedSums s;
    for (std::size_t j = 0; j < n; ++j) {
        s.w += w[j];
        s.wx += w[j] * x[j];
    }
    return s;
}

double weighted_spread(const double* w, const double* x, std::size_t n, double mean) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = x[j] - mean;
        s += w[j] * (d * d);
    }
    return s;
}

}  // namespace

const KernelTable table{
    Isa::scalar,   &central_difference, &quantum_potential, &lax_update,
    &axpy,         &multiply,           &weighted_sums,     &weighted_spread,
};

}  // namespace qfluid::kernels::scalar
