#include <arm_neon.h>

#include "qfluid/kernels.hpp"

namespace qfluid::kernels::neon {
namespace {

void central_difference(const double* in, double* out, std::size_t n, double scale) {
    if (n < 3) return;
    const float64x2_t vs = vdupq_n_f64(scale);
    std::size_t j = 1;
    for (; j + 2 < n; j += 2) {
        vst1q_f64(out + j, vmulq_f64(vsubq_f64(vld1q_f64(in + j + 1), vld1q_f64(in + j - 1)), vs));
    }
    for (; j + 1 < n; ++j) out[j] = (in[j + 1] - in[j - 1]) * scale;
}

void quantum_potential(const double* H, double* Q, std::size_t n, double D2, double inv2dx) {
    if (n < 3) return;
    const float64x2_t vi = vdupq_n_f64(inv2dx);
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t mD2 = vdupq_n_f64(-D2);
    std::size_t j = 1;
    for (; j + 2 < n; j += 2) {
        const float64x2_t h = vld1q_f64(H + j);
        const float64x2_t div = vmulq_f64(vsubq_f64(vld1q_f64(H + j + 1), vld1q_f64(H + j - 1)), vi);
        const float64x2_t hs = vmulq_f64(half, vmulq_f64(h, h));
        vst1q_f64(Q + j, vmulq_f64(mD2, vaddq_f64(div, hs)));
    }
    for (; j + 1 < n; ++j) {
        const double div = (H[j + 1] - H[j - 1]) * inv2dx;
        const double half_sq = 0.5 * (H[j] * H[j]);
        Q[j] = -D2 * (div + half_sq);
    }
}

void lax_update(const double* l, const double* v, const double* f, double* l_out, double* v_out,
                std::size_t n, double dt, double dx) {
    if (n < 3) return;
    const double c = dt / (2.0 * dx);
    const double inv2dx = 1.0 / (2.0 * dx);
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vi = vdupq_n_f64(inv2dx);
    const float64x2_t vdt = vdupq_n_f64(dt);
    const float64x2_t half = vdupq_n_f64(0.5);
    std::size_t j = 1;
    for (; j + 2 < n; j += 2) {
        const float64x2_t lp = vld1q_f64(l + j + 1);
        const float64x2_t lm = vld1q_f64(l + j - 1);
        const float64x2_t vp = vld1q_f64(v + j + 1);
        const float64x2_t vm = vld1q_f64(v + j - 1);
        const float64x2_t vj = vld1q_f64(v + j);
        const float64x2_t dl = vsubq_f64(lp, lm);
        const float64x2_t dv = vsubq_f64(vp, vm);
        const float64x2_t adv = vaddq_f64(dv, vmulq_f64(vj, dl));
        vst1q_f64(l_out + j, vsubq_f64(vmulq_f64(half, vaddq_f64(lp, lm)), vmulq_f64(vc, adv)));
        const float64x2_t acc = vaddq_f64(vmulq_f64(vmulq_f64(vnegq_f64(vj), dv), vi), vld1q_f64(f + j));
        vst1q_f64(v_out + j, vaddq_f64(vmulq_f64(half, vaddq_f64(vp, vm)), vmulq_f64(vdt, acc)));
    }
    for (; j + 1 < n; ++j) {
        const double dl = l[j + 1] - l[j - 1];
        const double dv = v[j + 1] - v[j - 1];
        l_out[j] = 0.5 * (l[j + 1] + l[j - 1]) - c * (dv + v[j] * dl);
        v_out[j] = 0.5 * (v[j + 1] + v[j - 1]) + dt * (-v[j] * dv * inv2dx + f[j]);
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) vst1q_f64(y + j, vaddq_f64(vld1q_f64(y + j), vmulq_f64(va, vld1q_f64(x + j))));
    for (; j < n; ++j) y[j] += alpha * x[j];
}

void multiply(const double* x, const double* w, double* out, std::size_t n) {
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) vst1q_f64(out + j, vmulq_f64(vld1q_f64(x + j), vld1q_f64(w + j)));
    for (; j < n; ++j) out[j] = x[j] * w[j];
}

WeightedSums weighted_sums(const double* w, const double* x, std::size_t n) {
    float64x2_t sw = vdupq_n_f64(0.0);
    float64x2_t swx = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t wj = vld1q_f64(w + j);
        sw = vaddq_f64(sw, wj);
        swx = vaddq_f64(swx, vmulq_f64(wj, vld1q_f64(x + j)));
    }
    WeightedSums s{vaddvq_f64(sw), vaddvq_f64(swx)};
    for (; j < n; ++j) {
        s.w += w[j];
        s.wx += w[j] * x[j];
    }
    return s;
}

double weighted_spread(const double* w, const double* x, std::size_t n, double mean) {
    const float64x2_t vm = vdupq_n_f64(mean);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(x + j), vm);
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + j), vmulq_f64(d, d)));
    }
    double s = vaddvq_f64(acc);
    for (; j < n; ++j) {
        const double d = x[j] - mean;
        s += w[j] * (d * d);
    }
    return s;
}

}  // namespace

const KernelTable table{
    Isa::neon,     &central_difference, &quantum_potential, &lax_update,
    &axpy,         &multiply,           &weighted_sums,     &weighted_spread,
};

}  // namespace qfluid::kernels::neon
