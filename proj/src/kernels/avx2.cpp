// Built with -mavx2 only. No FMA, so element-wise results match the scalar table bit for bit.
#include <immintrin.h>

#include "qfluid/kernels.hpp"

namespace qfluid::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void central_difference(const double* in, double* out, std::size_t n, double scale) {
    if (n < 3) return;
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t j = 1;
    for (; j + 4 < n; j += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(in + j + 1), _mm256_loadu_pd(in + j - 1));
        _mm256_storeu_pd(out + j, _mm256_mul_pd(d, vs));
    }
    for (; j + 1 < n; ++j) out[j] = (in[j + 1] - in[j - 1]) * scale;
}

void quantum_potential(const double* H, double* Q, std::size_t n, double D2, double inv2dx) {
    if (n < 3) return;
    const __m256d vi = _mm256_set1_pd(inv2dx);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d mD2 = _mm256_set1_pd(-D2);
    std::size_t j = 1;
    for (; j + 4 < n; j += 4) {
        const __m256d h = _mm256_loadu_pd(H + j);
        const __m256d div =
            _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(H + j + 1), _mm256_loadu_pd(H + j - 1)), vi);
        const __m256d hs = _mm256_mul_pd(half, _mm256_mul_pd(h, h));
        _mm256_storeu_pd(Q + j, _mm256_mul_pd(mD2, _mm256_add_pd(div, hs)));
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
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vi = _mm256_set1_pd(inv2dx);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t j = 1;
    for (; j + 4 < n; j += 4) {
        const __m256d lp = _mm256_loadu_pd(l + j + 1);
        const __m256d lm = _mm256_loadu_pd(l + j - 1);
        const __m256d vp = _mm256_loadu_pd(v + j + 1);
        const __m256d vm = _mm256_loadu_pd(v + j - 1);
        const __m256d vj = _mm256_loadu_pd(v + j);
        const __m256d dl = _mm256_sub_pd(lp, lm);
        const __m256d dv = _mm256_sub_pd(vp, vm);
        const __m256d lav = _mm256_mul_pd(half, _mm256_add_pd(lp, lm));
        const __m256d adv = _mm256_add_pd(dv, _mm256_mul_pd(vj, dl));
        _mm256_storeu_pd(l_out + j, _mm256_sub_pd(lav, _mm256_mul_pd(vc, adv)));
        const __m256d vav = _mm256_mul_pd(half, _mm256_add_pd(vp, vm));
        const __m256d nvj = _mm256_xor_pd(vj, sign);
        const __m256d acc =
            _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(nvj, dv), vi), _mm256_loadu_pd(f + j));
        _mm256_storeu_pd(v_out + j, _mm256_add_pd(vav, _mm256_mul_pd(vdt, acc)));
    }
    for (; j + 1 < n; ++j) {
        const double dl = l[j + 1] - l[j - 1];
        const double dv = v[j + 1] - v[j - 1];
        l_out[j] = 0.5 * (l[j + 1] + l[j - 1]) - c * (dv + v[j] * dl);
        v_out[j] = 0.5 * (v[j + 1] + v[j - 1]) + dt * (-v[j] * dv * inv2dx + f[j]);
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + j), _mm256_mul_pd(va, _mm256_loadu_pd(x + j)));
        _mm256_storeu_pd(y + j, r);
    }
    for (; j < n; ++j) y[j] += alpha * x[j];
}

void multiply(const double* x, const double* w, double* out, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        _mm256_storeu_pd(out + j, _mm256_mul_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(w + j)));
    }
    for (; j < n; ++j) out[j] = x[j] * w[j];
}

WeightedSums weighted_sums(const double* w, const double* x, std::size_t n) {
    __m256d sw = _mm256_setzero_pd();
    __m256d swx = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d wj = _mm256_loadu_pd(w + j);
        sw = _mm256_add_pd(sw, wj);
        swx = _mm256_add_pd(swx, _mm256_mul_pd(wj, _mm256_loadu_pd(x + j)));
    }
    WeightedSums s{hsum(sw), hsum(swx)};
    for (; j < n; ++j) {
        s.w += w[j];
        s.wx += w[j] * x[j];
    }
    return s;
}

double weighted_spread(const double* w, const double* x, std::size_t n, double mean) {
    const __m256d vm = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + j), vm);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + j), _mm256_mul_pd(d, d)));
    }
    double s = hsum(acc);
    for (; j < n; ++j) {
        const double d = x[j] - mean;
        s += w[j] * (d * d);
    }
    return s;
}

}  // namespace

const KernelTable table{
    Isa::avx2,     &central_difference, &quantum_potential, &lax_update,
    &axpy,         &multiply,           &weighted_sums,     &weighted_spread,
};

}  // namespace qfluid::kernels::avx2
