#pragma once

// Data-parallel inner loops of the stepper and the force estimators.
//
// Every kernel has a scalar reference implementation and vectorized variants
// (AVX2 on x86-64, NEON on AArch64) chosen once at runtime. Element-wise
// kernels evaluate the same operations in the same order as the scalar code,
// without FMA contraction, so their results are bit-identical to it.
// Reductions reassociate and agree with the scalar sums to rounding.
//
// Stencil kernels write only the interior [1, n-1) of their output.

#include <cstddef>
#include <string_view>

namespace qfluid::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

struct WeightedSums {
    double w = 0.0;   // sum w_j
    double wx = 0.0;  // sum w_j x_j
};

struct KernelTable {
    Isa isa;

    // out[j] = (in[j+1] - in[j-1]) * scale
    void (*central_difference)(const double* in, double* out, std::size_t n, double scale);

    // Q[j] = -D2 * ((H[j+1] - H[j-1]) * inv2dx + 0.5 * H[j]^2)
    void (*quantum_potential)(const double* H, double* Q, std::size_t n, double D2,
                              double inv2dx);

    // Lax-Friedrichs update of (ln rho, V) under the total force f:
    //   l'[j] = (l[j+1] + l[j-1])/2 - c * ((v[j+1] - v[j-1]) + v[j] * (l[j+1] - l[j-1]))
    //   v'[j] = (v[j+1] + v[j-1])/2 + dt * (-v[j] * (v[j+1] - v[j-1]) * inv2dx + f[j])
    // with c = dt / (2 dx) and inv2dx = 1 / (2 dx).
    void (*lax_update)(const double* l, const double* v, const double* f, double* l_out,
                       double* v_out, std::size_t n, double dt, double dx);

    // y[j] += alpha * x[j] over [0, n)
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

    // out[j] = x[j] * w[j] over [0, n)
    void (*multiply)(const double* x, const double* w, double* out, std::size_t n);

    WeightedSums (*weighted_sums)(const double* w, const double* x, std::size_t n);

    // sum w_j (x_j - mean)^2
    double (*weighted_spread)(const double* w, const double* x, std::size_t n, double mean);
};

bool isa_supported(Isa isa) noexcept;

/// Table for a specific instruction set; throws if it is not available here.
const KernelTable& table_for(Isa isa);

/// Currently selected table. Defaults to the widest supported ISA; the
/// environment variable QFLUID_ISA=scalar|avx2|neon overrides the choice.
const KernelTable& active();

/// Switches the active table; throws if the ISA is unsupported.
void select(Isa isa);

namespace scalar {
extern const KernelTable table;
}
#if defined(QFLUID_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif
#if defined(QFLUID_HAVE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

}  // namespace qfluid::kernels
