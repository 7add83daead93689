#include <atomic>
#include <cstdlib>
#include <string>

#include "qfluid/core.hpp"
#include "qfluid/kernels.hpp"

namespace qfluid::kernels {
namespace {

const KernelTable* widest() noexcept {
#if defined(QFLUID_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return &avx2::table;
#endif
#if defined(QFLUID_HAVE_NEON)
    return &neon::table;
#endif
    return &scalar::table;
}

const KernelTable* initial() {
    if (const char* env = std::getenv("QFLUID_ISA")) {
        const std::string_view s(env);
        if (s == "scalar") return &scalar::table;
        if (s == "avx2" && isa_supported(Isa::avx2)) return &table_for(Isa::avx2);
        if (s == "neon" && isa_supported(Isa::neon)) return &table_for(Isa::neon);
    }
    return widest();
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> current{initial()};
    return current;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "?";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(QFLUID_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(QFLUID_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_supported(isa)) {
        throw InvalidArgument("instruction set '" + std::string(to_string(isa)) +
                              "' is not available on this machine");
    }
    switch (isa) {
#if defined(QFLUID_HAVE_AVX2)
        case Isa::avx2: return avx2::table;
#endif
#if defined(QFLUID_HAVE_NEON)
        case Isa::neon: return neon::table;
#endif
        default: return scalar::table;
    }
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void select(Isa isa) { slot().store(&table_for(isa), std::memory_order_release); }

}  // namespace qfluid::kernels
