#include "cvmc/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace cvmc::simd {

namespace detail {
const Kernels& avx2_table();
}

const Kernels* avx2_kernels() {
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &detail::avx2_table();
    return nullptr;
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        const char* env = std::getenv("CVMC_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
        if (const Kernels* k = avx2_kernels()) return k;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace cvmc::simd
