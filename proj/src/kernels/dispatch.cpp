#include "tnvqe/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace tnvqe::kernels {

bool avx2_supported() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") &&
           __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const KernelTable& select() {
    const char* env = std::getenv("TNVQE_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(env, "avx2") == 0) {
            if (avx2_supported()) return *avx2_kernels();
            std::fprintf(stderr,
                         "tnvqe: TNVQE_KERNELS=avx2 requested but unavailable; "
                         "using scalar kernels\n");
            return scalar_kernels();
        }
        std::fprintf(stderr,
                     "tnvqe: unknown TNVQE_KERNELS value '%s'; "
                     "using auto selection\n",
                     env);
    }
    return avx2_supported() ? *avx2_kernels() : scalar_kernels();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace tnvqe::kernels
