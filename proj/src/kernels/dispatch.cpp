#include <cstdlib>
#include <cstring>

#include "henon/kernels/orbit_kernel.hpp"

namespace henon::kernels {

namespace {

struct Selection {
    OrbitBatchFn fn;
    const char* name;
};

Selection select() {
    const char* forced = std::getenv("HENON_KERNEL");
#if defined(HENON_HAVE_AVX2)
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return {orbit_batch_scalar, "scalar"};
        if (std::strcmp(forced, "avx2") == 0 && avx2_supported()) return {orbit_batch_avx2, "avx2"};
        return {orbit_batch_scalar, "scalar"};
    }
    if (avx2_supported()) return {orbit_batch_avx2, "avx2"};
#else
    (void)forced;
#endif
    return {orbit_batch_scalar, "scalar"};
}

const Selection& cached() {
    static const Selection s = select();
    return s;
}

}  // namespace

OrbitBatchFn select_orbit_kernel() { return cached().fn; }
const char* selected_kernel_name() { return cached().name; }

}  // namespace henon::kernels
