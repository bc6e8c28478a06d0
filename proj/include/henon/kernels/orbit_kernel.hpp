#pragma once

#include <cstdint>
#include <vector>

#include "henon/chain.hpp"

namespace henon::kernels {

// Chain data flattened for the orbit inner loops. The inverse direction
// stores factors in application order with 1/b and 1/delta precomputed, so
// both kernels do the same multiplies in the same order.
struct FlatFactor {
    Complex b;       // b (forward) or 1/b (inverse)
    Complex c;       // c in both directions
    Complex delta;   // delta (forward) or 1/delta (inverse)
    std::vector<Complex> coeffs;  // ascending
};

struct FlatChain {
    std::vector<FlatFactor> forward;
    std::vector<FlatFactor> inverse;  // reversed factor order, ready to iterate
    double R = 1.0;
    double R_sq = 1.0;
    double sentinel_sq = kOverflowSentinel * kOverflowSentinel;
    long degree = 1;

    static FlatChain from(const HenonChain& h, double filtration_R);
};

enum class StopReason : std::uint8_t { Budget = 0, SectorEntry = 1, Overflow = 2 };

// Per-point outcome of an orbit run. `steps` counts completed applications
// reflected in (x, y); `first_entry` is the first step index (0 = the input
// point itself) at which the orbit lay in V^+ (forward) or V^- (backward),
// or -1 if it never did.
struct OrbitOutcome {
    std::int32_t steps = 0;
    std::int32_t first_entry = -1;
    StopReason reason = StopReason::Budget;
    Complex x{}, y{};
};

struct OrbitParams {
    int budget = 200;
    bool backward = false;
    bool stop_on_entry = false;
};

using OrbitBatchFn = void (*)(const FlatChain&, const Point2*, int, const OrbitParams&,
                              OrbitOutcome*);

// Scalar reference kernel: processes each point independently.
void orbit_batch_scalar(const FlatChain& chain, const Point2* pts, int count,
                        const OrbitParams& params, OrbitOutcome* out);

#if defined(HENON_HAVE_AVX2)
// AVX2 kernel: 4 points per vector, bit-identical to the scalar kernel
// (same operation order, no FMA).
void orbit_batch_avx2(const FlatChain& chain, const Point2* pts, int count,
                      const OrbitParams& params, OrbitOutcome* out);
bool avx2_supported();
#endif

// Runtime selection. Honors HENON_KERNEL=scalar|avx2 when set.
OrbitBatchFn select_orbit_kernel();
const char* selected_kernel_name();

}  // namespace henon::kernels
