#include "henon/kernels/orbit_kernel.hpp"

#if defined(HENON_HAVE_AVX2)

#include <immintrin.h>

namespace henon::kernels {

namespace {

constexpr int kLanes = 4;

struct VState {
    __m256d xr, xi, yr, yi;
};

// Same expression trees as the scalar kernel, lane for lane. No FMA.
inline void apply_forward_v(const FlatFactor& f, VState& s) {
    const __m256d br = _mm256_set1_pd(f.b.real());
    const __m256d bi = _mm256_set1_pd(f.b.imag());
    const __m256d nxr = _mm256_add_pd(
        _mm256_sub_pd(_mm256_mul_pd(br, s.yr), _mm256_mul_pd(bi, s.yi)),
        _mm256_set1_pd(f.c.real()));
    const __m256d nxi = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(br, s.yi), _mm256_mul_pd(bi, s.yr)),
        _mm256_set1_pd(f.c.imag()));

    const auto& cs = f.coeffs;
    __m256d ar = _mm256_set1_pd(cs.back().real());
    __m256d ai = _mm256_set1_pd(cs.back().imag());
    for (size_t k = cs.size() - 1; k-- > 0;) {
        const __m256d tr = _mm256_add_pd(
            _mm256_sub_pd(_mm256_mul_pd(ar, s.yr), _mm256_mul_pd(ai, s.yi)),
            _mm256_set1_pd(cs[k].real()));
        const __m256d ti = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(ar, s.yi), _mm256_mul_pd(ai, s.yr)),
            _mm256_set1_pd(cs[k].imag()));
        ar = tr;
        ai = ti;
    }
    const __m256d dr = _mm256_set1_pd(f.delta.real());
    const __m256d di = _mm256_set1_pd(f.delta.imag());
    const __m256d nyr = _mm256_sub_pd(
        ar, _mm256_sub_pd(_mm256_mul_pd(dr, s.xr), _mm256_mul_pd(di, s.xi)));
    const __m256d nyi = _mm256_sub_pd(
        ai, _mm256_add_pd(_mm256_mul_pd(dr, s.xi), _mm256_mul_pd(di, s.xr)));
    s = {nxr, nxi, nyr, nyi};
}

inline void apply_inverse_v(const FlatFactor& f, VState& s) {
    const __m256d dxr = _mm256_sub_pd(s.xr, _mm256_set1_pd(f.c.real()));
    const __m256d dxi = _mm256_sub_pd(s.xi, _mm256_set1_pd(f.c.imag()));
    const __m256d br = _mm256_set1_pd(f.b.real());
    const __m256d bi = _mm256_set1_pd(f.b.imag());
    const __m256d wr = _mm256_sub_pd(_mm256_mul_pd(br, dxr), _mm256_mul_pd(bi, dxi));
    const __m256d wi = _mm256_add_pd(_mm256_mul_pd(br, dxi), _mm256_mul_pd(bi, dxr));

    const auto& cs = f.coeffs;
    __m256d ar = _mm256_set1_pd(cs.back().real());
    __m256d ai = _mm256_set1_pd(cs.back().imag());
    for (size_t k = cs.size() - 1; k-- > 0;) {
        const __m256d tr = _mm256_add_pd(
            _mm256_sub_pd(_mm256_mul_pd(ar, wr), _mm256_mul_pd(ai, wi)),
            _mm256_set1_pd(cs[k].real()));
        const __m256d ti = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(ar, wi), _mm256_mul_pd(ai, wr)),
            _mm256_set1_pd(cs[k].imag()));
        ar = tr;
        ai = ti;
    }
    const __m256d pr = _mm256_sub_pd(ar, s.yr);
    const __m256d pi = _mm256_sub_pd(ai, s.yi);
    const __m256d dr = _mm256_set1_pd(f.delta.real());
    const __m256d di = _mm256_set1_pd(f.delta.imag());
    const __m256d nxr = _mm256_sub_pd(_mm256_mul_pd(dr, pr), _mm256_mul_pd(di, pi));
    const __m256d nxi = _mm256_add_pd(_mm256_mul_pd(dr, pi), _mm256_mul_pd(di, pr));
    s = {nxr, nxi, wr, wi};
}

void orbit_lanes_avx2(const FlatChain& chain, const Point2* pts, int count,
                      const OrbitParams& params, OrbitOutcome* out) {
    const auto& factors = params.backward ? chain.inverse : chain.forward;

    alignas(32) double xr[kLanes], xi[kLanes], yr[kLanes], yi[kLanes];
    for (int l = 0; l < kLanes; ++l) {
        const Point2& z = pts[l < count ? l : count - 1];
        xr[l] = z.x.real();
        xi[l] = z.x.imag();
        yr[l] = z.y.real();
        yi[l] = z.y.imag();
    }
    VState s{_mm256_load_pd(xr), _mm256_load_pd(xi), _mm256_load_pd(yr), _mm256_load_pd(yi)};

    OrbitOutcome o[kLanes];
    bool active[kLanes];
    // Step-0 checks per lane, with the scalar kernel's exact comparisons.
    for (int l = 0; l < kLanes; ++l) {
        const double m2x = xr[l] * xr[l] + xi[l] * xi[l];
        const double m2y = yr[l] * yr[l] + yi[l] * yi[l];
        const bool over = !(m2x <= chain.sentinel_sq) || !(m2y <= chain.sentinel_sq);
        const bool entered = params.backward ? (m2x > m2y && m2x > chain.R_sq)
                                             : (m2y > m2x && m2y > chain.R_sq);
        active[l] = true;
        if (over) {
            o[l].reason = StopReason::Overflow;
            active[l] = false;
        } else if (entered) {
            o[l].first_entry = 0;
            if (params.stop_on_entry) {
                o[l].reason = StopReason::SectorEntry;
                active[l] = false;
            }
        }
    }

    const __m256d sentinel = _mm256_set1_pd(chain.sentinel_sq);
    const __m256d r2 = _mm256_set1_pd(chain.R_sq);

    auto any_active = [&] {
        for (int l = 0; l < kLanes; ++l)
            if (active[l]) return true;
        return false;
    };

    for (int step = 1; step <= params.budget && any_active(); ++step) {
        VState next = s;
        if (params.backward)
            for (const auto& f : factors) apply_inverse_v(f, next);
        else
            for (const auto& f : factors) apply_forward_v(f, next);

        const __m256d m2x = _mm256_add_pd(_mm256_mul_pd(next.xr, next.xr),
                                          _mm256_mul_pd(next.xi, next.xi));
        const __m256d m2y = _mm256_add_pd(_mm256_mul_pd(next.yr, next.yr),
                                          _mm256_mul_pd(next.yi, next.yi));
        const __m256d over_v = _mm256_or_pd(_mm256_cmp_pd(m2x, sentinel, _CMP_NLE_UQ),
                                            _mm256_cmp_pd(m2y, sentinel, _CMP_NLE_UQ));
        const __m256d entered_v =
            params.backward
                ? _mm256_and_pd(_mm256_cmp_pd(m2x, m2y, _CMP_GT_OQ),
                                _mm256_cmp_pd(m2x, r2, _CMP_GT_OQ))
                : _mm256_and_pd(_mm256_cmp_pd(m2y, m2x, _CMP_GT_OQ),
                                _mm256_cmp_pd(m2y, r2, _CMP_GT_OQ));
        const int over_bits = _mm256_movemask_pd(over_v);
        const int entered_bits = _mm256_movemask_pd(entered_v);

        // Commit the step only on active lanes that stayed finite.
        alignas(32) double cm[kLanes];
        for (int l = 0; l < kLanes; ++l)
            cm[l] = (active[l] && !(over_bits & (1 << l))) ? -1.0 : 0.0;
        const __m256d commit = _mm256_cmp_pd(_mm256_load_pd(cm), _mm256_setzero_pd(), _CMP_NEQ_OQ);
        s.xr = _mm256_blendv_pd(s.xr, next.xr, commit);
        s.xi = _mm256_blendv_pd(s.xi, next.xi, commit);
        s.yr = _mm256_blendv_pd(s.yr, next.yr, commit);
        s.yi = _mm256_blendv_pd(s.yi, next.yi, commit);

        for (int l = 0; l < kLanes; ++l) {
            if (!active[l]) continue;
            if (over_bits & (1 << l)) {
                o[l].reason = StopReason::Overflow;
                active[l] = false;
                continue;
            }
            o[l].steps = step;
            if (entered_bits & (1 << l)) {
                if (o[l].first_entry < 0) o[l].first_entry = step;
                if (params.stop_on_entry) {
                    o[l].reason = StopReason::SectorEntry;
                    active[l] = false;
                }
            }
        }
    }

    _mm256_store_pd(xr, s.xr);
    _mm256_store_pd(xi, s.xi);
    _mm256_store_pd(yr, s.yr);
    _mm256_store_pd(yi, s.yi);
    for (int l = 0; l < count; ++l) {
        o[l].x = Complex{xr[l], xi[l]};
        o[l].y = Complex{yr[l], yi[l]};
        out[l] = o[l];
    }
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

void orbit_batch_avx2(const FlatChain& chain, const Point2* pts, int count,
                      const OrbitParams& params, OrbitOutcome* out) {
    int done = 0;
    while (done < count) {
        const int n = count - done < kLanes ? count - done : kLanes;
        orbit_lanes_avx2(chain, pts + done, n, params, out + done);
        done += n;
    }
}

}  // namespace henon::kernels

#endif  // HENON_HAVE_AVX2
