#include "henon/kernels/orbit_kernel.hpp"

namespace henon::kernels {

FlatChain FlatChain::from(const HenonChain& h, double filtration_R) {
    FlatChain fc;
    fc.R = filtration_R;
    fc.R_sq = filtration_R * filtration_R;
    fc.degree = h.degree();
    const Complex one{1.0, 0.0};
    for (const auto& f : h.factors())
        fc.forward.push_back({f.b(), f.c(), f.delta(), f.p().coeffs()});
    for (auto it = h.factors().rbegin(); it != h.factors().rend(); ++it)
        fc.inverse.push_back({one / it->b(), it->c(), one / it->delta(), it->p().coeffs()});
    return fc;
}

namespace {

// All arithmetic below is spelled out in re/im pairs in a fixed order; the
// AVX2 kernel mirrors it lane for lane, which is what makes the two paths
// bit-identical under -ffp-contract=off.
struct State {
    double xr, xi, yr, yi;
};

inline void apply_forward(const FlatFactor& f, State& s) {
    // nx = b*y + c
    const double nxr = f.b.real() * s.yr - f.b.imag() * s.yi + f.c.real();
    const double nxi = f.b.real() * s.yi + f.b.imag() * s.yr + f.c.imag();
    // acc = horner(p, y)
    const auto& cs = f.coeffs;
    double ar = cs.back().real(), ai = cs.back().imag();
    for (size_t k = cs.size() - 1; k-- > 0;) {
        const double tr = ar * s.yr - ai * s.yi + cs[k].real();
        const double ti = ar * s.yi + ai * s.yr + cs[k].imag();
        ar = tr;
        ai = ti;
    }
    // ny = acc - delta*x
    const double nyr = ar - (f.delta.real() * s.xr - f.delta.imag() * s.xi);
    const double nyi = ai - (f.delta.real() * s.xi + f.delta.imag() * s.xr);
    s = {nxr, nxi, nyr, nyi};
}

inline void apply_inverse(const FlatFactor& f, State& s) {
    // w = (x - c) * (1/b)
    const double dxr = s.xr - f.c.real();
    const double dxi = s.xi - f.c.imag();
    const double wr = f.b.real() * dxr - f.b.imag() * dxi;
    const double wi = f.b.real() * dxi + f.b.imag() * dxr;
    // acc = horner(p, w)
    const auto& cs = f.coeffs;
    double ar = cs.back().real(), ai = cs.back().imag();
    for (size_t k = cs.size() - 1; k-- > 0;) {
        const double tr = ar * wr - ai * wi + cs[k].real();
        const double ti = ar * wi + ai * wr + cs[k].imag();
        ar = tr;
        ai = ti;
    }
    // nx = (acc - y) * (1/delta)
    const double pr = ar - s.yr;
    const double pi = ai - s.yi;
    const double nxr = f.delta.real() * pr - f.delta.imag() * pi;
    const double nxi = f.delta.real() * pi + f.delta.imag() * pr;
    s = {nxr, nxi, wr, wi};
}

}  // namespace

void orbit_batch_scalar(const FlatChain& chain, const Point2* pts, int count,
                        const OrbitParams& params, OrbitOutcome* out) {
    const auto& factors = params.backward ? chain.inverse : chain.forward;
    for (int p = 0; p < count; ++p) {
        State s{pts[p].x.real(), pts[p].x.imag(), pts[p].y.real(), pts[p].y.imag()};
        OrbitOutcome o;

        double m2x = s.xr * s.xr + s.xi * s.xi;
        double m2y = s.yr * s.yr + s.yi * s.yi;
        bool over = !(m2x <= chain.sentinel_sq) || !(m2y <= chain.sentinel_sq);
        bool entered = params.backward ? (m2x > m2y && m2x > chain.R_sq)
                                       : (m2y > m2x && m2y > chain.R_sq);
        if (over) {
            o.reason = StopReason::Overflow;
        } else if (entered) {
            o.first_entry = 0;
            if (params.stop_on_entry) o.reason = StopReason::SectorEntry;
        }

        if (!over && !(entered && params.stop_on_entry)) {
            for (int step = 1; step <= params.budget; ++step) {
                State next = s;
                if (params.backward)
                    for (const auto& f : factors) apply_inverse(f, next);
                else
                    for (const auto& f : factors) apply_forward(f, next);

                m2x = next.xr * next.xr + next.xi * next.xi;
                m2y = next.yr * next.yr + next.yi * next.yi;
                if (!(m2x <= chain.sentinel_sq) || !(m2y <= chain.sentinel_sq)) {
                    o.reason = StopReason::Overflow;
                    break;  // keep the previous finite state
                }
                s = next;
                o.steps = step;
                entered = params.backward ? (m2x > m2y && m2x > chain.R_sq)
                                          : (m2y > m2x && m2y > chain.R_sq);
                if (entered && o.first_entry < 0) o.first_entry = step;
                if (entered && params.stop_on_entry) {
                    o.reason = StopReason::SectorEntry;
                    break;
                }
            }
        }
        o.x = Complex{s.xr, s.xi};
        o.y = Complex{s.yr, s.yi};
        out[p] = o;
    }
}

}  // namespace henon::kernels
