#include "henon/green.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "henon/errors.hpp"

namespace henon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-step distortion bound for the full chain at dominant magnitude t,
// walking the factors with log-space magnitudes. For factor j applied to a
// V^+ point with |y| = t_j >= R:
//   log|y_out| = d_j log t_j + log|a_d| + log(1 + xi),
//   |xi| <= (sum_{k<d}|a_k| t_j^k + |delta| t_j) / (|a_d| t_j^d),
// and the chain step error is |sum_j w_j log|a_d^{(j)}|| + sum_j w_j u_j with
// w_j the product of the later factor degrees and u_j = -log(1 - xi_j).
// The filtration radius construction guarantees xi_j < 1 for t_j >= R.
double theta_plus(const HenonChain& h, double R, double t) {
    const auto& fs = h.factors();
    const size_t m = fs.size();
    std::vector<double> weight(m, 1.0);
    for (size_t j = m; j-- > 1;) weight[j - 1] = weight[j] * fs[j].degree();

    double L = std::log(std::max(t, R));
    const double logR = std::log(R);
    double lead_sum = 0.0, err_sum = 0.0;
    for (size_t j = 0; j < m; ++j) {
        const auto& p = fs[j].p();
        const int d = p.degree();
        const double lead = std::abs(p.coeff(d));
        double xi = std::abs(fs[j].delta()) / lead * std::exp((1 - d) * L);
        for (int k = 0; k < d; ++k)
            xi += std::abs(p.coeff(k)) / lead * std::exp((k - d) * L);
        if (!(xi < 1.0)) return kInf;
        const double u = -std::log1p(-xi);
        lead_sum += weight[j] * std::log(lead);
        err_sum += weight[j] * u;
        L = std::max(d * L + std::log(lead) + std::log1p(-xi), logR);
    }
    return 2.0 * (std::abs(lead_sum) + err_sum);
}

// Backward analogue on V^- with |x| = t. The inverse factor sends the
// dominant coordinate through w = b^{-1}(x - c), so the per-factor error
// picks up d * |log(1 -+ |c|/t)| on top of the tail-coefficient term.
double theta_minus(const HenonChain& h, double R, double t) {
    const auto& fs = h.factors();
    const size_t m = fs.size();
    // The inverse applies factors m-1, m-2, ..., 0; position p carries the
    // product of the degrees of the factors applied after it.
    std::vector<double> wpos(m, 1.0);
    for (size_t p = m; p-- > 1;) wpos[p - 1] = wpos[p] * fs[m - 1 - p].degree();

    double L = std::log(std::max(t, R));
    const double logR = std::log(R);
    double lead_sum = 0.0, err_sum = 0.0;
    for (size_t p = 0; p < m; ++p) {
        const auto& f = fs[m - 1 - p];
        const auto& poly = f.p();
        const int d = poly.degree();
        const double lead = std::abs(poly.coeff(d));
        const double bmag = std::abs(f.b());
        const double dmag = std::abs(f.delta());
        const double cmag = std::abs(f.c());

        const double cfrac = cmag * std::exp(-L);
        if (!(cfrac < 1.0)) return kInf;
        const double v = -std::log1p(-cfrac);               // |log(1 - |c|/t)|
        const double w_lo_log = L + std::log1p(-cfrac) - std::log(bmag);
        const double w_hi_log = L + std::log1p(cfrac) - std::log(bmag);

        double eps = std::exp(L - std::log(lead) - d * w_lo_log);  // |y|/(|a_d| w^d)
        for (int k = 0; k < d; ++k)
            eps += std::abs(poly.coeff(k)) / lead * std::exp(k * w_hi_log - d * w_lo_log);
        if (!(eps < 1.0)) return kInf;

        const double lead_log = std::log(lead) - d * std::log(bmag) - std::log(dmag);
        const double u = d * v - std::log1p(-eps);
        lead_sum += wpos[p] * lead_log;
        err_sum += wpos[p] * u;
        L = std::max(d * w_lo_log + std::log(lead) - std::log(dmag) + std::log1p(-eps), logR);
    }
    return 2.0 * (std::abs(lead_sum) + err_sum);
}

double dominant_mag_sq(const kernels::OrbitOutcome& o, GreenSign sign) {
    const double m2x = o.x.real() * o.x.real() + o.x.imag() * o.x.imag();
    const double m2y = o.y.real() * o.y.real() + o.y.imag() * o.y.imag();
    if (sign == GreenSign::Plus) return std::max(m2y, m2x);
    return std::max(m2x, m2y);
}

GreenEstimate estimate_from_outcome(const GreenContext& ctx, const kernels::OrbitOutcome& o,
                                    GreenSign sign) {
    GreenEstimate e;
    e.iterations_used = o.steps;
    const bool escaped = o.first_entry >= 0 || o.reason == kernels::StopReason::Overflow;
    if (!escaped) return e;
    e.escaped = true;
    const double d = static_cast<double>(ctx.flat.degree);
    const double scale = std::pow(d, -static_cast<double>(o.steps));
    const double m2 = dominant_mag_sq(o, sign);
    e.value = 0.5 * std::log(m2) * scale;
    const double t = std::sqrt(m2);
    const double theta = sign == GreenSign::Plus ? step_distortion_plus(ctx, t)
                                                 : step_distortion_minus(ctx, t);
    e.error_bound = theta * scale / (d - 1.0);
    if (e.value < 0.0) e.value = 0.0;  // log+ of a sub-unit magnitude
    return e;
}

}  // namespace

GreenContext::GreenContext(const HenonChain& h)
    : chain(h), fr(filtration_radius(h)), flat(kernels::FlatChain::from(h, fr.R)) {}

double step_distortion_plus(const GreenContext& ctx, double t) {
    return theta_plus(ctx.chain, ctx.fr.R, t);
}

double step_distortion_minus(const GreenContext& ctx, double t) {
    return theta_minus(ctx.chain, ctx.fr.R, t);
}

double growth_constant_plus(const GreenContext& ctx) {
    const double d = static_cast<double>(ctx.flat.degree);
    return theta_plus(ctx.chain, ctx.fr.R, ctx.fr.R) / (d - 1.0);
}

double growth_constant_minus(const GreenContext& ctx) {
    const double d = static_cast<double>(ctx.flat.degree);
    return theta_minus(ctx.chain, ctx.fr.R, ctx.fr.R) / (d - 1.0);
}

GreenEstimate green(const GreenContext& ctx, Point2 z, GreenSign sign, int budget) {
    if (budget < 1) throw PreconditionViolated("green requires budget >= 1");
    kernels::OrbitParams params;
    params.budget = budget;
    params.backward = sign == GreenSign::Minus;
    params.stop_on_entry = false;
    kernels::OrbitOutcome o;
    kernels::select_orbit_kernel()(ctx.flat, &z, 1, params, &o);
    return estimate_from_outcome(ctx, o, sign);
}

GreenEstimate green(const HenonChain& h, Point2 z, GreenSign sign, int budget) {
    return green(GreenContext{h}, z, sign, budget);
}

GreenEstimate green_max(const GreenContext& ctx, Point2 z, int budget) {
    const GreenEstimate p = green(ctx, z, GreenSign::Plus, budget);
    const GreenEstimate m = green(ctx, z, GreenSign::Minus, budget);
    GreenEstimate r;
    r.value = std::max(p.value, m.value);
    r.escaped = p.escaped || m.escaped;
    r.iterations_used = p.iterations_used + m.iterations_used;
    if (p.escaped && m.escaped)
        r.error_bound = std::max(p.error_bound, m.error_bound);
    else if (p.escaped)
        r.error_bound = p.error_bound;
    else if (m.escaped)
        r.error_bound = m.error_bound;
    return r;
}

GreenEstimate green_max(const HenonChain& h, Point2 z, int budget) {
    return green_max(GreenContext{h}, z, budget);
}

std::string EscapeClass::describe() const {
    switch (kind) {
        case Kind::InKCandidate: return "in-K candidate (bounded both ways within budget)";
        case Kind::InKPlusCandidate: return "K+ candidate (backward escape at step " +
                                             std::to_string(backward_step) + ")";
        case Kind::InKMinusCandidate: return "K- candidate (forward escape at step " +
                                              std::to_string(forward_step) + ")";
        case Kind::EscapedForward: return "escaped forward at step " + std::to_string(forward_step);
        case Kind::EscapedBackward: return "escaped backward at step " +
                                            std::to_string(backward_step);
        case Kind::EscapedBoth: return "escaped forward at step " + std::to_string(forward_step) +
                                        " and backward at step " + std::to_string(backward_step);
    }
    return {};
}

EscapeClass classify_point(const GreenContext& ctx, Point2 z, int budget) {
    if (budget < 1) throw PreconditionViolated("classify_point requires budget >= 1");
    kernels::OrbitParams params;
    params.budget = budget;
    params.stop_on_entry = true;
    kernels::OrbitOutcome fo, bo;
    params.backward = false;
    kernels::select_orbit_kernel()(ctx.flat, &z, 1, params, &fo);
    params.backward = true;
    kernels::select_orbit_kernel()(ctx.flat, &z, 1, params, &bo);

    auto escape_step = [](const kernels::OrbitOutcome& o) -> int {
        if (o.first_entry >= 0) return o.first_entry;
        if (o.reason == kernels::StopReason::Overflow) return o.steps;
        return -1;
    };
    EscapeClass ec;
    ec.forward_step = escape_step(fo);
    ec.backward_step = escape_step(bo);
    const bool f = ec.forward_step >= 0, b = ec.backward_step >= 0;
    if (f && b)
        ec.kind = EscapeClass::Kind::EscapedBoth;
    else if (f)
        ec.kind = EscapeClass::Kind::EscapedForward;
    else if (b)
        ec.kind = EscapeClass::Kind::EscapedBackward;
    else
        ec.kind = EscapeClass::Kind::InKCandidate;
    return ec;
}

EscapeClass classify_point(const HenonChain& h, Point2 z, int budget) {
    return classify_point(GreenContext{h}, z, budget);
}

DominationReport verify_green_domination(const GreenContext& ctx, double r0, int samples,
                                         int budget, unsigned long long seed) {
    if (samples < 1) throw PreconditionViolated("verify_green_domination requires samples >= 1");
    if (!(r0 > ctx.fr.R))
        throw PreconditionViolated("verify_green_domination requires R0 > filtration R");

    DominationReport rep;
    rep.r0 = r0;
    rep.filtration_R = ctx.fr.R;
    rep.samples = samples;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 6.283185307179586;

    auto sample_region = [&](bool d2) {
        // D^2: |x| < R_H, |y| in (R0, 2 R0]; D^1 mirrors the coordinates.
        const double big = r0 * (1.0 + unit(rng));
        const double small = ctx.fr.R * 0.98 * unit(rng);
        const Complex zbig = std::polar(big, two_pi * unit(rng));
        const Complex zsmall = std::polar(small, two_pi * unit(rng));
        return d2 ? Point2{zsmall, zbig} : Point2{zbig, zsmall};
    };

    auto run_side = [&](bool d2, DominationReport::Side& side) {
        for (int i = 0; i < samples; ++i) {
            const Point2 z = sample_region(d2);
            const GreenEstimate gp = green(ctx, z, GreenSign::Plus, budget);
            const GreenEstimate gm = green(ctx, z, GreenSign::Minus, budget);
            // Claimed strict inequality: G^- < G^+ on D^2, G^+ < G^- on D^1.
            const GreenEstimate& lo = d2 ? gm : gp;
            const GreenEstimate& hi = d2 ? gp : gm;
            if (!lo.escaped || !hi.escaped) {
                side.inconclusive += 1;
                side.inconclusive_samples.push_back(i);
                continue;
            }
            const double margin = (hi.value - hi.error_bound) - (lo.value + lo.error_bound);
            if (margin > 0.0) {
                side.certified += 1;
                side.worst_margin = std::min(side.worst_margin, margin);
            } else if ((lo.value - lo.error_bound) - (hi.value + hi.error_bound) > 0.0) {
                side.certified_opposite += 1;
            } else {
                side.inconclusive += 1;
                side.inconclusive_samples.push_back(i);
            }
        }
    };
    run_side(true, rep.d2);
    run_side(false, rep.d1);
    return rep;
}

DominationReport verify_green_domination(const HenonChain& h, double r0, int samples, int budget,
                                         unsigned long long seed) {
    return verify_green_domination(GreenContext{h}, r0, samples, budget, seed);
}

}  // namespace henon
