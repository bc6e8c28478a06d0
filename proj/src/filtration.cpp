#include "henon/filtration.hpp"

#include <algorithm>
#include <cmath>

#include "henon/errors.hpp"

namespace henon {

namespace {

// Smallest r (by doubling from 1) with
//   |a_d| r^d > sum_{k<d} |a_k| r^k + |delta| r + |b| r + |c| + r.
// Every right-hand term has degree <= d-1 in r, so once the inequality holds
// at r >= 1 it holds for all t >= r; that makes the lower bound
// |p(y) - delta x| >= |a_d||y|^d - ... exceed max(|b y + c|, t) on all of
// {|y| = t >= r, |x| <= |y|}.
double forward_radius(const ElementaryFactor& f) {
    const int d = f.degree();
    const double lead = std::abs(f.p().coeff(d));
    double r = 1.0;
    for (int iter = 0; iter < 600; ++iter) {
        double rhs = std::abs(f.c()) + (std::abs(f.delta()) + std::abs(f.b()) + 1.0) * r;
        double rk = 1.0;
        for (int k = 0; k < d; ++k) {
            rhs += std::abs(f.p().coeff(k)) * rk;
            rk *= r;
        }
        const double lhs = lead * rk;  // rk == r^d now
        if (lhs > rhs) return r;
        r *= 2.0;
        if (r > 1e100) break;
    }
    throw SelfCheckFailed("forward filtration radius search diverged");
}

// Backward analogue for the inverse factor
//   (x,y) -> (delta^{-1}(p(b^{-1}(x - c)) - y), b^{-1}(x - c)).
// With s = |x| >= max(|y|, r), w_lo = (s-|c|)/|b| and w_hi = (s+|c|)/|b|,
// require |a_d| w_lo^d - sum_{k<d}|a_k| w_hi^k - s > |delta| max(w_hi, s).
// w_lo scales at least linearly and w_hi at most linearly in s, so the same
// degree argument extends the inequality to all t >= s.
double backward_radius(const ElementaryFactor& f) {
    const int d = f.degree();
    const double lead = std::abs(f.p().coeff(d));
    const double cmag = std::abs(f.c());
    const double bmag = std::abs(f.b());
    double s = std::max(1.0, 2.0 * cmag + 1.0);
    for (int iter = 0; iter < 600; ++iter) {
        const double w_lo = (s - cmag) / bmag;
        const double w_hi = (s + cmag) / bmag;
        double lhs = lead * std::pow(w_lo, d) - s;
        double wk = 1.0;
        for (int k = 0; k < d; ++k) {
            lhs -= std::abs(f.p().coeff(k)) * wk;
            wk *= w_hi;
        }
        const double rhs = std::abs(f.delta()) * std::max(w_hi, s);
        if (lhs > rhs) return s;
        s *= 2.0;
        if (s > 1e100) break;
    }
    throw SelfCheckFailed("backward filtration radius search diverged");
}

}  // namespace

FiltrationRadius filtration_radius(const HenonChain& h) {
    FiltrationRadius fr;
    fr.per_factor_R.reserve(h.factors().size());
    double R = 1.0;
    for (const auto& f : h.factors()) {
        const double rf = std::max(forward_radius(f), backward_radius(f));
        fr.per_factor_R.push_back(rf);
        R = std::max(R, rf);
    }
    fr.R = R;

    // Sampled invariance check: 64 points on each sector boundary shell, run
    // through every factor individually.
    const int kSamples = 64;
    for (int s = 0; s < kSamples; ++s) {
        const double arg_y = 6.283185307179586 * s / kSamples;
        const double arg_x = 6.283185307179586 * ((s * 7) % kSamples) / kSamples;
        const double ymag = R * (1.0 + 0.001 + (s % 4));
        const double xfrac = (s % 3) * 0.499;  // 0, .499, .998 of |y|
        Point2 zp{std::polar(xfrac * ymag, arg_x), std::polar(ymag, arg_y)};
        Point2 zm{std::polar(ymag, arg_y), std::polar(xfrac * ymag, arg_x)};
        for (const auto& f : h.factors()) {
            zp = factor_eval(f, zp, Direction::Forward);
            if (!in_v_plus(zp, R))
                throw SelfCheckFailed("forward invariance of V_R^+ failed at sample " +
                                      std::to_string(s));
            if (std::abs(zp.y) > 1e80) break;  // already deep inside the sector
        }
        const auto& fs = h.factors();
        for (size_t i = fs.size(); i-- > 0;) {
            zm = factor_eval(fs[i], zm, Direction::Inverse);
            if (!in_v_minus(zm, R))
                throw SelfCheckFailed("backward invariance of V_R^- failed at sample " +
                                      std::to_string(s));
            if (std::abs(zm.x) > 1e80) break;
        }
    }
    return fr;
}

}  // namespace henon
