#include "henon/chain.hpp"

#include <cmath>
#include <cstdlib>

#include "henon/errors.hpp"

namespace henon {

namespace {

// Orbit evaluation runs in extended precision so that inverse round-trips
// survive the cancellation in p(w) - y at large intermediate magnitudes.
using LComplex = std::complex<long double>;

LComplex widen(Complex z) { return {z.real(), z.imag()}; }
Complex narrow(LComplex z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

LComplex horner_ld(const Polynomial& p, LComplex y) {
    const auto& c = p.coeffs();
    if (c.empty()) return {};
    LComplex acc = widen(c.back());
    for (size_t k = c.size() - 1; k-- > 0;) acc = acc * y + widen(c[k]);
    return acc;
}

struct LPoint {
    LComplex x, y;
};

LPoint factor_forward_ld(const ElementaryFactor& f, LPoint z) {
    return {widen(f.b()) * z.y + widen(f.c()), horner_ld(f.p(), z.y) - widen(f.delta()) * z.x};
}

LPoint factor_inverse_ld(const ElementaryFactor& f, LPoint z) {
    const LComplex w = (z.x - widen(f.c())) / widen(f.b());
    return {(horner_ld(f.p(), w) - z.y) / widen(f.delta()), w};
}

bool past_sentinel(LPoint z) {
    const long double s = kOverflowSentinel;
    const long double ax = std::abs(z.x), ay = std::abs(z.y);
    return !(ax <= s) || !(ay <= s);
}

}  // namespace

ElementaryFactor::ElementaryFactor(Complex b, Complex c, Complex delta, Polynomial p)
    : b_(b), c_(c), delta_(delta), p_(std::move(p)) {
    if (b_ == Complex{} || delta_ == Complex{})
        throw ValidationError("elementary factor requires b != 0 and delta != 0");
    if (!is_finite(b_) || !is_finite(c_) || !is_finite(delta_))
        throw ValidationError("elementary factor parameters must be finite");
    if (p_.degree() < 2)
        throw ValidationError("elementary factor requires deg(p) >= 2");
}

Point2 factor_eval(const ElementaryFactor& f, Point2 z, Direction dir) {
    LPoint lz{widen(z.x), widen(z.y)};
    LPoint out = dir == Direction::Forward ? factor_forward_ld(f, lz) : factor_inverse_ld(f, lz);
    return {narrow(out.x), narrow(out.y)};
}

HenonChain::HenonChain(std::vector<ElementaryFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ValidationError("a chain needs at least one factor");
}

long HenonChain::degree() const {
    long d = 1;
    for (const auto& f : factors_) d *= f.degree();
    return d;
}

Complex HenonChain::jacobian_det() const {
    Complex det{1.0, 0.0};
    for (const auto& f : factors_) det *= f.b() * f.delta();
    return det;
}

HenonChain compose_chains(const HenonChain& outer, const HenonChain& inner) {
    std::vector<ElementaryFactor> fs = inner.factors();
    fs.insert(fs.end(), outer.factors().begin(), outer.factors().end());
    return HenonChain{std::move(fs)};
}

HenonChain chain_power(const HenonChain& h, int k) {
    if (k < 1) throw PreconditionViolated("chain_power requires k >= 1");
    HenonChain r = h;
    for (int i = 1; i < k; ++i) r = compose_chains(r, h);
    return r;
}

long chain_degree(const HenonChain& h) { return h.degree(); }
Complex chain_jacobian_det(const HenonChain& h) { return h.jacobian_det(); }

OrbitResult chain_eval(const HenonChain& h, Point2 z, long n) {
    const bool backward = n < 0;
    const long steps = std::labs(n);
    LPoint cur{widen(z.x), widen(z.y)};
    if (past_sentinel(cur)) return {z, 0, 1};
    for (long k = 1; k <= steps; ++k) {
        LPoint next = cur;
        bool blown = false;
        if (!backward) {
            for (const auto& f : h.factors()) {
                next = factor_forward_ld(f, next);
                if (past_sentinel(next)) {
                    blown = true;
                    break;
                }
            }
        } else {
            const auto& fs = h.factors();
            for (size_t i = fs.size(); i-- > 0;) {
                next = factor_inverse_ld(fs[i], next);
                if (past_sentinel(next)) {
                    blown = true;
                    break;
                }
            }
        }
        if (blown) return {{narrow(cur.x), narrow(cur.y)}, k - 1, k};
        cur = next;
    }
    return {{narrow(cur.x), narrow(cur.y)}, steps, -1};
}

Point2 chain_eval_strict(const HenonChain& h, Point2 z, long n) {
    OrbitResult r = chain_eval(h, z, n);
    if (r.overflowed())
        throw CoefficientOverflow("orbit escaped to numerical infinity at step " +
                                  std::to_string(r.escaped_at));
    return r.point;
}

PolyMap2 chain_expand(const HenonChain& h, int degree_cap) {
    const long d = h.degree();
    if (d > degree_cap)
        throw ExpansionTooLarge("chain degree " + std::to_string(d) + " exceeds expansion cap " +
                                    std::to_string(degree_cap),
                                d);
    PolyMap2 m = PolyMap2::identity();
    for (const auto& f : h.factors()) {
        // first' = b * second + c ; second' = p(second) - delta * first
        BivariatePolynomial nf =
            m.second.scaled(f.b()) + BivariatePolynomial::constant(f.c());
        const auto& coeffs = f.p().coeffs();
        BivariatePolynomial ps = BivariatePolynomial::constant(coeffs.back());
        for (size_t k = coeffs.size() - 1; k-- > 0;)
            ps = ps * m.second + BivariatePolynomial::constant(coeffs[k]);
        BivariatePolynomial ns = ps - m.first.scaled(f.delta());
        m = {std::move(nf), std::move(ns)};
    }
    return m;
}

HenonChain conjugate_by_translation(const HenonChain& h, Point2 p) {
    std::vector<ElementaryFactor> fs = h.factors();
    // Input side: fold H_1 o A_p into the first factor.
    {
        const ElementaryFactor& f = fs.front();
        Complex c = f.c() + f.b() * p.y;
        Polynomial q = f.p().shifted(p.y) - Polynomial::constant(f.delta() * p.x);
        fs.front() = ElementaryFactor{f.b(), c, f.delta(), std::move(q)};
    }
    // Output side: fold A_p^{-1} o H_m into the last factor.
    {
        const ElementaryFactor& f = fs.back();
        Complex c = f.c() - p.x;
        Polynomial q = f.p() - Polynomial::constant(p.y);
        fs.back() = ElementaryFactor{f.b(), c, f.delta(), std::move(q)};
    }
    return HenonChain{std::move(fs)};
}

}  // namespace henon
