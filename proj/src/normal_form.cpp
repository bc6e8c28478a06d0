#include "henon/normal_form.hpp"

#include <cmath>
#include <numeric>

#include "henon/errors.hpp"

namespace henon {

std::pair<NormalFactor, NormalFactor> pair_normalize(const ElementaryFactor& f_i,
                                                     const ElementaryFactor& f_next) {
    const Complex one{1.0, 0.0};
    NormalFactor lo{f_i.p().scaled(f_next.b()) + Polynomial::constant(f_next.c()),
                    f_next.b() * f_i.delta()};
    // y -> b_{i+1}^{-1} (y - c_{i+1})
    Polynomial lin{{-f_next.c() / f_next.b(), one / f_next.b()}};
    NormalFactor hi{f_next.p().compose(lin) - Polynomial::constant(f_next.delta() * f_i.c()),
                    f_next.delta() * f_i.b()};
    return {std::move(lo), std::move(hi)};
}

HenonChain square_normal_form(const HenonChain& h) {
    const HenonChain sq = compose_chains(h, h);
    const auto& fs = sq.factors();
    std::vector<ElementaryFactor> out;
    out.reserve(fs.size());
    for (size_t t = 0; t + 1 < fs.size(); t += 2) {
        auto [lo, hi] = pair_normalize(fs[t], fs[t + 1]);
        out.push_back(lo.factor());
        out.push_back(hi.factor());
    }
    return HenonChain{std::move(out)};
}

HenonChain chain_normalize_b_only(const HenonChain& h) {
    const auto& fs = h.factors();
    const int m = h.size();
    if (m < 2) throw PreconditionViolated("chain_normalize_b_only requires m >= 2");
    for (int i = 0; i < m; ++i)
        if (std::abs(fs[static_cast<size_t>(i)].c()) > 1e-12)
            throw PreconditionViolated("chain_normalize_b_only requires c = 0 in factor " +
                                       std::to_string(i));

    struct Work {
        Complex b, delta;
        Polynomial p;
    };
    std::vector<Work> w;
    w.reserve(static_cast<size_t>(m));
    for (const auto& f : fs) w.push_back({f.b(), f.delta(), f.p()});

    const Complex one{1.0, 0.0};
    std::vector<NormalFactor> out(static_cast<size_t>(m));
    // Peel the last factor: it becomes (y, p(b^{-1} y) - delta x) and its b
    // multiplies the previous factor's p and delta.
    for (int i = m - 1; i >= 2; --i) {
        const Work& last = w[static_cast<size_t>(i)];
        Polynomial lin{{Complex{}, one / last.b}};
        out[static_cast<size_t>(i)] = {last.p.compose(lin), last.delta};
        Work& prev = w[static_cast<size_t>(i - 1)];
        prev.p = prev.p.scaled(last.b);
        prev.delta *= last.b;
    }
    ElementaryFactor g0{w[0].b, Complex{}, w[0].delta, w[0].p};
    ElementaryFactor g1{w[1].b, Complex{}, w[1].delta, w[1].p};
    auto [n0, n1] = pair_normalize(g0, g1);
    out[0] = n0;
    out[1] = n1;

    std::vector<ElementaryFactor> res;
    res.reserve(out.size());
    for (const auto& nf : out) res.push_back(nf.factor());
    return HenonChain{std::move(res)};
}

HenonChain origin_fixed_form(const HenonChain& h) {
    const Point2 at0 = chain_eval_strict(h, Point2{}, 1);
    if (point_norm(at0) > 1e-9)
        throw PreconditionViolated("origin_fixed_form requires H(0) = 0");

    struct Work {
        Complex b, c, delta;
        Polynomial p;
    };
    std::vector<Work> w;
    for (const auto& f : h.factors()) w.push_back({f.b(), f.c(), f.delta(), f.p()});

    std::vector<ElementaryFactor> out;
    out.reserve(w.size());
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        Work& f = w[i];
        const Complex p0 = f.p(Complex{});
        out.emplace_back(f.b, Complex{}, f.delta, f.p - Polynomial::constant(p0));
        // The leftover translation A(x,y) = (x + c_i, y + p_i(0)) folds into
        // the next factor.
        Work& g = w[i + 1];
        g.p = g.p.shifted(p0) - Polynomial::constant(g.delta * f.c);
        g.c = g.c + g.b * p0;
    }
    // The residual single factor fixes the origin up to roundoff, so its c
    // and constant term are dust.
    Work& last = w.back();
    const Complex p0 = last.p(Complex{});
    if (std::abs(last.c) > 1e-7 || std::abs(p0) > 1e-7)
        throw PreconditionViolated("origin_fixed_form: residual factor does not fix the origin");
    out.emplace_back(last.b, Complex{}, last.delta, last.p - Polynomial::constant(p0));
    return HenonChain{std::move(out)};
}

bool twist_symmetry_check(const Polynomial& p, Complex eta, double tol) {
    if (std::abs(std::abs(eta) - 1.0) > 1e-9)
        throw PreconditionViolated("twist_symmetry_check requires |eta| = 1");
    const double thresh = kCoeffTrimRel * p.max_coeff_mag();
    for (int k = 0; k <= p.degree(); ++k) {
        if (std::abs(p.coeff(k)) <= thresh) continue;
        if (std::abs(pow_int(eta, k + 1) - Complex{1.0, 0.0}) > tol) return false;
    }
    return true;
}

std::vector<Complex> TwistGroup::elements() const {
    std::vector<Complex> e;
    e.reserve(static_cast<size_t>(order));
    for (int k = 0; k < order; ++k) e.push_back(unit_root(k, order));
    return e;
}

TwistGroup admissible_twist_group(const HenonChain& h) {
    TwistGroup g;
    long acc = 0;
    int idx = 0;
    for (const auto& f : h.factors()) {
        if (std::abs(f.c()) > 1e-12)
            throw PreconditionViolated("admissible_twist_group requires c = 0 in factor " +
                                       std::to_string(idx));
        if (std::abs(f.p()(Complex{})) > 1e-10)
            throw PreconditionViolated("admissible_twist_group requires p(0) = 0 in factor " +
                                       std::to_string(idx));
        const double thresh = kCoeffTrimRel * f.p().max_coeff_mag();
        for (int k = 0; k <= f.p().degree(); ++k) {
            const double mag = std::abs(f.p().coeff(k));
            if (mag == 0.0) continue;
            if (mag <= thresh) {
                g.treated_as_zero.push_back({idx, k, mag});
                continue;
            }
            acc = std::gcd(acc, static_cast<long>(k) + 1);
        }
        ++idx;
    }
    if (acc == 0) acc = 1;
    g.order = static_cast<int>(acc);
    g.generator = unit_root(1, acc);
    return g;
}

}  // namespace henon
