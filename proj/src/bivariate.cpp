#include "henon/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "henon/errors.hpp"

namespace henon {

BivariatePolynomial BivariatePolynomial::constant(Complex a) {
    BivariatePolynomial p;
    p.add_term(0, 0, a);
    p.normalize();
    return p;
}

BivariatePolynomial BivariatePolynomial::var_x() {
    BivariatePolynomial p;
    p.add_term(1, 0, Complex{1.0, 0.0});
    return p;
}

BivariatePolynomial BivariatePolynomial::var_y() {
    BivariatePolynomial p;
    p.add_term(0, 1, Complex{1.0, 0.0});
    return p;
}

BivariatePolynomial BivariatePolynomial::from_poly_in_y(const Polynomial& p) {
    BivariatePolynomial q;
    for (int k = 0; k <= p.degree(); ++k) {
        Complex a = p.coeff(k);
        if (a != Complex{}) q.add_term(0, k, a);
    }
    q.normalize();
    return q;
}

void BivariatePolynomial::add_term(int i, int j, Complex a) {
    t_[{i, j}] += a;
}

void BivariatePolynomial::normalize() {
    double maxmag = 0.0;
    for (const auto& [k, a] : t_) {
        if (!is_finite(a) || std::abs(a) > kCoeffOverflow)
            throw CoefficientOverflow("bivariate coefficient left the representable range");
        maxmag = std::max(maxmag, std::abs(a));
    }
    const double thresh = kCoeffTrimRel * maxmag;
    for (auto it = t_.begin(); it != t_.end();) {
        if (std::abs(it->second) <= thresh)
            it = t_.erase(it);
        else
            ++it;
    }
}

int BivariatePolynomial::total_degree() const {
    int d = -1;
    for (const auto& [k, a] : t_) d = std::max(d, k.first + k.second);
    return d;
}

Complex BivariatePolynomial::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? Complex{} : it->second;
}

double BivariatePolynomial::max_coeff_mag() const {
    double m = 0.0;
    for (const auto& [k, a] : t_) m = std::max(m, std::abs(a));
    return m;
}

Complex BivariatePolynomial::operator()(Complex x, Complex y) const {
    int max_i = 0, max_j = 0;
    for (const auto& [k, a] : t_) {
        max_i = std::max(max_i, k.first);
        max_j = std::max(max_j, k.second);
    }
    std::vector<Complex> xp(static_cast<size_t>(max_i) + 1), yp(static_cast<size_t>(max_j) + 1);
    xp[0] = Complex{1.0, 0.0};
    for (int i = 1; i <= max_i; ++i) xp[static_cast<size_t>(i)] = xp[static_cast<size_t>(i - 1)] * x;
    yp[0] = Complex{1.0, 0.0};
    for (int j = 1; j <= max_j; ++j) yp[static_cast<size_t>(j)] = yp[static_cast<size_t>(j - 1)] * y;
    Complex acc{};
    for (const auto& [k, a] : t_) acc += a * xp[static_cast<size_t>(k.first)] * yp[static_cast<size_t>(k.second)];
    return acc;
}

BivariatePolynomial BivariatePolynomial::operator-() const {
    BivariatePolynomial r = *this;
    for (auto& [k, a] : r.t_) a = -a;
    return r;
}

BivariatePolynomial BivariatePolynomial::scaled(Complex s) const {
    BivariatePolynomial r = *this;
    for (auto& [k, a] : r.t_) a *= s;
    r.normalize();
    return r;
}

BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r = a;
    for (const auto& [k, v] : b.t_) r.t_[k] += v;
    r.normalize();
    return r;
}

BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r = a;
    for (const auto& [k, v] : b.t_) r.t_[k] -= v;
    r.normalize();
    return r;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r;
    for (const auto& [ka, va] : a.t_)
        for (const auto& [kb, vb] : b.t_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
    r.normalize();
    return r;
}

PolyMap2 PolyMap2::identity() {
    return {BivariatePolynomial::var_x(), BivariatePolynomial::var_y()};
}

PolyMap2 PolyMap2::twist(Complex eta) {
    return {BivariatePolynomial::var_x().scaled(eta),
            BivariatePolynomial::var_y().scaled(Complex{1.0, 0.0} / eta)};
}

PolyMap2 map_compose(const PolyMap2& outer, const PolyMap2& inner) {
    int max_i = 0, max_j = 0;
    for (const BivariatePolynomial* p : {&outer.first, &outer.second})
        for (const auto& [k, a] : p->terms()) {
            max_i = std::max(max_i, k.first);
            max_j = std::max(max_j, k.second);
        }
    // Cached powers of the inner coordinate polynomials.
    std::vector<BivariatePolynomial> fp(static_cast<size_t>(max_i) + 1),
        sp(static_cast<size_t>(max_j) + 1);
    fp[0] = BivariatePolynomial::constant(Complex{1.0, 0.0});
    for (int i = 1; i <= max_i; ++i) fp[static_cast<size_t>(i)] = fp[static_cast<size_t>(i - 1)] * inner.first;
    sp[0] = BivariatePolynomial::constant(Complex{1.0, 0.0});
    for (int j = 1; j <= max_j; ++j) sp[static_cast<size_t>(j)] = sp[static_cast<size_t>(j - 1)] * inner.second;

    auto substitute = [&](const BivariatePolynomial& p) {
        BivariatePolynomial acc;
        for (const auto& [k, a] : p.terms()) {
            BivariatePolynomial term = fp[static_cast<size_t>(k.first)] * sp[static_cast<size_t>(k.second)];
            for (const auto& [tk, tv] : term.terms()) acc.add_term(tk.first, tk.second, a * tv);
        }
        acc.normalize();
        return acc;
    };
    return {substitute(outer.first), substitute(outer.second)};
}

PolyMap2 twist_left(Complex eta, const PolyMap2& m) {
    return {m.first.scaled(eta), m.second.scaled(Complex{1.0, 0.0} / eta)};
}

PolyMap2 twist_right(const PolyMap2& m, Complex eta) {
    const Complex etainv = Complex{1.0, 0.0} / eta;
    auto substitute = [&](const BivariatePolynomial& p) {
        BivariatePolynomial r;
        for (const auto& [k, a] : p.terms())
            r.add_term(k.first, k.second, a * pow_int(eta, k.first) * pow_int(etainv, k.second));
        r.normalize();
        return r;
    };
    return {substitute(m.first), substitute(m.second)};
}

MapEquality map_equal_within(const PolyMap2& a, const PolyMap2& b, double tol) {
    auto residual_of = [](const BivariatePolynomial& p, const BivariatePolynomial& q) {
        double r = 0.0;
        for (const auto& [k, v] : p.terms()) r = std::max(r, std::abs(v - q.coeff(k.first, k.second)));
        for (const auto& [k, v] : q.terms()) r = std::max(r, std::abs(v - p.coeff(k.first, k.second)));
        return r;
    };
    const double r = std::max(residual_of(a.first, b.first), residual_of(a.second, b.second));
    return {r <= tol, r};
}

}  // namespace henon
