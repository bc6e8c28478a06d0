#include "henon/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "henon/errors.hpp"

namespace henon {

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

Polynomial Polynomial::constant(Complex a) {
    return Polynomial{{a}};
}

Polynomial Polynomial::monomial(int k, Complex a) {
    std::vector<Complex> c(static_cast<size_t>(k) + 1, Complex{});
    c.back() = a;
    return Polynomial{std::move(c)};
}

void Polynomial::normalize() {
    double maxmag = 0.0;
    for (const Complex& a : c_) {
        if (!is_finite(a) || std::abs(a) > kCoeffOverflow)
            throw CoefficientOverflow("polynomial coefficient left the representable range");
        maxmag = std::max(maxmag, std::abs(a));
    }
    const double thresh = kCoeffTrimRel * maxmag;
    for (Complex& a : c_) {
        if (std::abs(a) <= thresh) a = Complex{};
    }
    while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

Complex Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Complex{};
    return c_[static_cast<size_t>(k)];
}

double Polynomial::max_coeff_mag() const {
    double m = 0.0;
    for (const Complex& a : c_) m = std::max(m, std::abs(a));
    return m;
}

Complex Polynomial::operator()(Complex y) const {
    if (c_.empty()) return Complex{};
    Complex acc = c_.back();
    for (size_t k = c_.size() - 1; k-- > 0;) acc = acc * y + c_[k];
    if (!is_finite(acc))
        throw CoefficientOverflow("polynomial evaluation overflowed");
    return acc;
}

Polynomial Polynomial::operator-() const {
    std::vector<Complex> c = c_;
    for (Complex& a : c) a = -a;
    return Polynomial{std::move(c)};
}

Polynomial Polynomial::scaled(Complex s) const {
    std::vector<Complex> c = c_;
    for (Complex& a : c) a *= s;
    return Polynomial{std::move(c)};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex{});
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial{std::move(c)};
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex{});
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return Polynomial{std::move(c)};
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex{});
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial{std::move(c)};
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    if (c_.empty()) return Polynomial{};
    Polynomial acc = Polynomial::constant(c_.back());
    for (size_t k = c_.size() - 1; k-- > 0;)
        acc = acc * inner + Polynomial::constant(c_[k]);
    return acc;
}

Polynomial Polynomial::shifted(Complex dy) const {
    return compose(Polynomial{{dy, Complex{1.0, 0.0}}});
}

Complex poly_eval(const Polynomial& p, Complex y) { return p(y); }

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial poly_compose(const Polynomial& outer, const Polynomial& inner) {
    return outer.compose(inner);
}

}  // namespace henon
