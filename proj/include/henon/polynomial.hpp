#pragma once

#include <vector>

#include "henon/complex_ops.hpp"

namespace henon {

// Univariate polynomial with complex coefficients, stored densely in
// ascending degree. Kept in canonical trimmed form: the leading stored
// coefficient is nonzero unless the polynomial is identically zero, and
// coefficients below kCoeffTrimRel relative to the largest one are zeroed
// after every operation.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex a);
    static Polynomial monomial(int k, Complex a = Complex{1.0, 0.0});

    bool is_zero() const { return c_.empty(); }
    // Index of the last stored coefficient; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Complex coeff(int k) const;
    const std::vector<Complex>& coeffs() const { return c_; }
    double max_coeff_mag() const;

    // Horner evaluation.
    Complex operator()(Complex y) const;

    Polynomial operator-() const;
    Polynomial scaled(Complex s) const;
    // this(inner(y))
    Polynomial compose(const Polynomial& inner) const;
    // this(y + dy)
    Polynomial shifted(Complex dy) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial&) const = default;

private:
    std::vector<Complex> c_;
    void normalize();
};

// Spec-facing free functions.
Complex poly_eval(const Polynomial& p, Complex y);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_compose(const Polynomial& outer, const Polynomial& inner);

}  // namespace henon
