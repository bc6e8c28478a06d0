#pragma once

#include <map>
#include <utility>

#include "henon/complex_ops.hpp"
#include "henon/polynomial.hpp"

namespace henon {

// Sparse bivariate polynomial keyed by (x-exponent, y-exponent).
// Henon compositions are sparse in x, so a term map beats a dense grid.
// No stored term has coefficient exactly zero, and terms below the relative
// trim threshold are dropped after every operation.
class BivariatePolynomial {
public:
    using Key = std::pair<int, int>;

    BivariatePolynomial() = default;

    static BivariatePolynomial constant(Complex a);
    static BivariatePolynomial var_x();
    static BivariatePolynomial var_y();
    // p(y) lifted to a bivariate polynomial in y.
    static BivariatePolynomial from_poly_in_y(const Polynomial& p);

    bool is_zero() const { return t_.empty(); }
    int total_degree() const;  // -1 for zero
    Complex coeff(int i, int j) const;
    const std::map<Key, Complex>& terms() const { return t_; }
    double max_coeff_mag() const;

    Complex operator()(Complex x, Complex y) const;

    BivariatePolynomial operator-() const;
    BivariatePolynomial scaled(Complex s) const;

    friend BivariatePolynomial operator+(const BivariatePolynomial&, const BivariatePolynomial&);
    friend BivariatePolynomial operator-(const BivariatePolynomial&, const BivariatePolynomial&);
    friend BivariatePolynomial operator*(const BivariatePolynomial&, const BivariatePolynomial&);

    // Accumulates without normalizing; callers batch and then normalize.
    void add_term(int i, int j, Complex a);
    void normalize();

private:
    std::map<Key, Complex> t_;
};

struct Point2;

// A polynomial self-map of the plane: (x,y) -> (first(x,y), second(x,y)).
struct PolyMap2 {
    BivariatePolynomial first, second;

    static PolyMap2 identity();
    // C_eta(x,y) = (eta*x, eta^{-1}*y)
    static PolyMap2 twist(Complex eta);

    Complex eval_first(Complex x, Complex y) const { return first(x, y); }
    Complex eval_second(Complex x, Complex y) const { return second(x, y); }
};

// Full symbolic substitution: outer(inner(x,y)).
PolyMap2 map_compose(const PolyMap2& outer, const PolyMap2& inner);

// C_eta o m (cheap coordinate scaling).
PolyMap2 twist_left(Complex eta, const PolyMap2& m);
// m o C_eta (substitutes x -> eta*x, y -> eta^{-1}*y).
PolyMap2 twist_right(const PolyMap2& m, Complex eta);

struct MapEquality {
    bool equal = false;
    double residual = 0.0;  // max |coeff difference| over the union support
};

MapEquality map_equal_within(const PolyMap2& a, const PolyMap2& b, double tol);

}  // namespace henon
