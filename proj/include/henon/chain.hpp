#pragma once

#include <vector>

#include "henon/bivariate.hpp"
#include "henon/complex_ops.hpp"
#include "henon/polynomial.hpp"

namespace henon {

struct Point2 {
    Complex x{}, y{};
};

inline double point_norm(const Point2& z) {
    return std::hypot(std::abs(z.x), std::abs(z.y));
}

// One elementary factor (x,y) -> (b*y + c, p(y) - delta*x) with
// b*delta != 0 and deg(p) >= 2.
class ElementaryFactor {
public:
    ElementaryFactor(Complex b, Complex c, Complex delta, Polynomial p);

    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex delta() const { return delta_; }
    const Polynomial& p() const { return p_; }
    int degree() const { return p_.degree(); }
    bool is_normal() const { return b_ == Complex{1.0, 0.0} && c_ == Complex{}; }

private:
    Complex b_, c_, delta_;
    Polynomial p_;
};

enum class Direction { Forward, Inverse };

Point2 factor_eval(const ElementaryFactor& f, Point2 z, Direction dir);

// An ordered composition H = H_m o ... o H_1, stored first-applied-first.
class HenonChain {
public:
    explicit HenonChain(std::vector<ElementaryFactor> factors);

    const std::vector<ElementaryFactor>& factors() const { return factors_; }
    int size() const { return static_cast<int>(factors_.size()); }
    long degree() const;         // product of factor degrees
    Complex jacobian_det() const;  // product of b_j * delta_j (constant Jacobian)

private:
    std::vector<ElementaryFactor> factors_;
};

// outer o inner as one chain.
HenonChain compose_chains(const HenonChain& outer, const HenonChain& inner);
HenonChain chain_power(const HenonChain& h, int k);

long chain_degree(const HenonChain& h);
Complex chain_jacobian_det(const HenonChain& h);

// Result of iterating a chain. If a coordinate magnitude crosses the
// overflow sentinel at application k (1-based), the orbit is reported as
// escaped to numerical infinity at that step and `point` holds the last
// finite state (after steps_completed applications).
struct OrbitResult {
    Point2 point{};
    long steps_completed = 0;
    long escaped_at = -1;
    bool overflowed() const { return escaped_at >= 0; }
};

// Applies H n times; negative n iterates the inverse.
OrbitResult chain_eval(const HenonChain& h, Point2 z, long n);
// Same, but throws CoefficientOverflow on sentinel escape.
Point2 chain_eval_strict(const HenonChain& h, Point2 z, long n);

// Symbolic expansion to a PolyMap2. Throws ExpansionTooLarge when the chain
// degree exceeds the cap.
PolyMap2 chain_expand(const HenonChain& h, int degree_cap = kDefaultExpansionCap);

// A_p^{-1} o H o A_p for the translation A_p(z) = z + p, re-expressed as a
// valid chain by absorbing the translations into the first and last factors.
HenonChain conjugate_by_translation(const HenonChain& h, Point2 p);

}  // namespace henon
