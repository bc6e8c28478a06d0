#pragma once

#include <utility>
#include <vector>

#include "henon/chain.hpp"

namespace henon {

// A factor already in normal form: (x,y) -> (y, p(y) - delta*x).
struct NormalFactor {
    Polynomial p;
    Complex delta;
    ElementaryFactor factor() const { return {Complex{1.0, 0.0}, Complex{}, delta, p}; }
};

// Rewrites a consecutive pair so both factors become normal while the pair's
// composition is unchanged:
//   p~_i    = b_{i+1} p_i + c_{i+1},                 delta~_i    = b_{i+1} delta_i
//   p~_{i+1}= p_{i+1}(b_{i+1}^{-1}(y - c_{i+1})) - delta_{i+1} c_i,
//                                                    delta~_{i+1}= delta_{i+1} b_i
std::pair<NormalFactor, NormalFactor> pair_normalize(const ElementaryFactor& f_i,
                                                     const ElementaryFactor& f_next);

// Normal form of H^2: the 2m-factor chain of H o H rewritten pairwise.
HenonChain square_normal_form(const HenonChain& h);

// Normal form of a chain whose factors all have c = 0 (m >= 2), obtained by
// peeling the last factor and absorbing its b into the previous one.
HenonChain chain_normalize_b_only(const HenonChain& h);

// Representation of a chain fixing the origin with every c_i = 0 and
// p_i(0) = 0; b_i stay arbitrary.
HenonChain origin_fixed_form(const HenonChain& h);

// eta * p(eta*y) == p(y), i.e. eta^{k+1} = 1 for every nonzero coefficient
// index k. Requires |eta| = 1 up to 1e-9.
bool twist_symmetry_check(const Polynomial& p, Complex eta, double tol = kDefaultTol);

// The group {eta : eta^g = 1} of admissible twists of a chain, where g is the
// gcd of (k+1) over all significant coefficient indices of all factors.
struct TwistGroup {
    Complex generator{1.0, 0.0};
    int order = 1;
    std::vector<Complex> elements() const;

    // Coefficients whose magnitude fell below the trim threshold and were
    // excluded from the gcd, kept for auditability of the discrete answer.
    struct ZeroedCoeff {
        int factor_index;
        int coeff_index;
        double magnitude;
    };
    std::vector<ZeroedCoeff> treated_as_zero;
};

TwistGroup admissible_twist_group(const HenonChain& h);

}  // namespace henon
