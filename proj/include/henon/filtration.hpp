#pragma once

#include <vector>

#include "henon/chain.hpp"

namespace henon {

// Radius R for which V_R^+ = {|y| > max(|x|, R)} is forward invariant and
// V_R^- = {|x| > max(|y|, R)} is backward invariant, factor by factor.
struct FiltrationRadius {
    double R = 1.0;
    std::vector<double> per_factor_R;
};

// Computes per-factor radii from coefficient norms by doubling search, takes
// the max, and self-checks by mapping sampled boundary points of V_R^+
// forward (and of V_R^- under the inverses) and asserting containment.
// Throws SelfCheckFailed when the sampled invariance fails.
FiltrationRadius filtration_radius(const HenonChain& h);

inline bool in_v_plus(Point2 z, double R) {
    const double ax = std::abs(z.x), ay = std::abs(z.y);
    return ay > ax && ay > R;
}

inline bool in_v_minus(Point2 z, double R) {
    const double ax = std::abs(z.x), ay = std::abs(z.y);
    return ax > ay && ax > R;
}

}  // namespace henon
