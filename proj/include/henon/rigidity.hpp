#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henon/chain.hpp"

namespace henon {

// Detected twist eta with F o H = C_eta o H o F, C_eta(x,y) = (eta x, eta^{-1} y).
struct TwistCandidate {
    Complex eta{1.0, 0.0};
    double residual = 0.0;
    enum class Relation { FH_eq_Ceta_HF } relation = Relation::FH_eq_Ceta_HF;
};

// Expands both composition orders, proposes eta as the ratio of the
// largest-magnitude matching first-coordinate coefficients, and returns the
// candidate only when C_eta o H o F matches F o H within tol. Returns nullopt
// when the supports mismatch or no eta verifies.
std::optional<TwistCandidate> find_twist(const HenonChain& f, const HenonChain& h, double tol,
                                         int degree_cap = kDefaultExpansionCap);

struct CommuteResult {
    bool commute = false;
    double residual = 0.0;
};

CommuteResult check_commute(const HenonChain& f, const HenonChain& h, double tol,
                            int degree_cap = kDefaultExpansionCap);

// check_commute applied to the squared chains; the expansion cap applies to
// the degree (d_F d_H)^2.
CommuteResult verify_squares_commute(const HenonChain& f, const HenonChain& h, double tol,
                                     int degree_cap = kDefaultExpansionCap);

struct FixedPointSet {
    std::vector<Point2> points;      // canonically sorted, merged within 1e-6
    std::vector<double> residuals;   // |H^k(p) - p| per reported point
    int seeds_used = 0;
    int seeds_converged = 0;
};

// Solves H(z) = z (order 1) or H^2(z) = z (order 2) by damped Newton
// iteration from a deterministic seed lattice inside the radius-R bidisk;
// every reported point is re-verified by direct evaluation.
FixedPointSet fixed_points(const HenonChain& h, int order);

struct RigidityReport {
    std::optional<TwistCandidate> twist;
    std::optional<CommuteResult> commute_fh;
    std::optional<CommuteResult> commute_squares;
    std::string squares_status;  // "ok" or "not computed (cap): ..."
    Complex jacobian_f{}, jacobian_h{};
    std::string notes;

    std::string to_text() const;
};

RigidityReport rigidity_report(const HenonChain& f, const HenonChain& h, double tol,
                               int degree_cap = kDefaultExpansionCap);

}  // namespace henon
