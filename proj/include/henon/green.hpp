#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "henon/chain.hpp"
#include "henon/filtration.hpp"
#include "henon/kernels/orbit_kernel.hpp"

namespace henon {

enum class GreenSign { Plus, Minus };

// Estimate of G^+/G^-/G at a point. value = 0 exactly when the orbit stayed
// bounded within the budget (escaped = false), in which case the error bound
// is infinite: only escape is certifiable by finite computation.
struct GreenEstimate {
    double value = 0.0;
    double error_bound = std::numeric_limits<double>::infinity();
    int iterations_used = 0;
    bool escaped = false;
};

// Precomputed per-chain data shared by the estimators; building it once
// amortizes the filtration search over many point queries.
struct GreenContext {
    HenonChain chain;
    FiltrationRadius fr;
    kernels::FlatChain flat;

    explicit GreenContext(const HenonChain& h);
};

GreenEstimate green(const GreenContext& ctx, Point2 z, GreenSign sign, int budget);
GreenEstimate green(const HenonChain& h, Point2 z, GreenSign sign, int budget);

GreenEstimate green_max(const GreenContext& ctx, Point2 z, int budget);
GreenEstimate green_max(const HenonChain& h, Point2 z, int budget);

// Bound for one full-chain step distortion |log|y_{n+1}| - d log|y_n||
// valid on {z in V^+ : |y| >= t} (resp. V^- with x), derived from
// coefficient norms and inflated by 2.
double step_distortion_plus(const GreenContext& ctx, double t);
double step_distortion_minus(const GreenContext& ctx, double t);

// Finite constant bounding |G^+ - log|y|| on V_R^+ (and the minus analogue).
double growth_constant_plus(const GreenContext& ctx);
double growth_constant_minus(const GreenContext& ctx);

// Escape classification. Forward escape into V_R^+ is a certificate of
// z not lying in K^+; bounded-within-budget verdicts stay candidates.
struct EscapeClass {
    enum class Kind {
        InKCandidate,
        InKPlusCandidate,
        InKMinusCandidate,
        EscapedForward,
        EscapedBackward,
        EscapedBoth
    };
    Kind kind = Kind::InKCandidate;
    int forward_step = -1;   // certified forward escape step, or -1
    int backward_step = -1;  // certified backward escape step, or -1

    bool k_plus_candidate() const { return forward_step < 0; }
    bool k_minus_candidate() const { return backward_step < 0; }
    std::string describe() const;
};

EscapeClass classify_point(const GreenContext& ctx, Point2 z, int budget);
EscapeClass classify_point(const HenonChain& h, Point2 z, int budget);

// Numerical verification of the Green-function domination on the regions
// D^2(R0) = {|x| < R_H, |y| > R0} (expect G^- < G^+) and
// D^1(R0) = {|y| < R_H, |x| > R0} (expect G^+ < G^-).
struct DominationReport {
    struct Side {
        int certified = 0;           // claimed strict inequality certified
        int certified_opposite = 0;  // the reverse inequality certified
        int inconclusive = 0;        // error bounds overlap
        double worst_margin = std::numeric_limits<double>::infinity();
        std::vector<int> inconclusive_samples;
    };
    Side d2;  // G^- < G^+ on D^2(R0)
    Side d1;  // G^+ < G^- on D^1(R0)
    double r0 = 0.0;
    double filtration_R = 0.0;
    int samples = 0;

    bool all_certified() const {
        return d2.certified == samples && d1.certified == samples;
    }
};

DominationReport verify_green_domination(const GreenContext& ctx, double r0, int samples,
                                         int budget = 200, unsigned long long seed = 0);
DominationReport verify_green_domination(const HenonChain& h, double r0, int samples,
                                         int budget = 200, unsigned long long seed = 0);

}  // namespace henon
