#include "henon/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "henon/errors.hpp"
#include "henon/filtration.hpp"

namespace henon {

namespace {

std::string fmt_complex(Complex z) {
    std::ostringstream ss;
    ss.precision(12);
    ss << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return ss.str();
}

struct ArgmaxTerm {
    int i = 0, j = 0;
    Complex coeff{};
    bool found = false;
};

ArgmaxTerm argmax_term(const BivariatePolynomial& p) {
    ArgmaxTerm best;
    double mag = -1.0;
    for (const auto& [k, a] : p.terms()) {
        if (std::abs(a) > mag) {
            mag = std::abs(a);
            best = {k.first, k.second, a, true};
        }
    }
    return best;
}

}  // namespace

std::optional<TwistCandidate> find_twist(const HenonChain& f, const HenonChain& h, double tol,
                                         int degree_cap) {
    const PolyMap2 e_fh = chain_expand(compose_chains(f, h), degree_cap);
    const PolyMap2 e_hf = chain_expand(compose_chains(h, f), degree_cap);

    const ArgmaxTerm t1 = argmax_term(e_hf.first);
    if (!t1.found) return std::nullopt;
    const Complex c_fh = e_fh.first.coeff(t1.i, t1.j);
    if (std::abs(c_fh) <= tol) return std::nullopt;  // support mismatch
    const Complex eta = c_fh / t1.coeff;

    const MapEquality eq = map_equal_within(e_fh, twist_left(eta, e_hf), tol);
    if (!eq.equal) return std::nullopt;
    return TwistCandidate{eta, eq.residual, TwistCandidate::Relation::FH_eq_Ceta_HF};
}

CommuteResult check_commute(const HenonChain& f, const HenonChain& h, double tol,
                            int degree_cap) {
    const PolyMap2 e_fh = chain_expand(compose_chains(f, h), degree_cap);
    const PolyMap2 e_hf = chain_expand(compose_chains(h, f), degree_cap);
    const MapEquality eq = map_equal_within(e_fh, e_hf, tol);
    return {eq.equal, eq.residual};
}

CommuteResult verify_squares_commute(const HenonChain& f, const HenonChain& h, double tol,
                                     int degree_cap) {
    return check_commute(chain_power(f, 2), chain_power(h, 2), tol, degree_cap);
}

namespace {

// Damped Newton iteration on g(z) = map(z) - z with a finite-difference
// Jacobian. Returns the converged point or nullopt.
std::optional<Point2> newton_fixed_point(const HenonChain& map, Point2 seed) {
    auto eval_g = [&](Point2 z) -> std::optional<Point2> {
        OrbitResult r = chain_eval(map, z, 1);
        if (r.overflowed()) return std::nullopt;
        return Point2{r.point.x - z.x, r.point.y - z.y};
    };
    auto res_norm = [](const Point2& g) { return std::hypot(std::abs(g.x), std::abs(g.y)); };

    Point2 z = seed;
    auto g = eval_g(z);
    if (!g) return std::nullopt;
    double res = res_norm(*g);

    for (int iter = 0; iter < 60; ++iter) {
        const double zscale = 1.0 + point_norm(z);
        if (res <= 1e-12 * zscale) return z;

        const double hstep = 1e-7 * zscale;
        auto gxp = eval_g({z.x + hstep, z.y});
        auto gxm = eval_g({z.x - hstep, z.y});
        auto gyp = eval_g({z.x, z.y + hstep});
        auto gym = eval_g({z.x, z.y - hstep});
        if (!gxp || !gxm || !gyp || !gym) return std::nullopt;
        const Complex j11 = (gxp->x - gxm->x) / (2.0 * hstep);
        const Complex j21 = (gxp->y - gxm->y) / (2.0 * hstep);
        const Complex j12 = (gyp->x - gym->x) / (2.0 * hstep);
        const Complex j22 = (gyp->y - gym->y) / (2.0 * hstep);
        const Complex det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-14 * (std::abs(j11 * j22) + std::abs(j12 * j21) + 1e-300))
            return std::nullopt;
        const Complex dx = (g->x * j22 - j12 * g->y) / det;
        const Complex dy = (j11 * g->y - g->x * j21) / det;

        double lambda = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 25; ++halving) {
            Point2 trial{z.x - lambda * dx, z.y - lambda * dy};
            auto gt = eval_g(trial);
            if (gt) {
                const double rt = res_norm(*gt);
                if (rt < res) {
                    z = trial;
                    g = gt;
                    res = rt;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!improved) return std::nullopt;
    }
    return res <= 1e-10 * (1.0 + point_norm(z)) ? std::optional<Point2>{z} : std::nullopt;
}

}  // namespace

FixedPointSet fixed_points(const HenonChain& h, int order) {
    if (order != 1 && order != 2) throw PreconditionViolated("fixed_points order must be 1 or 2");
    const HenonChain map = order == 1 ? h : chain_power(h, 2);
    const double R = filtration_radius(h).R;

    // 17x17 lattice per axis times the four real/imaginary placements; fixed
    // points of both orders live in the radius-R bidisk.
    std::set<std::pair<std::pair<double, double>, std::pair<double, double>>> seen;
    std::vector<Point2> seeds;
    const int kGrid = 17;
    for (int a = 0; a < kGrid; ++a) {
        const double u = -R + 2.0 * R * a / (kGrid - 1);
        for (int b = 0; b < kGrid; ++b) {
            const double v = -R + 2.0 * R * b / (kGrid - 1);
            const Complex reu{u, 0.0}, imu{0.0, u}, rev{v, 0.0}, imv{0.0, v};
            for (const Complex& sx : {reu, imu}) {
                for (const Complex& sy : {rev, imv}) {
                    if (seen.insert({{sx.real(), sx.imag()}, {sy.real(), sy.imag()}}).second)
                        seeds.push_back({sx, sy});
                }
            }
        }
    }

    std::vector<Point2> found;
    int converged = 0;
    for (const Point2& s : seeds) {
        auto z = newton_fixed_point(map, s);
        if (!z) continue;
        ++converged;
        found.push_back(*z);
    }

    auto canon_less = [](const Point2& a, const Point2& b) {
        if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
        if (a.x.imag() != b.x.imag()) return a.x.imag() < b.x.imag();
        if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
        return a.y.imag() < b.y.imag();
    };
    std::sort(found.begin(), found.end(), canon_less);

    const double kMergeRadius = 1e-6;
    FixedPointSet out;
    out.seeds_used = static_cast<int>(seeds.size());
    out.seeds_converged = converged;
    for (const Point2& z : found) {
        bool dup = false;
        for (const Point2& kept : out.points) {
            if (std::hypot(std::abs(z.x - kept.x), std::abs(z.y - kept.y)) <= kMergeRadius) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        // Independent re-verification by direct evaluation.
        const Point2 img = chain_eval_strict(map, z, 1);
        const double res = std::hypot(std::abs(img.x - z.x), std::abs(img.y - z.y));
        if (res > 1e-8 * (1.0 + point_norm(z))) continue;
        out.points.push_back(z);
        out.residuals.push_back(res);
    }
    return out;
}

RigidityReport rigidity_report(const HenonChain& f, const HenonChain& h, double tol,
                               int degree_cap) {
    RigidityReport rep;
    rep.jacobian_f = f.jacobian_det();
    rep.jacobian_h = h.jacobian_det();
    std::ostringstream notes;

    try {
        rep.twist = find_twist(f, h, tol, degree_cap);
        if (rep.twist) {
            notes << "twist relation F.H = C_eta.H.F holds with eta = "
                  << fmt_complex(rep.twist->eta) << "; | |eta|-1 | = "
                  << std::abs(std::abs(rep.twist->eta) - 1.0) << ". ";
            // Step-3 dichotomy: which right-side form holds.
            const PolyMap2 e_fh = chain_expand(compose_chains(f, h), degree_cap);
            const PolyMap2 e_hf = chain_expand(compose_chains(h, f), degree_cap);
            const Complex eta = rep.twist->eta;
            const MapEquality right = map_equal_within(e_fh, twist_right(e_hf, eta), tol);
            const MapEquality right_inv =
                map_equal_within(e_fh, twist_right(e_hf, Complex{1.0, 0.0} / eta), tol);
            if (right.equal)
                notes << "Right form F.H = H.F.C_eta holds (residual " << right.residual << "). ";
            else if (right_inv.equal)
                notes << "Right form F.H = H.F.C_eta^-1 holds (residual " << right_inv.residual
                      << "). ";
            else
                notes << "Neither right-side form matches within tol. ";
            notes << "det C_eta = 1 by construction. ";
        } else {
            notes << "no twist eta verifies F.H = C_eta.H.F within tol. ";
        }
    } catch (const ExpansionTooLarge& e) {
        notes << "twist not computed (cap): " << e.what() << ". ";
    }

    try {
        rep.commute_fh = check_commute(f, h, tol, degree_cap);
    } catch (const ExpansionTooLarge& e) {
        notes << "commute(F,H) not computed (cap): " << e.what() << ". ";
    }

    try {
        rep.commute_squares = verify_squares_commute(f, h, tol, degree_cap);
        rep.squares_status = "ok";
    } catch (const ExpansionTooLarge& e) {
        rep.squares_status =
            "not computed (cap): attempted degree " + std::to_string(e.attempted_degree);
    }

    rep.notes = notes.str();
    return rep;
}

std::string RigidityReport::to_text() const {
    std::ostringstream ss;
    ss.precision(12);
    if (twist) {
        ss << "twist.eta: " << fmt_complex(twist->eta) << "\n";
        ss << "twist.residual: " << twist->residual << "\n";
    } else {
        ss << "twist.eta: none\n";
    }
    if (commute_fh) {
        ss << "commute.fh: " << (commute_fh->commute ? "true" : "false") << "\n";
        ss << "commute.fh.residual: " << commute_fh->residual << "\n";
    } else {
        ss << "commute.fh: not computed\n";
    }
    if (commute_squares) {
        ss << "commute.squares: " << (commute_squares->commute ? "true" : "false") << "\n";
        ss << "commute.squares.residual: " << commute_squares->residual << "\n";
    } else {
        ss << "commute.squares: " << squares_status << "\n";
    }
    ss << "jacobian.f: " << fmt_complex(jacobian_f) << "\n";
    ss << "jacobian.h: " << fmt_complex(jacobian_h) << "\n";
    ss << "notes: " << notes << "\n";
    return ss.str();
}

}  // namespace henon
