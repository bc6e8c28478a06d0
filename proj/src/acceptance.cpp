#include "henon/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "henon/grid.hpp"
#include "henon/map_spec.hpp"
#include "henon/normal_form.hpp"
#include "henon/rigidity.hpp"
#include "henon/sampling.hpp"

namespace henon::acceptance {

namespace {

HenonChain canonical_h() {
    return HenonChain{{ElementaryFactor{Complex{1, 0}, Complex{}, Complex{1, 0},
                                        Polynomial::monomial(2)}}};
}

// F = C_omega o H = (w y, (w y)^2 - w^2 x) with w the primitive cube root.
HenonChain example37_f() {
    const Complex w = unit_root(1, 3);
    const Complex w2 = w * w;
    return HenonChain{{ElementaryFactor{w, Complex{}, w2, Polynomial::monomial(2, w2)}}};
}

double rel_dev(Point2 a, Point2 ref) {
    const double num = std::hypot(std::abs(a.x - ref.x), std::abs(a.y - ref.y));
    return num / (1.0 + point_norm(ref));
}

// Pairwise-staged comparison of two chains with the same factor count.
// The disjoint-pair rewrite preserves every pair's composition exactly, so
// the states agree at each pair boundary; comparison stops before the next
// pair would leave the comfortably representable range.
double staged_pair_deviation(const HenonChain& a, const HenonChain& b, Point2 z) {
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    Point2 za = z, zb = z;
    double worst = 0.0;
    for (size_t t = 0; t + 1 < fa.size(); t += 2) {
        if (point_norm(za) > 1e20) break;
        za = factor_eval(fa[t + 1], factor_eval(fa[t], za, Direction::Forward), Direction::Forward);
        zb = factor_eval(fb[t + 1], factor_eval(fb[t], zb, Direction::Forward), Direction::Forward);
        worst = std::max(worst, rel_dev(zb, za));
    }
    return worst;
}

double whole_chain_deviation(const HenonChain& a, const HenonChain& b, Point2 z) {
    const Point2 ra = chain_eval_strict(a, z, 1);
    const Point2 rb = chain_eval_strict(b, z, 1);
    return rel_dev(rb, ra);
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

CriterionResult c1_example37() {
    CriterionResult r{"C1 example-3.7 regression", false, ""};
    const HenonChain h = canonical_h();
    const HenonChain f = example37_f();
    const Complex w2 = unit_root(2, 3);

    auto tw = find_twist(f, h, 1e-9);
    const bool twist_ok = tw && std::abs(tw->eta - w2) <= 1e-9 && tw->residual <= 1e-9;
    const CommuteResult first = check_commute(f, h, 1e-9);
    const bool first_ok = !first.commute && first.residual >= 0.1;
    const CommuteResult squares = verify_squares_commute(f, h, 1e-9);
    const bool squares_ok = squares.commute && squares.residual <= 1e-9;

    r.pass = twist_ok && first_ok && squares_ok;
    r.detail = "eta-dev=" + (tw ? fmt(std::abs(tw->eta - w2)) : std::string("none")) +
               " twist-resid=" + (tw ? fmt(tw->residual) : std::string("-")) +
               " commute(F,H)=" + (first.commute ? "true" : "false") +
               " resid=" + fmt(first.residual) +
               " squares=" + (squares.commute ? "true" : "false") +
               " resid=" + fmt(squares.residual);
    return r;
}

CriterionResult c2_normal_forms() {
    CriterionResult r{"C2 normal-form exactness", false, ""};
    ChainSampler gen(0);
    double worst_sq = 0.0, worst_b = 0.0, worst_o = 0.0, worst_p0 = 0.0;

    for (int i = 0; i < 100; ++i) {
        const HenonChain h = gen.random_chain(3);
        const HenonChain nf = square_normal_form(h);
        const HenonChain sq = compose_chains(h, h);
        for (int k = 0; k < 100; ++k)
            worst_sq = std::max(worst_sq, staged_pair_deviation(sq, nf, gen.random_point(3.5)));
    }
    for (int i = 0; i < 100; ++i) {
        const HenonChain h = gen.random_chain(3, /*c_zero=*/true, /*min_m=*/2);
        const HenonChain nf = chain_normalize_b_only(h);
        for (int k = 0; k < 100; ++k)
            worst_b = std::max(worst_b, whole_chain_deviation(h, nf, gen.random_point(3.5)));
    }
    for (int i = 0; i < 100; ++i) {
        const HenonChain h = gen.random_origin_fixing_chain(3);
        const HenonChain nf = origin_fixed_form(h);
        for (const auto& fct : nf.factors()) {
            worst_p0 = std::max(worst_p0, std::abs(fct.p()(Complex{})));
            worst_p0 = std::max(worst_p0, std::abs(fct.c()));
        }
        for (int k = 0; k < 100; ++k)
            worst_o = std::max(worst_o, whole_chain_deviation(h, nf, gen.random_point(3.5)));
    }

    r.pass = worst_sq <= 1e-8 && worst_b <= 1e-8 && worst_o <= 1e-8 && worst_p0 <= 1e-10;
    r.detail = "square-dev=" + fmt(worst_sq) + " b-only-dev=" + fmt(worst_b) +
               " origin-dev=" + fmt(worst_o) + " |p_i(0)|max=" + fmt(worst_p0);
    return r;
}

CriterionResult c3_twist_group() {
    CriterionResult r{"C3 twist symmetry group", false, ""};
    const HenonChain h = canonical_h();
    const TwistGroup g = admissible_twist_group(h);
    bool ok = g.order == 3 && std::abs(g.generator - unit_root(1, 3)) <= 1e-12;
    double worst = 0.0;
    const PolyMap2 eh = chain_expand(h);
    for (const Complex& eta : g.elements()) {
        const MapEquality eq =
            map_equal_within(twist_left(eta, eh), twist_right(eh, Complex{1, 0} / eta), 1e-9);
        worst = std::max(worst, eq.residual);
        ok = ok && eq.equal;
        ok = ok && twist_symmetry_check(h.factors()[0].p(), eta);
    }
    r.pass = ok;
    r.detail = "order=" + std::to_string(g.order) + " conj-resid=" + fmt(worst);
    return r;
}

CriterionResult c4_green_suite() {
    CriterionResult r{"C4 green function suite", false, ""};
    const GreenContext ctx(canonical_h());
    const int budget = 200;

    // Independent orbit-iteration oracle for G+(0, 10).
    double oracle = 0.0;
    {
        long double x = 0.0L, y = 10.0L;
        int n = 0;
        while (std::abs(y) < 1e150L && n < 60) {
            const long double ny = y * y - x;
            x = y;
            y = ny;
            ++n;
        }
        oracle = static_cast<double>(std::log(std::abs(y)) / std::pow(2.0L, n));
    }
    const GreenEstimate g10 = green(ctx, {Complex{}, Complex{10, 0}}, GreenSign::Plus, budget);
    const bool value_ok = std::abs(g10.value - 2.3022) <= 1e-3 &&
                          std::abs(g10.value - oracle) <= 1e-6 + g10.error_bound;

    // Functional equation on 200 escaping samples of the real slice.
    ChainSampler gen(0);
    int tested = 0;
    bool feq_ok = true;
    double worst_feq = 0.0;
    while (tested < 200) {
        const Point2 z{Complex{-3.0 + 6.0 * gen.uniform(), 0.0},
                       Complex{-3.0 + 6.0 * gen.uniform(), 0.0}};
        const GreenEstimate g1 = green(ctx, z, GreenSign::Plus, budget);
        if (!g1.escaped) continue;
        const Point2 hz = chain_eval_strict(ctx.chain, z, 1);
        const GreenEstimate g2 = green(ctx, hz, GreenSign::Plus, budget);
        const double dev = std::abs(g2.value - 2.0 * g1.value);
        const double allowed = 1e-6 + g2.error_bound + 2.0 * g1.error_bound;
        worst_feq = std::max(worst_feq, dev - allowed);
        feq_ok = feq_ok && dev <= allowed;
        ++tested;
    }

    // Fixed points carry G = 0 exactly.
    const GreenEstimate fp0 = green_max(ctx, {Complex{}, Complex{}}, budget);
    const GreenEstimate fp2 = green_max(ctx, {Complex{2, 0}, Complex{2, 0}}, budget);
    const bool fixed_ok = fp0.value == 0.0 && !fp0.escaped && fp2.value == 0.0 && !fp2.escaped;

    // Logarithmic growth against the computed O(1) constant.
    const double growth = growth_constant_plus(ctx);
    bool growth_ok = std::isfinite(growth);
    double worst_growth = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double ymag = 1e4 + 1e6 * gen.uniform();
        const Point2 z{gen.unit_disk() * (0.5 * ctx.fr.R),
                       std::polar(ymag, 6.283185307179586 * gen.uniform())};
        const GreenEstimate gp = green(ctx, z, GreenSign::Plus, budget);
        const double dev = std::abs(gp.value - std::log(ymag));
        worst_growth = std::max(worst_growth, dev);
        growth_ok = growth_ok && gp.escaped && dev <= growth;
    }

    r.pass = value_ok && feq_ok && fixed_ok && growth_ok;
    r.detail = "G+(0,10)=" + fmt(g10.value) + " err=" + fmt(g10.error_bound) +
               " feq-worst-slack=" + fmt(worst_feq) + " growth-worst=" + fmt(worst_growth) +
               " growth-const=" + fmt(growth);
    return r;
}

CriterionResult c5_domination() {
    CriterionResult r{"C5 green domination (Prop 2.3)", false, ""};
    std::vector<HenonChain> suite;
    suite.push_back(canonical_h());
    suite.push_back(HenonChain{{ElementaryFactor{Complex{1, 0}, Complex{}, Complex{1, 0},
                                                 Polynomial::monomial(3)}}});
    suite.push_back(HenonChain{{
        ElementaryFactor{Complex{1.2, 0}, Complex{0.3, 0}, Complex{0.8, 0},
                         Polynomial{{Complex{}, Complex{0.2, 0}, Complex{1, 0}}}},
        ElementaryFactor{Complex{0.9, 0.2}, Complex{0, 0.1}, Complex{1.1, 0},
                         Polynomial{{Complex{-0.1, 0}, Complex{}, Complex{1, 0}}}},
    }});

    bool ok = true;
    std::string detail;
    int mi = 0;
    for (const auto& h : suite) {
        const DominationReport rep = verify_green_domination(h, 1e3, 100, 200, 0);
        ok = ok && rep.all_certified();
        detail += "map" + std::to_string(mi++) + ":" + std::to_string(rep.d2.certified) + "/" +
                  std::to_string(rep.samples) + "," + std::to_string(rep.d1.certified) + "/" +
                  std::to_string(rep.samples) + " ";
    }
    r.pass = ok;
    r.detail = detail + "(D2 then D1 certified counts)";
    return r;
}

CriterionResult c6_fixed_points() {
    CriterionResult r{"C6 fixed points", false, ""};
    const HenonChain h = canonical_h();
    const FixedPointSet s1 = fixed_points(h, 1);

    auto has_point = [](const FixedPointSet& s, Complex x, Complex y, double tol) {
        for (const auto& p : s.points)
            if (std::hypot(std::abs(p.x - x), std::abs(p.y - y)) <= tol) return true;
        return false;
    };
    const bool order1_ok = s1.points.size() == 2 &&
                           has_point(s1, Complex{}, Complex{}, 1e-8) &&
                           has_point(s1, Complex{2, 0}, Complex{2, 0}, 1e-8);

    const HenonChain hc = conjugate_by_translation(h, {Complex{2, 0}, Complex{2, 0}});
    const FixedPointSet sc = fixed_points(hc, 1);
    const bool conj_ok = sc.points.size() == 2 &&
                         has_point(sc, Complex{}, Complex{}, 1e-6) &&
                         has_point(sc, Complex{-2, 0}, Complex{-2, 0}, 1e-6);

    const FixedPointSet s2 = fixed_points(h, 2);
    bool super_ok = true;
    for (const auto& p : s1.points) super_ok = super_ok && has_point(s2, p.x, p.y, 1e-6);
    bool resid_ok = true;
    for (double res : s2.residuals) resid_ok = resid_ok && res <= 1e-8 * 4.0;

    r.pass = order1_ok && conj_ok && super_ok && resid_ok;
    r.detail = "order1=" + std::to_string(s1.points.size()) +
               " conj=" + std::to_string(sc.points.size()) +
               " order2=" + std::to_string(s2.points.size());
    return r;
}

CriterionResult c7_algebra_properties() {
    CriterionResult r{"C7 algebra property suites", false, ""};
    ChainSampler gen(0);
    bool ok = true;
    double worst = 0.0;

    auto coeffwise_close = [&](const Polynomial& a, const Polynomial& b) {
        const double scale = std::max(a.max_coeff_mag(), b.max_coeff_mag());
        const int d = std::max(a.degree(), b.degree());
        double dev = 0.0;
        for (int k = 0; k <= d; ++k) dev = std::max(dev, std::abs(a.coeff(k) - b.coeff(k)));
        return dev <= 1e-12 * (1.0 + scale);
    };

    for (int i = 0; i < 100; ++i) {
        const Polynomial a = gen.random_poly(2 + i % 4);
        const Polynomial b = gen.random_poly(2 + (i / 2) % 4);
        const Polynomial c = gen.random_poly(2 + (i / 3) % 4);
        ok = ok && coeffwise_close(a * b, b * a);
        ok = ok && coeffwise_close((a * b) * c, a * (b * c));
        ok = ok && coeffwise_close(a * (b + c), a * b + a * c);
        // Evaluation homomorphism.
        for (int k = 0; k < 20; ++k) {
            const Complex y = gen.unit_disk() * 2.0;
            const Complex lhs = poly_eval(a * b, y);
            const Complex rhs = poly_eval(a, y) * poly_eval(b, y);
            ok = ok && std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs));
        }
        // Composition degree law.
        ok = ok && poly_compose(a, b).degree() == a.degree() * b.degree();
    }

    // Inverse round-trip.
    for (int i = 0; i < 100; ++i) {
        const HenonChain h = gen.random_chain(3);
        for (int k = 0; k < 50; ++k) {
            const Point2 z = gen.random_point(1.4);
            const OrbitResult fwd = chain_eval(h, z, 1);
            if (fwd.overflowed()) continue;
            const OrbitResult back = chain_eval(h, fwd.point, -1);
            if (back.overflowed()) continue;
            const double dev = std::hypot(std::abs(back.point.x - z.x), std::abs(back.point.y - z.y));
            worst = std::max(worst, dev / (1.0 + point_norm(z)));
            ok = ok && dev <= 1e-8 * (1.0 + point_norm(z));
        }
    }

    // Jacobian constancy against central finite differences.
    for (int i = 0; i < 100; ++i) {
        const HenonChain h = gen.random_chain(2);
        const Complex closed = h.jacobian_det();
        for (int k = 0; k < 5; ++k) {
            const Point2 z = gen.random_point(0.8);
            const double hstep = 1e-6;
            auto at = [&](Complex dx, Complex dy) {
                return chain_eval_strict(h, {z.x + dx, z.y + dy}, 1);
            };
            const Point2 xp = at(Complex{hstep, 0}, {}), xm = at(Complex{-hstep, 0}, {});
            const Point2 yp = at({}, Complex{hstep, 0}), ym = at({}, Complex{-hstep, 0});
            const Complex j11 = (xp.x - xm.x) / (2 * hstep), j12 = (yp.x - ym.x) / (2 * hstep);
            const Complex j21 = (xp.y - xm.y) / (2 * hstep), j22 = (yp.y - ym.y) / (2 * hstep);
            const Complex fd = j11 * j22 - j12 * j21;
            ok = ok && std::abs(fd - closed) <= 1e-6 * (1.0 + std::abs(closed));
        }
    }

    r.pass = ok;
    r.detail = "roundtrip-worst=" + fmt(worst);
    return r;
}

CriterionResult c8_render_determinism() {
    CriterionResult r{"C8 render determinism", false, ""};
    const auto t0 = std::chrono::steady_clock::now();
    const GreenContext ctx(canonical_h());
    GridJob job;
    job.center_u = 0.0;
    job.center_v = 0.0;
    job.width = job.height = 5.0;
    job.resolution = 128;
    job.mode = GridMode::GMax;
    job.budget = 64;

    job.threads = 1;
    const GridResult a = rasterize_grid(ctx, job);
    const GridResult a2 = rasterize_grid(ctx, job);
    job.threads = 8;
    const GridResult b = rasterize_grid(ctx, job);

    const std::string csv_a = grid_csv_string(a), csv_a2 = grid_csv_string(a2);
    const std::string csv_b = grid_csv_string(b);
    const std::string pgm_a = grid_pgm_string(a), pgm_b = grid_pgm_string(b);
    const std::string pgm_a2 = grid_pgm_string(a2);

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool rerun_ok = csv_a == csv_a2 && pgm_a == pgm_a2;
    const bool workers_ok = csv_a == csv_b && pgm_a == pgm_b;
    r.pass = rerun_ok && workers_ok && secs <= 60.0;
    r.detail = std::string("rerun=") + (rerun_ok ? "identical" : "DIFFERS") +
               " workers1v8=" + (workers_ok ? "identical" : "DIFFERS") + " time=" + fmt(secs) + "s";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_all() {
    return {c1_example37(),       c2_normal_forms(), c3_twist_group(), c4_green_suite(),
            c5_domination(),      c6_fixed_points(), c7_algebra_properties(),
            c8_render_determinism()};
}

bool run_all(std::ostream& os) {
    bool all = true;
    for (const auto& c : run_all()) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
        all = all && c.pass;
    }
    os << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
    return all;
}

}  // namespace henon::acceptance
