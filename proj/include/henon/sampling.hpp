#pragma once

#include <random>

#include "henon/chain.hpp"

namespace henon {

// Seeded generators shared by the property suites: |b|, |delta| in [0.5, 2],
// coefficients in the unit disk (leading magnitude kept off zero), factor
// degrees in {2, 3}.
class ChainSampler {
public:
    explicit ChainSampler(unsigned long long seed) : rng_(seed) {}

    Complex unit_disk() {
        const double r = std::sqrt(unit_(rng_));
        return std::polar(r, two_pi_ * unit_(rng_));
    }

    Complex annulus(double lo, double hi) {
        return std::polar(lo + (hi - lo) * unit_(rng_), two_pi_ * unit_(rng_));
    }

    Polynomial random_poly(int deg) {
        std::vector<Complex> c(static_cast<size_t>(deg) + 1);
        for (int k = 0; k < deg; ++k) c[static_cast<size_t>(k)] = unit_disk();
        c.back() = annulus(0.2, 1.0);
        return Polynomial{std::move(c)};
    }

    ElementaryFactor random_factor(bool c_zero = false) {
        const int deg = 2 + static_cast<int>(unit_(rng_) * 2.0) % 2;
        return {annulus(0.5, 2.0), c_zero ? Complex{} : unit_disk(), annulus(0.5, 2.0),
                random_poly(deg)};
    }

    HenonChain random_chain(int max_m = 3, bool c_zero = false, int min_m = 1) {
        const int m = min_m + static_cast<int>(unit_(rng_) * (max_m - min_m + 1)) % (max_m - min_m + 1);
        std::vector<ElementaryFactor> fs;
        for (int i = 0; i < m; ++i) fs.push_back(random_factor(c_zero));
        return HenonChain{std::move(fs)};
    }

    // A chain with nonzero c's built to fix the origin: the last factor's c
    // and constant coefficient are solved so the composition maps 0 to 0.
    HenonChain random_origin_fixing_chain(int max_m = 3) {
        const int m = 1 + static_cast<int>(unit_(rng_) * max_m) % max_m;
        std::vector<ElementaryFactor> fs;
        for (int i = 0; i + 1 < m; ++i) fs.push_back(random_factor(false));
        Point2 mid{};
        for (const auto& f : fs) mid = factor_eval(f, mid, Direction::Forward);
        const Complex b = annulus(0.5, 2.0), delta = annulus(0.5, 2.0);
        Polynomial p = random_poly(2 + static_cast<int>(unit_(rng_) * 2.0) % 2);
        const Complex c = -b * mid.y;
        p = p - Polynomial::constant(p(mid.y) - delta * mid.x);
        fs.emplace_back(b, c, delta, std::move(p));
        return HenonChain{std::move(fs)};
    }

    Point2 random_point(double radius) {
        return {unit_disk() * radius, unit_disk() * radius};
    }

    double uniform() { return unit_(rng_); }
    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    static constexpr double two_pi_ = 6.283185307179586;
};

}  // namespace henon
