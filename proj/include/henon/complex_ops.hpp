#pragma once

#include <cmath>
#include <complex>

namespace henon {

using Complex = std::complex<double>;

// Relative magnitude below which a coefficient is treated as cancellation
// dust and dropped after arithmetic.
inline constexpr double kCoeffTrimRel = 1e-13;

// Default absolute tolerance for coefficient-level equality.
inline constexpr double kDefaultTol = 1e-9;

// Orbit coordinates past this magnitude count as "escaped to numerical
// infinity"; kept far below DBL_MAX so one more squaring stays finite.
inline constexpr double kOverflowSentinel = 1e150;

// Coefficients past this magnitude abort symbolic arithmetic.
inline constexpr double kCoeffOverflow = 1e300;

inline constexpr int kDefaultExpansionCap = 64;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// z^n for n >= 0 by binary exponentiation.
inline Complex pow_int(Complex z, long n) {
    Complex r{1.0, 0.0};
    Complex base = z;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// e^{2*pi*i*k/n}
inline Complex unit_root(long k, long n) {
    const double two_pi = 6.283185307179586476925286766559;
    return std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(n));
}

}  // namespace henon
