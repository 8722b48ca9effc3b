#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "orthodeck/errors.hpp"

namespace orthodeck::roots {

struct Bracket {
    double lo;
    double hi;
};

/// Bisection on a sign change of f over [lo, hi].
///
/// `width` maps the bracket to the quantity whose relative width must drop below
/// `rel_tol` (callers bisect in a reparametrised variable but measure convergence
/// in the eigenvalue). Stops early when the midpoint no longer splits the bracket.
template <class F, class Width>
double bisect(F&& f, Bracket b, double rel_tol, Width&& width, const std::string& context) {
    double flo = f(b.lo);
    const double fhi = f(b.hi);
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if (std::signbit(flo) == std::signbit(fhi) || !std::isfinite(flo) || !std::isfinite(fhi)) {
        std::ostringstream os;
        os.precision(17);
        os << context << ": no sign change on [" << b.lo << ", " << b.hi << "] (f = " << flo << ", "
           << fhi << ")";
        throw NumericalFailure(os.str());
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (b.lo + b.hi);
        if (mid <= b.lo || mid >= b.hi) break;
        const auto [wlo, whi] = width(b.lo, b.hi);
        if (std::abs(whi - wlo) <= rel_tol * std::max(std::abs(wlo), std::abs(whi))) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            b.lo = mid;
            flo = fm;
        } else {
            b.hi = mid;
        }
    }
    return 0.5 * (b.lo + b.hi);
}

template <class F>
double bisect(F&& f, Bracket b, double rel_tol, const std::string& context) {
    return bisect(std::forward<F>(f), b, rel_tol,
                  [](double lo, double hi) { return std::pair{lo, hi}; }, context);
}

/// sqrt(1 + x) - 1 without cancellation for small x.
inline double sqrt1pm1(double x) { return x / (std::sqrt(1.0 + x) + 1.0); }

/// sin(x) / x
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

/// tanh(x) / x
inline double tanhc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 3.0;
    return std::tanh(x) / x;
}

}  // namespace orthodeck::roots
