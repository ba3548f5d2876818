#pragma once

#include <cmath>
#include <limits>

#include "orbitkit/ddouble.hpp"
#include "orbitkit/errors.hpp"

// Scalar operations shared by the binary64 and double-double evaluation paths.
// Templates in this library call these unqualified so the same formula text
// serves both precisions; the double overloads add the domain checks that the
// DDouble versions already perform.

namespace orbitkit {

inline double sqrt(double x) {
    if (x < 0.0) throw DomainError("sqrt of negative value");
    return std::sqrt(x);
}

inline double exp(double x) { return std::exp(x); }

inline double log(double x) {
    if (x <= 0.0) throw DomainError("log of non-positive value");
    return std::log(x);
}

inline double pow(double x, double y) {
    if (x <= 0.0) throw DomainError("pow requires a positive base");
    return std::pow(x, y);
}

inline double nth_root(double x, int k) {
    if (x < 0.0) throw DomainError("nth_root of negative value");
    if (x == 0.0) return 0.0;
    if (k == 2) return std::sqrt(x);
    if (k == 3) return std::cbrt(x);
    return std::pow(x, 1.0 / k);
}

inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }

inline double acos(double x) {
    if (x < -1.0 || x > 1.0) throw DomainError("acos argument outside [-1, 1]");
    return std::acos(x);
}

inline double cosh(double x) { return std::cosh(x); }

inline double acosh(double x) {
    if (x < 1.0) throw DomainError("acosh argument below 1");
    return std::acosh(x);
}

inline double abs(double x) { return std::fabs(x); }

inline double to_double(double x) { return x; }

/// Unit in the last place of the active format at magnitude |x|.
inline double ulp_of(double x) {
    double ax = std::fabs(x);
    if (ax == 0.0) return std::numeric_limits<double>::denorm_min();
    return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

inline double ulp_of(const DDouble& x) {
    double ax = std::fabs(x.hi());
    if (ax == 0.0) return std::numeric_limits<double>::denorm_min();
    return ax * DDouble::eps;
}

}  // namespace orbitkit
