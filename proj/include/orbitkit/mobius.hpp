#pragma once

#include <utility>
#include <vector>

#include "orbitkit/funcspec.hpp"
#include "orbitkit/rational.hpp"

namespace orbitkit {

// Exact algebra of Mobius maps (a t + b)/(t + d), the matrix [[a, b], [1, d]].
// The coefficient formulas are rational functions, so they are templated over
// double, DDouble and BigRational; anything needing a square root (fixed
// points, eigenvalues) is provided for double.

template <class T>
struct MobiusCoeffsT {
    T a, b, d;
};
using MobiusCoeffs = MobiusCoeffsT<double>;

template <class T>
struct QParamsT {
    T L;  // fixed point
    T m;  // multiplier, in (0, 1)
    T s;  // second derivative at L, negative
};
using QParams = QParamsT<double>;

struct MobiusEigen {
    double lambda;  // eigenvalue of larger modulus, = L + d
    double mu;      // the other eigenvalue, = L1 + d
    double L;       // fixed point paired with lambda (attracting when |m| < 1)
    double L1;      // the other fixed point
    double m;       // mu / lambda = (ad - b) / lambda^2
    // eigenvectors: (L, 1) for lambda and (b, -L) for mu
};

template <class T>
T mobius_apply(const MobiusCoeffsT<T>& mc, const T& t) {
    T den = t + mc.d;
    if (den == T(0)) throw DomainError("Mobius pole at t = -d");
    return (mc.a * t + mc.b) / den;
}

/// Matrix product, normalized back to c = 1.  Mirrors composition: the result
/// is the map t -> f(g(t)).
template <class T>
MobiusCoeffsT<T> mobius_compose(const MobiusCoeffsT<T>& f, const MobiusCoeffsT<T>& g) {
    T ca = f.a * g.a + f.b;      // [[a_f, b_f], [1, d_f]] * [[a_g, b_g], [1, d_g]]
    T cb = f.a * g.b + f.b * g.d;
    T cc = g.a + f.d;
    T cd = g.b + f.d * g.d;
    if (cc == T(0)) throw DomainError("mobius_compose: composition has c = 0 (affine result)");
    return {ca / cc, cb / cc, cd / cc};
}

/// (L, m, s) -> (a, b, d): a = (Ls - 2m^2)/s, b = (L/s)(2m^2 - 2m - Ls),
/// d = -(2m + Ls)/s.  Requires m and s nonzero.
template <class T>
MobiusCoeffsT<T> q_from_lms(const QParamsT<T>& p) {
    if (p.m == T(0) || p.s == T(0)) throw DomainError("q_from_lms: m and s must be nonzero");
    T ls = p.L * p.s;
    T m2 = p.m * p.m;
    T a = (ls - 2 * m2) / p.s;
    T b = (p.L / p.s) * (2 * m2 - 2 * p.m - ls);
    T d = -(2 * p.m + ls) / p.s;
    return {a, b, d};
}

/// (a, b, d) at a known fixed point L -> (L, m, s): m = (ad - b)/(L + d)^2,
/// s = 2(b - ad)/(L + d)^3.  Throws PoleAtFixedPoint when L + d = 0.
template <class T>
QParamsT<T> lms_from_abd(const MobiusCoeffsT<T>& mc, const T& L) {
    T den = L + mc.d;
    if (den == T(0)) throw PoleAtFixedPoint("lms_from_abd: L + d == 0");
    T w = mc.a * mc.d - mc.b;
    return {L, w / (den * den), -2 * w / (den * den * den)};
}

/// Real fixed points (roots of t^2 + (d - a) t - b), sorted ascending.
/// Empty when the discriminant (a - d)^2 + 4b is negative; a single entry for
/// a double root.
std::vector<double> fixed_points(const MobiusCoeffs& mc);

/// Eigen structure; requires distinct real eigenvalues ((a-d)^2 + 4b > 0),
/// otherwise DegenerateEigen.
MobiusEigen eigen(const MobiusCoeffs& mc);

/// Q-function matching f's fixed point and multiplier with Q''(L) set to
/// f''(L) - gap (gap > 0, keeping the inequality strict).  f must be
/// root-like at its fixed point: 0 < m < 1.
MobiusCoeffs associated_q(const FunctionSpec& f, double gap);

/// Closed-form n-th iterate via eigenvalue powers:
/// ((L^2 lam^n + b mu^n) t + b L (lam^n - mu^n)) /
/// (L (lam^n - mu^n) t + b lam^n + L^2 mu^n).
/// Throws PoleHit when t is (numerically) the root w_n of the denominator.
double iterate_closed(const MobiusCoeffs& mc, long n, double t);

/// Exact candidate-sequence limit |(L^2 + b)(L - t0) / (b + L t0)| at the
/// attracting fixed point, cross-checked against the equivalent form
/// |1/(t0 - L) + s/(2m(m - 1))|^-1 to 1e-10 relative.
double candidate_limit_exact(const MobiusCoeffs& mc, double t0);

/// phi^(2n) |phi - F_{n+1}/F_n| with exact Fibonacci/Lucas integers; the
/// difference is evaluated through the identity
/// phi - F_{n+1}/F_n = -2 (-1)^n / (F_n (sqrt5 F_n + L_n)), which is free of
/// cancellation.  Valid for 1 <= n <= 80; tends to sqrt(5).
double fibonacci_residual(int n);

}  // namespace orbitkit
