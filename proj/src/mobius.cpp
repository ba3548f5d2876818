#include "orbitkit/mobius.hpp"

#include <algorithm>
#include <cmath>

#include "orbitkit/catalog.hpp"

namespace orbitkit {

namespace {

double discriminant(const MobiusCoeffs& mc) {
    return (mc.a - mc.d) * (mc.a - mc.d) + 4.0 * mc.b;
}

}  // namespace

std::vector<double> fixed_points(const MobiusCoeffs& mc) {
    if (mc.b == mc.a * mc.d) throw DomainError("Mobius map is constant (b == a d)");
    double disc = discriminant(mc);
    if (disc < 0.0) return {};
    if (disc == 0.0) return {(mc.a - mc.d) / 2.0};
    double sq = std::sqrt(disc);
    return {(mc.a - mc.d - sq) / 2.0, (mc.a - mc.d + sq) / 2.0};
}

MobiusEigen eigen(const MobiusCoeffs& mc) {
    if (mc.b == mc.a * mc.d) throw DomainError("Mobius map is constant (b == a d)");
    double disc = discriminant(mc);
    if (disc <= 0.0)
        throw DegenerateEigen("Mobius matrix needs distinct real eigenvalues "
                              "((a - d)^2 + 4b > 0)");
    double sq = std::sqrt(disc);
    double r1 = (mc.a - mc.d - sq) / 2.0;  // fixed points; eigenvalues are r_j + d
    double r2 = (mc.a - mc.d + sq) / 2.0;
    double e1 = r1 + mc.d;
    double e2 = r2 + mc.d;
    MobiusEigen out{};
    if (std::fabs(e2) >= std::fabs(e1)) {
        out.lambda = e2; out.L = r2; out.mu = e1; out.L1 = r1;
    } else {
        out.lambda = e1; out.L = r1; out.mu = e2; out.L1 = r2;
    }
    out.m = out.mu / out.lambda;
    return out;
}

MobiusCoeffs associated_q(const FunctionSpec& f, double gap) {
    if (!(gap > 0.0)) throw DomainError("associated_q: gap must be strictly positive");
    FixedPointInfo fp = fixed_point(f);
    if (!(fp.m > 0.0 && fp.m < 1.0))
        throw DomainError("associated_q: f must be root-like at L (0 < f'(L) < 1)");
    if (!fp.s) throw DomainError("associated_q: f''(L) unavailable for this family");
    return q_from_lms<double>({fp.L, fp.m, *fp.s - gap});
}

double iterate_closed(const MobiusCoeffs& mc, long n, double t) {
    if (n < 0) throw DomainError("iterate_closed: n must be nonnegative");
    if (n == 0) return t;
    MobiusEigen eg = eigen(mc);
    // Divide the eigen-power form through by lambda^n: with m = mu/lambda,
    // f^(n)(t) = (b (t - L) m^n + L (b + L t)) / (L (L - t) m^n + (b + L t)).
    double mn = 1.0;
    for (long i = 0; i < n; ++i) mn *= eg.m;
    double L = eg.L, b = mc.b;
    double num = b * (t - L) * mn + L * (b + L * t);
    double den = L * (L - t) * mn + (b + L * t);
    double scale = std::fabs(L * (L - t) * mn) + std::fabs(b + L * t);
    if (std::fabs(den) < 1e-12 * std::max(scale, 1e-300))
        throw PoleHit("iterate_closed: t is the denominator root w_n "
                      "(the preimage (Q^-1)^(n-1)(-d))");
    return num / den;
}

double candidate_limit_exact(const MobiusCoeffs& mc, double t0) {
    MobiusEigen eg = eigen(mc);
    if (!(std::fabs(eg.m) < 1.0))
        throw NoFixedPoint("candidate_limit_exact: no attracting fixed point (|m| = 1)");
    double L = eg.L, b = mc.b;
    if (t0 == L) return 0.0;  // degenerate: the sequence is identically zero
    if (t0 == eg.L1)
        throw RepellingStart("candidate_limit_exact: t0 is the repelling fixed point");
    double pole = b + L * t0;
    if (std::fabs(pole) <= 1e-14 * (std::fabs(b) + std::fabs(L * t0)))
        throw PoleStart("candidate_limit_exact: b + L t0 == 0 (t0 = -b/L, the other "
                        "fixed point of the limit formula)");

    double primary = std::fabs((L * L + b) * (L - t0) / pole);

    // Equivalent form through (L, m, s); the two routes must agree.
    QParams q = lms_from_abd<double>({mc.a, mc.b, mc.d}, L);
    double alternate = 1.0 / std::fabs(1.0 / (t0 - L) + q.s / (2.0 * q.m * (q.m - 1.0)));
    if (std::fabs(primary - alternate) > 1e-10 * std::max(std::fabs(primary), 1e-300))
        throw FormulaMismatch("candidate_limit_exact: the two closed forms disagree");
    return primary;
}

double fibonacci_residual(int n) {
    if (n < 1 || n > 80) throw DomainError("fibonacci_residual: n must be in [1, 80]");
    BigInt f_prev = 0, f_cur = 1;   // F_0, F_1
    BigInt l_prev = 2, l_cur = 1;   // L_0, L_1
    for (int i = 1; i < n; ++i) {
        BigInt fn = f_prev + f_cur;
        f_prev = f_cur; f_cur = fn;
        BigInt ln = l_prev + l_cur;
        l_prev = l_cur; l_cur = ln;
    }
    DDouble sqrt5 = sqrt(DDouble(5.0));
    DDouble phi = (1.0 + sqrt5) / 2.0;
    DDouble fn = to_ddouble(f_cur);
    DDouble ln = to_ddouble(l_cur);
    // phi - F_{n+1}/F_n = -2 (-1)^n / (F_n (sqrt5 F_n + L_n)); the scaled
    // magnitude is therefore 2 phi^(2n) / (F_n (sqrt5 F_n + L_n)).
    DDouble value = 2.0 * powi(phi, 2L * n) / (fn * (sqrt5 * fn + ln));
    return to_double(value);
}

}  // namespace orbitkit
