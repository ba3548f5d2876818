#include "orbitkit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace orbitkit {

namespace {

// Attracting fixed point of (a t + b)/(t + d): the root of t^2 + (d-a)t - b
// whose multiplier (ad - b)/(t + d)^2 has modulus < 1.
struct MobiusRoots {
    double attracting;
    double repelling;
    double m_attracting;
};

MobiusRoots mobius_attracting_root(double a, double b, double d) {
    double disc = (a - d) * (a - d) + 4.0 * b;
    if (disc < 0.0) throw NoFixedPoint("Mobius map has no real fixed point");
    double sq = std::sqrt(disc);
    double r1 = (a - d - sq) / 2.0;
    double r2 = (a - d + sq) / 2.0;
    auto mult = [&](double t) { return (a * d - b) / ((t + d) * (t + d)); };
    double m1 = mult(r1);
    double m2 = mult(r2);
    if (std::fabs(m2) < 1.0) return {r2, r1, m2};
    if (std::fabs(m1) < 1.0) return {r1, r2, m1};
    throw NoFixedPoint("Mobius map has no attracting fixed point");
}

}  // namespace

FixedPointInfo fixed_point(const FunctionSpec& spec) {
    validate(spec);
    return std::visit(
        [&](const auto& f) -> FixedPointInfo {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                double L = (1.0 + std::sqrt(1.0 + 4.0 * f.c)) / 2.0;
                return {L, 1.0 / (2.0 * L), -1.0 / (4.0 * L * L * L), true};
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                double L = f.l;
                double m = 1.0 / (f.k * std::pow(L, f.k - 1));
                double s = (1.0 / f.k) * (1.0 / f.k - 1.0) * std::pow(L, 1.0 - 2.0 * f.k);
                return {L, m, s, std::fabs(m) < 1.0};
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                auto r = mobius_attracting_root(f.a, f.b, f.d);
                double den = r.attracting + f.d;
                double s = 2.0 * (f.b - f.a * f.d) / (den * den * den);
                return {r.attracting, r.m_attracting, s, true};
            } else if constexpr (std::is_same_v<F, LogShift>) {
                double m = std::exp(-f.l);
                return {f.l, m, -m * m, true};
            } else if constexpr (std::is_same_v<F, RationalDemo>) {
                return {5.0, 4.0 / 13.0, -27.0 / 169.0, true};
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                return {1.0, f.alpha, f.alpha * (f.alpha - 1.0), true};
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                return {0.5, 1.0 / 3.0, -4.0 / 9.0, true};
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                double L = std::exp(2.0);
                return {L, 0.25, -7.0 / (32.0 * L), true};
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                double k2 = static_cast<double>(f.k) * f.k;
                double s = -(k2 - 1.0) / (3.0 * k2 * k2);
                if (f.scaled) return {static_cast<double>(f.k), 1.0 / k2, s / f.k, true};
                return {1.0, 1.0 / k2, s, true};
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                auto r = mobius_attracting_root(f.a, f.b, 0.0);
                double s = 2.0 * f.b / (r.attracting * r.attracting * r.attracting);
                return {r.attracting, r.m_attracting, s, true};
            } else if constexpr (std::is_same_v<F, NonSmoothDemo>) {
                return {1.0, 0.5, -0.48, true};
            } else {  // QuarticDemo
                return {1.0, 0.5, 0.0, true};
            }
        },
        spec);
}

FixedPointExt fixed_point_ext(const FunctionSpec& spec) {
    validate(spec);
    return std::visit(
        [&](const auto& f) -> FixedPointExt {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                DDouble L = (1.0 + sqrt(DDouble(1.0) + 4.0 * DDouble(f.c))) / 2.0;
                return {L, 1.0 / (2.0 * L)};
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                DDouble L(f.l);
                return {L, 1.0 / (static_cast<double>(f.k) * powi(L, f.k - 1))};
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                auto ref = mobius_attracting_root(f.a, f.b, f.d);
                DDouble disc = (DDouble(f.a) - f.d) * (DDouble(f.a) - f.d) + 4.0 * DDouble(f.b);
                DDouble sq = sqrt(disc);
                DDouble L = ref.attracting >= (f.a - f.d) / 2.0
                                ? (DDouble(f.a) - f.d + sq) / 2.0
                                : (DDouble(f.a) - f.d - sq) / 2.0;
                DDouble den = L + f.d;
                return {L, (DDouble(f.a) * f.d - f.b) / (den * den)};
            } else if constexpr (std::is_same_v<F, LogShift>) {
                return {DDouble(f.l), exp(DDouble(-f.l))};
            } else if constexpr (std::is_same_v<F, RationalDemo>) {
                return {DDouble(5.0), DDouble(4.0) / 13.0};
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                return {DDouble(1.0), DDouble(f.alpha)};
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                return {DDouble(0.5), DDouble(1.0) / 3.0};
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                return {exp(DDouble(2.0)), DDouble(0.25)};
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                double k2 = static_cast<double>(f.k) * f.k;
                DDouble L(f.scaled ? static_cast<double>(f.k) : 1.0);
                return {L, DDouble(1.0) / k2};
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                auto ref = mobius_attracting_root(f.a, f.b, 0.0);
                DDouble disc = DDouble(f.a) * f.a + 4.0 * DDouble(f.b);
                DDouble sq = sqrt(disc);
                DDouble L = ref.attracting >= f.a / 2.0 ? (DDouble(f.a) + sq) / 2.0
                                                        : (DDouble(f.a) - sq) / 2.0;
                return {L, -f.b / (L * L)};
            } else {
                return {DDouble(1.0), DDouble(0.5)};
            }
        },
        spec);
}

double newton_seed(const FunctionSpec& spec) {
    return fixed_point(spec).L + 0.5;
}

double newton_fixed_point(const FunctionSpec& spec, double seed, int max_iter) {
    double t = seed;
    for (int i = 0; i < max_iter; ++i) {
        if (!in_domain(spec, t)) throw NoFixedPoint("Newton iterate left the domain");
        double r = eval(spec, t) - t;
        if (std::fabs(r) <= 1e-14 * std::max(1.0, std::fabs(t))) return t;
        double dp = eval_d1(spec, t) - 1.0;
        if (dp == 0.0) throw NoFixedPoint("Newton stalled on f'(t) == 1");
        double step = r / dp;
        if (!std::isfinite(step)) throw NoFixedPoint("Newton step not finite");
        t -= step;
    }
    throw NoFixedPoint("Newton did not converge from seed " + std::to_string(seed));
}

std::pair<double, double> contraction_interval(const FunctionSpec& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (const auto* kr = std::get_if<KthRoot>(&spec)) {
        double lo = kr->l - std::pow(kr->l, kr->k) +
                    std::pow(1.0 / kr->k, static_cast<double>(kr->k) / (kr->k - 1));
        return {lo, inf};
    }
    if (const auto* sa = std::get_if<SqrtAffine>(&spec)) {
        return {0.25 - sa->c, inf};  // f'(t) = 1 at c + t = 1/4
    }
    if (const auto* ci = std::get_if<ChebInverse>(&spec)) {
        // f' decreases from +inf at t = -1 to 1/k^2 at t = 1; bisect f'(z) = 1.
        FunctionSpec unscaled = ChebInverse{ci->k, false};
        double lo = -1.0 + 1e-13, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (eval_d1(unscaled, mid) > 1.0 ? lo : hi) = mid;
        }
        double z = 0.5 * (lo + hi);
        if (ci->scaled) z *= ci->k;
        return {z, inf};
    }
    throw Unsupported("contraction_interval: no closed form for " + family_name(spec) +
                      "; use scan_contraction_interval");
}

std::pair<double, double> scan_contraction_interval(const FunctionSpec& spec, double lo,
                                                    double hi, int grid_points) {
    if (!(hi > lo) || grid_points < 3) throw DomainError("scan_contraction_interval: bad range");
    double L = fixed_point(spec).L;
    double h = (hi - lo) / (grid_points - 1);
    auto ok = [&](double t) {
        if (!in_domain(spec, t)) return false;
        double d = eval_d1(spec, t);
        return d > 0.0 && d < 1.0;
    };
    int iL = static_cast<int>(std::floor((L - lo) / h));
    iL = std::clamp(iL, 0, grid_points - 1);
    if (!ok(lo + iL * h)) throw DomainError("scan: fixed point not in a contraction region");
    int a = iL, b = iL;
    while (a > 0 && ok(lo + (a - 1) * h)) --a;
    while (b + 1 < grid_points && ok(lo + (b + 1) * h)) ++b;
    return {lo + a * h, lo + b * h};
}

RootLikeReport verify_root_like(const FunctionSpec& spec, std::pair<double, double> interval,
                                int grid_points) {
    if (grid_points < 16) throw DomainError("verify_root_like: need at least 16 grid points");
    auto [lo, hi] = interval;
    if (!(hi > lo)) throw DomainError("verify_root_like: empty interval");

    FixedPointInfo fp = fixed_point(spec);
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(grid_points) + 1);
    for (int i = 0; i < grid_points; ++i)
        grid.push_back(lo + (hi - lo) * i / (grid_points - 1));
    bool inside = fp.L > lo && fp.L < hi;
    if (inside) grid.push_back(fp.L);  // the conditions must hold at L itself

    RootLikeReport rep{interval, true, true, true, inside, false};
    for (double t : grid) {
        if (!in_domain(spec, t))
            throw DomainError("verify_root_like: grid point " + std::to_string(t) +
                              " outside the domain");
        double d1 = eval_d1(spec, t);
        double d2 = eval_d2(spec, t);
        if (!(d1 > 0.0)) rep.fprime_positive = false;
        if (!(std::fabs(d1) < 1.0)) rep.is_contraction = false;
        if (!(d2 < 0.0)) rep.fsecond_negative = false;
    }
    rep.verdict = rep.is_contraction && rep.fprime_positive && rep.fsecond_negative &&
                  rep.fixed_point_inside;
    return rep;
}

std::optional<std::pair<double, double>> root_like_interval(const FunctionSpec& spec) {
    return std::visit(
        [&](const auto& f) -> std::optional<std::pair<double, double>> {
            using F = std::decay_t<decltype(f)>;
            double L = fixed_point(spec).L;
            if constexpr (std::is_same_v<F, SqrtAffine> || std::is_same_v<F, KthRoot> ||
                          std::is_same_v<F, ChebInverse>) {
                auto [lo, hi] = contraction_interval(spec);
                (void)hi;
                double pad = 1e-3 * std::max(1.0, std::fabs(L - lo));
                return std::make_pair(lo + pad, L + 6.0);
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                double w = f.a * f.d - f.b;
                if (w <= 0.0) return std::nullopt;  // not increasing: not root-like
                double disc = (f.a - f.d) * (f.a - f.d) + 4.0 * f.b;
                if (disc <= 0.0) return std::nullopt;
                double lo = -f.d + std::sqrt(w);  // f' = 1 here on the right branch
                double pad = 1e-3 * std::max(1.0, L - lo);
                return std::make_pair(lo + pad, L + 6.0);
            } else if constexpr (std::is_same_v<F, LogShift>) {
                double lo = f.l + 1.0 - std::exp(f.l);
                double pad = 1e-3 * std::max(1.0, L - lo);
                return std::make_pair(lo + pad, L + 6.0);
            } else if constexpr (std::is_same_v<F, RationalDemo>) {
                return std::make_pair(3.2, 40.0);  // f' = 1 near 3.155, f'' < 0 past 0.64
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                double lo = std::pow(f.alpha, 1.0 / (1.0 - f.alpha));
                double pad = 1e-3 * (1.0 - lo);
                return std::make_pair(lo + pad, 7.0);
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                return std::make_pair(0.10, 4.0);
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                return std::make_pair(2.0, L + 6.0);
            } else if constexpr (std::is_same_v<F, NonSmoothDemo>) {
                return std::make_pair(-0.28, 2.2);
            } else {
                return std::nullopt;  // continued fractions (m < 0) and the quartic demo
            }
        },
        spec);
}

}  // namespace orbitkit
