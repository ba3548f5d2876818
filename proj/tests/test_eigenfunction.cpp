#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitkit/eigenfunction.hpp"
#include "orbitkit/iteration.hpp"

using namespace orbitkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PairCase {
    EigenPair ep;
    double theta_lo, theta_hi;
};

std::vector<PairCase> builtin_pairs() {
    return {
        {eigenpair_two_cos(), 0.1, 1.5},
        {eigenpair_sqrt2_second(), -3.0, 3.0},
        {eigenpair_exp(0.3), -2.0, 2.0},
        {eigenpair_half_exp(), -2.0, 2.0},
        {eigenpair_exp_two_cos(), 0.1, 2.9},
        {eigenpair_cos(4), 0.1, 3.0},
        {eigenpair_k_cos(3), 0.1, 3.0},
        {eigenpair_cheb_second(5), -8.0, 2.0},
    };
}

// Direct-iteration oracle: the candidate tail of an arbitrary map h in
// extended precision (truncation ~ m^n relative).
template <class H>
double tail_limit(H h, const DDouble& L, double m_abs, double t0, int n) {
    DDouble t(t0);
    DDouble c = abs(L - t);
    for (int i = 0; i < n; ++i) {
        DDouble prev = abs(L - t);
        t = h(t);
        c = c * abs(L - t) / (m_abs * prev);
    }
    return to_double(c);
}

}  // namespace

TEST_CASE("eigen pairs satisfy f(phi(theta)) = phi(alpha theta)") {
    for (const PairCase& pc : builtin_pairs()) {
        CAPTURE(pc.ep.name);
        CHECK(pc.ep.phi(0.0) == doctest::Approx(pc.ep.L).epsilon(1e-12));
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double theta = pc.theta_lo + (pc.theta_hi - pc.theta_lo) * i / 200.0;
            double lhs = eval(pc.ep.f, pc.ep.phi(theta));
            double rhs = pc.ep.phi(pc.ep.alpha * theta);
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
        CHECK(worst < 1e-8);
    }
    // the half-angle identity instance is clean to full precision
    EigenPair tc = eigenpair_two_cos();
    double worst = 0.0;
    for (int i = 0; i <= 140; ++i) {
        double theta = 0.1 + (1.5 - 0.1) * i / 140.0;
        worst = std::max(worst,
                         std::fabs(eval(tc.f, tc.phi(theta)) - tc.phi(theta / 2.0)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("multiplier law: m = alpha or alpha^2 by the order of phi at 0") {
    for (const PairCase& pc : builtin_pairs()) {
        CAPTURE(pc.ep.name);
        double m = fixed_point(pc.ep.f).m;
        if (pc.ep.phi_d1_0 != 0.0) {
            CHECK(std::fabs(m - pc.ep.alpha) < 1e-8);
        } else {
            CHECK(pc.ep.phi_d2_0 != 0.0);
            CHECK(std::fabs(m - pc.ep.alpha * pc.ep.alpha) < 1e-8);
        }
    }
}

TEST_CASE("first-order limits") {
    EigenPair pm = eigenpair_exp(0.5);
    CHECK(limit_first_order(pm, 0.7) == doctest::Approx(std::fabs(std::log(0.7))).epsilon(1e-12));
    CHECK(limit_first_order(pm, 1.0) == 0.0);  // theta_0 = 0 at the fixed point

    EigenPair her = eigenpair_half_exp();
    CHECK(limit_first_order(her, 0.3) ==
          doctest::Approx(std::fabs(std::log(0.6)) / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(limit_first_order(eigenpair_two_cos(), 0.5), WrongOrder);

    // numeric cross-check against the iteration module
    double numeric = limit_of(PowerMap{0.5}, 0.7, 1e-8).value;
    CHECK(limit_first_order(pm, 0.7) == doctest::Approx(numeric).epsilon(1e-8));
}

TEST_CASE("second-order limits") {
    EigenPair tc = eigenpair_two_cos();
    CHECK(limit_second_order(tc, 0.0) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-13));
    CHECK(limit_second_order(tc, 2.0) == 0.0);

    EigenPair ec = eigenpair_exp_two_cos();
    CHECK(limit_second_order(ec, 1.0) ==
          doctest::Approx(std::exp(2.0) * kPi * kPi / 4.0).epsilon(1e-12));
    CHECK(limit_second_order(ec, std::exp(2.0)) == doctest::Approx(0.0));

    CHECK_THROWS_AS(limit_second_order(eigenpair_exp(0.5), 0.7), WrongOrder);
}

TEST_CASE("conjugated limits against direct iteration") {
    EigenPair pm = eigenpair_exp(0.4);

    // translate by beta: h(t) = beta + f(t - beta), fixed point 1 + beta
    double beta = 0.7, t0 = 2.0;
    double closed = conjugate_limit(ConjugationKind::translate, beta, pm, t0);
    CHECK(closed == doctest::Approx(std::fabs(std::log(t0 - beta))).epsilon(1e-12));
    auto h_translate = [&](const DDouble& t) {
        return DDouble(beta) + pow(t - beta, DDouble(0.4));
    };
    double numeric = tail_limit(h_translate, DDouble(1.0 + beta), 0.4, t0, 70);
    CHECK(closed == doctest::Approx(numeric).epsilon(1e-8));

    // translate start at the shifted fixed point
    CHECK(conjugate_limit(ConjugationKind::translate, beta, pm, 1.0 + beta) == 0.0);

    // scale by beta: h(t) = beta f(t / beta), fixed point beta
    double sb = 2.0, st0 = 2.6;
    closed = conjugate_limit(ConjugationKind::scale, sb, pm, st0);
    CHECK(closed == doctest::Approx(sb * std::fabs(std::log(st0 / sb))).epsilon(1e-12));
    auto h_scale = [&](const DDouble& t) { return sb * pow(t / sb, DDouble(0.4)); };
    numeric = tail_limit(h_scale, DDouble(sb), 0.4, st0, 70);
    CHECK(closed == doctest::Approx(numeric).epsilon(1e-8));

    CHECK_THROWS_AS(conjugate_limit(ConjugationKind::scale, 0.0, pm, 1.0), DomainError);
    CHECK_THROWS_AS(conjugate_limit(ConjugationKind::translate, 0.5, eigenpair_two_cos(), 1.0),
                    WrongOrder);
}

TEST_CASE("series coefficients for C = 6") {
    RationalSeries rs = build_phi_series(6.0, 6);
    REQUIRE(rs.exact);
    CHECK(rs.L_rat == BigRational(3));
    CHECK(to_double(rs.alpha) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const BigRational want[] = {BigRational(3),          BigRational(1),
                                BigRational(1, 15),      BigRational(1, 525),
                                BigRational(11, 338625), BigRational(97, 263111625)};
    REQUIRE(rs.derivs.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(rs.derivs[static_cast<size_t>(i)] == want[i]);

    CHECK(taylor_coeff(rs, 2) == BigRational(1, 30));
    CHECK(taylor_coeff(rs, 3) == BigRational(1, 3150));
    CHECK(taylor_coeff(rs, 4) == BigRational(11, 8127000));
    CHECK(taylor_coeff(rs, 5) == BigRational(97, BigInt("31573395000")));
}

TEST_CASE("series coefficients for C = 2 match 1/(k (2k-1)!)") {
    RationalSeries rs = build_phi_series(2.0, 12);
    REQUIRE(rs.exact);
    CHECK(rs.L_rat == BigRational(2));
    for (int k = 1; k < 12; ++k) {
        BigRational fact(1);
        for (int i = 2; i <= 2 * k - 1; ++i) fact *= BigRational(i);
        CHECK(taylor_coeff(rs, k) == BigRational(1) / (BigRational(k) * fact));
    }
}

TEST_CASE("series bounds hold exactly out to 200 terms") {
    RationalSeries rs = build_phi_series(6.0, 200);
    REQUIRE(rs.exact);
    REQUIRE(rs.derivs.size() == 200);
    for (int n = 1; n < 200; ++n) {
        CAPTURE(n);
        CHECK(rs.derivs[static_cast<size_t>(n)] <= BigRational(1));
        CHECK(rs.derivs[static_cast<size_t>(n)] > BigRational(0));
        if (n >= 2) {
            // 2 (2^(n-1) - 1) / (6 (6^(n-1) - 1))
            BigInt p2 = 1, p6 = 1;
            for (int i = 0; i < n - 1; ++i) {
                p2 *= 2;
                p6 *= 6;
            }
            BigRational bound(2 * (p2 - 1), 6 * (p6 - 1));
            CHECK(rs.derivs[static_cast<size_t>(n)] <= bound);
        }
    }
}

TEST_CASE("non-square discriminant falls back to extended precision") {
    RationalSeries rs = build_phi_series(3.0, 30);  // 1 + 4C = 13, irrational L
    CHECK_FALSE(rs.exact);
    CHECK(rs.derivs.empty());
    REQUIRE(rs.derivs_dd.size() == 30);
    double L = to_double(rs.L);
    CHECK(L == doctest::Approx((1.0 + std::sqrt(13.0)) / 2.0).epsilon(1e-15));
    // the functional-equation residual of p_12 must be tiny near 0
    SeriesErrorReport rep = phi_series_error(rs, 12, {-1.0, 1.0});
    CHECK(rep.max_error < 1e-10);
}

TEST_CASE("exact and extended series agree where both exist") {
    RationalSeries ex = build_phi_series(6.0, 40);
    for (int n = 0; n < 40; ++n) {
        double a = to_double(ex.derivs_dd[static_cast<size_t>(n)]);
        double b = to_double(to_ddouble(ex.derivs[static_cast<size_t>(n)]));
        CHECK(a == doctest::Approx(b).epsilon(1e-25));
    }
}

TEST_CASE("functional-equation residuals decrease with the order") {
    RationalSeries rs = build_phi_series(6.0, 6);
    SeriesErrorReport e3 = phi_series_error(rs, 3, {-2.0, 2.0});
    SeriesErrorReport e4 = phi_series_error(rs, 4, {-2.0, 2.0});
    SeriesErrorReport e5 = phi_series_error(rs, 5, {-2.0, 2.0});
    CHECK(e3.max_error < 4.5e-6);
    CHECK(e4.max_error < 2.1e-8);
    CHECK(e5.max_error < 5.1e-11);
    CHECK(e3.max_error > e4.max_error);
    CHECK(e4.max_error > e5.max_error);
    CHECK(e3.avg_error <= e3.max_error);
    CHECK(e3.avg_error >= 0.0);

    CHECK_THROWS_AS(phi_series_error(rs, 5, {-2.0, 2.0}, 64), DomainError);   // even
    CHECK_THROWS_AS(phi_series_error(rs, 5, {-2.0, 2.0}, 63), DomainError);   // < 65
    CHECK_THROWS_AS(phi_series_error(rs, 5, {-200.0, -180.0}), RadicandNegative);
}

TEST_CASE("closed-form limits for the sqrt(2+t) chain") {
    CHECK(sqrt2_phi_closed(0.0) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-14));
    CHECK(sqrt2_phi_closed(2.0) == 0.0);
    CHECK(sqrt2_phi_closed(-2.0) == doctest::Approx(kPi * kPi).epsilon(1e-14));
    CHECK(sqrt2_phi_closed(3.0) ==
          doctest::Approx(std::pow(std::acosh(1.5), 2)).epsilon(1e-14));
    CHECK_THROWS_AS(sqrt2_phi_closed(-2.0001), OutOfDomain);

    // identical to the second-order limit of the 2cos pair on [-2, 2]
    EigenPair tc = eigenpair_two_cos();
    for (int i = 0; i <= 100; ++i) {
        double t0 = -2.0 + 4.0 * i / 100.0;
        CHECK(limit_second_order(tc, t0) ==
              doctest::Approx(sqrt2_phi_closed(t0)).epsilon(1e-12));
    }
}

TEST_CASE("the two eigen-functions for sqrt(2+t) are related by x -> sqrt(-x)") {
    RationalSeries rs = build_phi_series(2.0, 12);
    for (int i = 0; i <= 50; ++i) {
        double theta = -2.0 + 1.96 * i / 50.0;  // [-2, -0.04]
        double series = eval_taylor(rs, 11, theta);
        double closed = 2.0 * std::cos(std::sqrt(-theta));
        CHECK(series == doctest::Approx(closed).epsilon(1e-13));
    }
}

TEST_CASE("root of the series polynomial") {
    RationalSeries rs = build_phi_series(6.0, 6);
    double root = phi_root_for_limit(rs, 0.0);
    CHECK(root == doctest::Approx(-3.3656575319).epsilon(1e-9));
    // target = L sits at theta = 0
    CHECK(std::fabs(phi_root_for_limit(rs, 3.0)) < 1e-12);
    CHECK_THROWS_AS(phi_root_for_limit(rs, 1e9), NoBracket);

    // |theta| predicts the numeric candidate limit to 7 decimal places
    double numeric = limit_of(SqrtAffine{6.0}, 0.0, 1e-10).value;
    CHECK(std::fabs(numeric - std::fabs(root)) < 1e-7);
    // and the numeric limit itself is reproducible at 3.3656575397...
    CHECK(numeric == doctest::Approx(3.3656575397).epsilon(1e-9));
}

TEST_CASE("series builder input validation") {
    CHECK_THROWS_AS(build_phi_series(-1.0, 6), DomainError);
    CHECK_THROWS_AS(build_phi_series(6.0, 1), DomainError);
    CHECK_THROWS_AS(build_phi_series(6.0, 201), DomainError);
    CHECK_THROWS_AS(taylor_coeff(build_phi_series(3.0, 6), 2), DomainError);  // not exact
}
