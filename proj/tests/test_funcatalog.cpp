#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitkit/catalog.hpp"

using namespace orbitkit;

namespace {

// The whole catalog with a representative in-domain sampling interval and the
// magnitude of the largest intermediate term (the natural ulp scale).
struct Entry {
    FunctionSpec spec;
    double lo, hi;
    double op_scale = 1.0;
};

std::vector<Entry> catalog() {
    return {
        {SqrtAffine{2.0}, -1.5, 12.0},
        {KthRoot{3.0, 3}, -20.0, 12.0},
        {MobiusFun{3.0, 6.0, 4.0}, -1.5, 9.0},
        {LogShift{2.0}, -4.0, 10.0},
        {RationalDemo{}, -6.0, 12.0, 24.0},
        {PowerMap{0.5}, 0.1, 9.0},
        {ScaledCubeRoot{}, 0.05, 6.0},
        {ExpConjugate{}, 0.3, 20.0},
        {ChebInverse{5, false}, -0.95, 8.0},
        {ChebInverse{3, true}, -2.5, 9.0},
        {ContinuedFraction{2.0, 15.0}, 1.0, 9.0, 17.0},
        {NonSmoothDemo{}, -0.2, 2.1, 2.0},
        {QuarticDemo{}, 0.2, 1.8, 2.0},
    };
}

double fd_d1(const FunctionSpec& s, double t) {
    double h = std::max(1.0, std::fabs(t)) * 1e-6;
    return (eval(s, t + h) - eval(s, t - h)) / (2.0 * h);
}

double fd_d2(const FunctionSpec& s, double t) {
    double h = std::max(1.0, std::fabs(t)) * 1e-4;
    return (eval(s, t + h) - 2.0 * eval(s, t) + eval(s, t - h)) / (h * h);
}

}  // namespace

TEST_CASE("fixed points match the documented values") {
    auto fp = fixed_point(SqrtAffine{2.0});
    CHECK(fp.L == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fp.m == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(*fp.s == doctest::Approx(-1.0 / 32.0).epsilon(1e-14));

    fp = fixed_point(KthRoot{3.0, 3});
    CHECK(fp.L == 3.0);
    CHECK(fp.m == doctest::Approx(1.0 / 27.0).epsilon(1e-14));

    fp = fixed_point(MobiusFun{3.0, 6.0, 4.0});
    CHECK(fp.L == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fp.m == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(*fp.s == doctest::Approx(-1.0 / 18.0).epsilon(1e-13));

    fp = fixed_point(RationalDemo{});
    CHECK(fp.L == 5.0);
    CHECK(fp.m == doctest::Approx(4.0 / 13.0).epsilon(1e-14));

    fp = fixed_point(ExpConjugate{});
    CHECK(fp.L == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(fp.m == doctest::Approx(0.25).epsilon(1e-14));

    fp = fixed_point(ContinuedFraction{2.0, 15.0});
    CHECK(fp.L == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(fp.m == doctest::Approx(-0.6).epsilon(1e-14));
}

TEST_CASE("every catalog entry: f(L) = L and the multiplier is attracting") {
    for (const Entry& e : catalog()) {
        FixedPointInfo fp = fixed_point(e.spec);
        CAPTURE(format_spec(e.spec));
        CHECK(std::fabs(eval(e.spec, fp.L) - fp.L) <= 1e-12 * std::max(1.0, std::fabs(fp.L)));
        CHECK(fp.attracting);
        CHECK(std::fabs(fp.m) < 1.0);
        // analytic m agrees with the analytic derivative at L
        CHECK(eval_d1(e.spec, fp.L) == doctest::Approx(fp.m).epsilon(1e-10));
        if (fp.s && std::fabs(*fp.s) > 1e-6)
            CHECK(fd_d2(e.spec, fp.L) == doctest::Approx(*fp.s).epsilon(1e-5));
        // extended-precision fixed point refines the double one
        FixedPointExt fe = fixed_point_ext(e.spec);
        CHECK(to_double(fe.L) == doctest::Approx(fp.L).epsilon(1e-15));
        CHECK(std::fabs(to_double(eval(e.spec, fe.L) - fe.L)) <
              1e-25 * std::max(1.0, fp.L));
    }
}

TEST_CASE("analytic derivatives pass the central-difference gradient check") {
    std::mt19937_64 rng(1812u);
    for (const Entry& e : catalog()) {
        std::uniform_real_distribution<double> pick(e.lo, e.hi);
        int checked = 0;
        while (checked < 100) {
            double t = pick(rng);
            if (!in_domain(e.spec, t)) continue;
            // keep clear of the NonSmoothDemo kink where f''' does not exist
            if (std::holds_alternative<NonSmoothDemo>(e.spec) && std::fabs(t - 1.0) < 1e-3)
                continue;
            CAPTURE(format_spec(e.spec));
            CAPTURE(t);
            double d1 = eval_d1(e.spec, t);
            CHECK(fd_d1(e.spec, t) == doctest::Approx(d1).epsilon(1e-6));
            double d2 = eval_d2(e.spec, t);
            if (std::fabs(d2) > 1e-4)  // below this the fd quotient is mostly noise
                CHECK(fd_d2(e.spec, t) == doctest::Approx(d2).epsilon(1e-4));
            ++checked;
        }
    }
}

TEST_CASE("extended evaluation agrees with binary64 to a few ulps") {
    std::mt19937_64 rng(4242u);
    for (const Entry& e : catalog()) {
        std::uniform_real_distribution<double> pick(e.lo, e.hi);
        int checked = 0;
        while (checked < 1000) {
            double t = pick(rng);
            if (!in_domain(e.spec, t)) continue;
            double dbl = eval(e.spec, t);
            double ext = to_double(ext_eval(e.spec, DDouble(t)));
            CAPTURE(format_spec(e.spec));
            CAPTURE(t);
            // ulps at the scale the evaluation works at: some families cancel
            // larger intermediate terms down to a small f(t)
            CHECK(std::fabs(dbl - ext) <= 4.0 * ulp_of(std::max(std::fabs(dbl), e.op_scale)));
            ++checked;
        }
    }
}

TEST_CASE("ext_eval catalog examples") {
    CHECK(to_double(ext_eval(SqrtAffine{2.0}, DDouble(2.0))) == 2.0);
    CHECK(to_double(ext_eval(MobiusFun{3.0, 6.0, 4.0}, DDouble(0.0))) == 1.5);
    // sqrt(2) against an independent high-precision reference
    DDouble sqrt2_ref(1.4142135623730951, -9.667293313452913e-17);
    DDouble got = ext_eval(SqrtAffine{2.0}, DDouble(0.0));
    CHECK(std::fabs(to_double(got - sqrt2_ref)) < 1e-30);
}

TEST_CASE("multiplier formula for the k-th root family") {
    for (int k : {2, 3, 5}) {
        for (double L : {1.5, 2.0, 3.0, 7.0}) {
            FixedPointInfo fp = fixed_point(KthRoot{L, k});
            CHECK(fp.m == 1.0 / (k * std::pow(L, k - 1)));
        }
    }
}

TEST_CASE("contraction intervals in closed form") {
    // k = 2: lo = L - L^2 + 1/4; the derivative equals 1 there
    auto [lo2, hi2] = contraction_interval(KthRoot{2.0, 2});
    CHECK(lo2 == doctest::Approx(2.0 - 4.0 + 0.25).epsilon(1e-14));
    CHECK(std::isinf(hi2));
    CHECK(eval_d1(KthRoot{2.0, 2}, lo2 + 1e-12) == doctest::Approx(1.0).epsilon(1e-5));

    // k = 3: lo = L - L^3 + 1/sqrt(27)
    auto [lo3, hi3] = contraction_interval(KthRoot{3.0, 3});
    CHECK(lo3 == doctest::Approx(3.0 - 27.0 + 1.0 / std::sqrt(27.0)).epsilon(1e-14));
    CHECK(std::isinf(hi3));

    auto [losa, hisa] = contraction_interval(SqrtAffine{2.0});
    CHECK(losa == doctest::Approx(0.25 - 2.0).epsilon(1e-14));
    CHECK(std::isinf(hisa));

    // Chebyshev inverse: f'(z) = 1 at the reported endpoint
    for (int k : {2, 3, 5}) {
        auto [z, hi] = contraction_interval(ChebInverse{k, false});
        CHECK(std::isinf(hi));
        CHECK(z > -1.0);
        CHECK(z < 1.0);
        CHECK(eval_d1(ChebInverse{k, false}, z) == doctest::Approx(1.0).epsilon(1e-9));
        auto [zs, his] = contraction_interval(ChebInverse{k, true});
        (void)his;
        CHECK(zs == doctest::Approx(k * z).epsilon(1e-12));
    }

    CHECK_THROWS_AS(contraction_interval(RationalDemo{}), Unsupported);
    auto scanned = scan_contraction_interval(RationalDemo{}, 0.0, 50.0, 20000);
    CHECK(scanned.first == doctest::Approx(3.1554).epsilon(1e-2));
    CHECK(scanned.second > 40.0);
}

TEST_CASE("root-likeness verdicts") {
    auto rep = verify_root_like(SqrtAffine{2.0}, {-1.0, 10.0}, 64);
    CHECK(rep.verdict);
    CHECK(rep.is_contraction);
    CHECK(rep.fprime_positive);
    CHECK(rep.fsecond_negative);

    // f''(1) = 0 for the quartic demo, so the verdict fails at the fixed point
    rep = verify_root_like(QuarticDemo{}, {0.5, 1.5}, 64);
    CHECK_FALSE(rep.verdict);
    CHECK_FALSE(rep.fsecond_negative);
    CHECK(rep.fprime_positive);

    rep = verify_root_like(NonSmoothDemo{}, {-0.28, 2.2}, 64);
    CHECK(rep.verdict);

    // widening past the documented interval breaks the contraction condition
    rep = verify_root_like(NonSmoothDemo{}, {-0.35, 2.2}, 256);
    CHECK_FALSE(rep.verdict);

    CHECK_THROWS_AS(verify_root_like(SqrtAffine{2.0}, {-1.0, 10.0}, 8), DomainError);
    CHECK_THROWS_AS(verify_root_like(SqrtAffine{2.0}, {-3.0, 10.0}, 64), DomainError);
}

TEST_CASE("newton refinement agrees with the closed forms") {
    for (const Entry& e : catalog()) {
        if (std::holds_alternative<NonSmoothDemo>(e.spec)) continue;  // kink at L
        FixedPointInfo fp = fixed_point(e.spec);
        double t = newton_fixed_point(e.spec, newton_seed(e.spec));
        CAPTURE(format_spec(e.spec));
        CHECK(t == doctest::Approx(fp.L).epsilon(1e-10));
    }
    CHECK_THROWS_AS(newton_fixed_point(SqrtAffine{2.0}, -1.99999), NoFixedPoint);
}

TEST_CASE("canonical text form round-trips") {
    const char* forms[] = {
        "sqrt_affine(c=2)",
        "kth_root(l=3,k=3)",
        "mobius(a=3,b=6,d=4)",
        "log_shift(l=2)",
        "rational_demo()",
        "power_map(alpha=0.5)",
        "scaled_cube_root()",
        "exp_conjugate()",
        "cheb_inverse(k=5,scaled=false)",
        "continued_fraction(a=2,b=15)",
        "non_smooth_demo()",
        "quartic_demo()",
    };
    for (const char* f : forms) {
        FunctionSpec s = parse_spec(f);
        CHECK(format_spec(parse_spec(format_spec(s))) == format_spec(s));
    }
    // ratios, whitespace, booleans
    CHECK(format_spec(parse_spec(" mobius( a = 1/2, b = 3, d = -1 ) ")) ==
          "mobius(a=0.5,b=3,d=-1)");
    CHECK(format_spec(parse_spec("cheb_inverse(k=5,scaled=true)")) ==
          "cheb_inverse(k=5,scaled=true)");
    CHECK_THROWS_AS(parse_spec("sqrt_affine(c=2"), DomainError);
    CHECK_THROWS_AS(parse_spec("unknown_family()"), DomainError);
    CHECK_THROWS_AS(parse_spec("sqrt_affine(c=2,z=1)"), DomainError);
    CHECK_THROWS_AS(parse_spec("mobius(a=1,b=2)"), DomainError);
    CHECK_THROWS_AS(parse_spec("mobius(a=1,b=4,d=4)"), DomainError);  // b == a d
    CHECK_THROWS_AS(parse_spec("power_map(alpha=1.5)"), DomainError);
}

TEST_CASE("domain errors at evaluation") {
    CHECK_THROWS_AS(eval(SqrtAffine{2.0}, -2.5), DomainError);
    CHECK_THROWS_AS(eval(MobiusFun{3.0, 6.0, 4.0}, -4.0), DomainError);
    CHECK_THROWS_AS(eval(ContinuedFraction{2.0, 15.0}, 0.0), DomainError);
    CHECK_THROWS_AS(eval(ChebInverse{4, false}, -1.001), DomainError);
    CHECK_THROWS_AS(eval(ExpConjugate{}, 0.1), DomainError);
    CHECK(in_domain(SqrtAffine{2.0}, -2.0));
    CHECK_FALSE(in_domain(SqrtAffine{2.0}, -2.0000001));
}
