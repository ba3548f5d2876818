#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitkit/eigenfunction.hpp"
#include "orbitkit/koenigs.hpp"

using namespace orbitkit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("principal square root halves the argument") {
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> rad(0.01, 100.0);
    std::uniform_real_distribution<double> ang(-kPi + 1e-9, kPi);
    for (int i = 0; i < 500; ++i) {
        Complex z = std::polar(rad(rng), ang(rng));
        Complex s = principal_sqrt(z);
        CHECK(std::abs(s * s - z) < 1e-12 * std::abs(z));
        CHECK(std::arg(s) == doctest::Approx(std::arg(z) / 2.0).epsilon(1e-12));
        CHECK(s.real() >= 0.0);  // halved argument lies in (-pi/2, pi/2]
    }
    // positive real axis stays exactly real
    Complex r = principal_sqrt(Complex(9.0, 0.0));
    CHECK(r.real() == 3.0);
    CHECK(r.imag() == 0.0);
}

TEST_CASE("the square-root family maps its disk into itself") {
    for (double L : {1.25, 2.0, 3.0, 10.0}) {
        DiskCheckResult res = disk_self_map_check(L, 10000);
        CAPTURE(L);
        CHECK(res.ok);
        CHECK(res.min_margin > 0.0);
        CHECK(std::abs(res.worst_point - Complex(L, 0.0)) < L);
    }
    // the disk center is fixed with full margin
    DiskCheckResult res = disk_self_map_check(2.0, 100);
    CHECK(res.min_margin <= 2.0);
    CHECK_THROWS_AS(disk_self_map_check(0.9, 1000), DomainError);
    CHECK_THROWS_AS(disk_self_map_check(2.0, 50), DomainError);
}

TEST_CASE("non-surjectivity witness z = L + 2/3") {
    for (double L : {1.25, 2.0, 3.0, 10.0}) {
        double z = L + 2.0 / 3.0;
        CHECK(z < 2.0 * L);                    // z lies in the disk (on the real axis)
        CHECK(z * z > L * L + L);              // z^2 escapes the translated disk
    }
}

TEST_CASE("cardioid containment") {
    for (double L : {1.25, 2.0, 3.0, 10.0}) CHECK(cardioid_containment_check(L, 1000));
    // circle radius at theta = 0 is 2L^2, cardioid reaches 4L^2: strict inclusion
    double L = 2.0, R = 2.0 * L * L;
    CHECK(R < 2.0 * R);
    // squaring random polar samples of the disk lands inside the cardioid
    std::mt19937_64 rng(99u);
    std::uniform_real_distribution<double> ang(-kPi / 2.0, kPi / 2.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double th = ang(rng);
        double r = frac(rng) * 2.0 * L * std::cos(th);
        CHECK(r * r <= 2.0 * L * L * (1.0 + std::cos(2.0 * th)) + 1e-12);
    }
}

TEST_CASE("koenigs approximants: fixed point, convergence, candidate link") {
    double L = 2.0;
    // the fixed point maps to the disk center for every n
    for (long n : {0L, 1L, 5L, 12L}) {
        Complex v = koenigs_approximant(L, Complex(L, 0.0), n);
        CHECK(std::abs(v) == 0.0);
    }

    // successive approximants are Cauchy near the fixed point
    Complex z(1.6, 0.3);
    double prev_gap = 1e100;
    for (long n = 1; n <= 10; ++n) {
        double gap = std::abs(koenigs_approximant(L, z, n + 1) - koenigs_approximant(L, z, n));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }

    // on the real axis, L |phi_n| is the double-precision candidate value
    FunctionSpec spec = SqrtAffine{L * L - L};
    for (double t0 : {0.5, 1.0, 3.5}) {
        auto cs = candidate_sequence(spec, t0, 5, Precision::double_prec);
        for (long n = 1; n <= 5; ++n) {
            double koenigs = L * std::abs(koenigs_approximant(L, Complex(t0, 0.0), n));
            double cand = to_double(cs.c[static_cast<size_t>(n)]);
            CAPTURE(t0);
            CAPTURE(n);
            CHECK(koenigs == doctest::Approx(cand).epsilon(1e-12));
        }
        // deeper iterates agree to the cancellation envelope of binary64
        auto cs12 = candidate_sequence(spec, t0, 12, Precision::double_prec);
        double koenigs12 = L * std::abs(koenigs_approximant(L, Complex(t0, 0.0), 12));
        CHECK(koenigs12 == doctest::Approx(to_double(cs12.c[12])).epsilon(1e-6));
    }

    CHECK_THROWS_AS(koenigs_approximant(L, Complex(4.5, 0.0), 3), DomainError);  // outside disk
}

TEST_CASE("C(L) evaluator") {
    CHECK(currie_c(2.0) == doctest::Approx(kPi).epsilon(1e-8));
    // closed-form route: C(2) = 2 sqrt(limit at t0 = 0) = 2 sqrt(pi^2/4)
    CHECK(2.0 * std::sqrt(sqrt2_phi_closed(0.0)) == doctest::Approx(kPi).epsilon(1e-14));

    for (double L : {1.25, 1.5, 3.0, 4.0}) {
        double c = currie_c(L);
        CAPTURE(L);
        CHECK(std::isfinite(c));
        CHECK(c > 0.0);
    }
    // reproducible across calls (pure function)
    CHECK(currie_c(1.5) == currie_c(1.5));
    CHECK_THROWS_AS(currie_c(1.0), DomainError);
}
