#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitkit/rational.hpp"

using orbitkit::BigInt;
using orbitkit::BigRational;
using orbitkit::DDouble;
using orbitkit::to_ddouble;

namespace {

BigRational rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    return {num(rng), den(rng)};
}

}  // namespace

TEST_CASE("arithmetic is exact: (p/q + r/s) - r/s == p/q") {
    std::mt19937_64 rng(31337u);
    for (int i = 0; i < 1000; ++i) {
        BigRational a = rand_rat(rng);
        BigRational b = rand_rat(rng);
        CHECK((a + b) - b == a);
        CHECK((a * b) == (b * a));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("always lowest terms with positive denominator") {
    BigRational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(BigRational(0, 7).to_fraction_string() == "0");
    CHECK(BigRational(10, 5).to_fraction_string() == "2");
    CHECK(BigRational(-9, 12).to_fraction_string() == "-3/4");
    CHECK_THROWS_AS(BigRational(1, 0), orbitkit::DomainError);
}

TEST_CASE("binomial coefficients") {
    CHECK(orbitkit::rational_binomial(5, 1) == BigRational(5));
    CHECK(orbitkit::rational_binomial(5, 2) == BigRational(10));
    CHECK(orbitkit::rational_binomial(6, 3) == BigRational(20));
    CHECK(orbitkit::rational_binomial(0, 0) == BigRational(1));
    // Pascal identity on a few rows
    for (unsigned n = 2; n <= 40; ++n)
        for (unsigned k = 1; k < n; ++k)
            CHECK(orbitkit::rational_binomial(n, k) ==
                  orbitkit::rational_binomial(n - 1, k - 1) +
                      orbitkit::rational_binomial(n - 1, k));
    CHECK_THROWS_AS(orbitkit::rational_binomial(3, 5), orbitkit::DomainError);
}

TEST_CASE("conversion to double-double is faithful") {
    std::mt19937_64 rng(5150u);
    for (int i = 0; i < 500; ++i) {
        BigRational r = rand_rat(rng);
        if (r.is_zero()) continue;
        DDouble x = to_ddouble(r);
        // multiply back by the denominator; must recover the numerator
        DDouble back = x * to_ddouble(BigInt(r.denominator()));
        DDouble want = to_ddouble(BigInt(r.numerator()));
        double rel = std::abs(orbitkit::to_double(back - want)) /
                     std::max(1.0, std::abs(orbitkit::to_double(want)));
        CHECK(rel < 1e-30);
    }
    // an integer beyond 2^53 must survive exactly
    BigInt big("12345678901234567890123");
    DDouble x = to_ddouble(big);
    CHECK(orbitkit::to_double(x) == doctest::Approx(1.2345678901234568e22));
}

TEST_CASE("decimal_string: exact scientific output by long division") {
    CHECK(orbitkit::decimal_string(BigRational(1, 3), 30) ==
          "3.33333333333333333333333333333e-01");
    CHECK(orbitkit::decimal_string(BigRational(2), 5) == "2.0000e+00");
    CHECK(orbitkit::decimal_string(BigRational(-1, 8), 10) == "-1.250000000e-01");
    CHECK(orbitkit::decimal_string(BigRational(999, 1000), 2) == "1.0e+00");  // carry
    CHECK(orbitkit::decimal_string(BigRational(97, BigInt("31573395000")), 12) ==
          "3.07220683743e-09");
    CHECK(orbitkit::decimal_string(BigRational(0), 4) == "0.000e+00");
    // round-half-up on the guard digit
    CHECK(orbitkit::decimal_string(BigRational(25, 1000), 1) == "3e-02");
    CHECK(orbitkit::decimal_string(BigRational(24, 1000), 1) == "2e-02");
}
