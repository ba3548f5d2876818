#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "orbitkit/ddouble.hpp"
#include "orbitkit/errors.hpp"

namespace orbitkit {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational with unbounded integer parts.  Always kept in lowest terms
/// with a positive denominator; backed by boost::multiprecision::cpp_rational.
class BigRational {
  public:
    BigRational() : value_(0) {}
    BigRational(long n) : value_(n) {}  // NOLINT: implicit by design
    BigRational(const BigInt& n) : value_(n) {}
    BigRational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("BigRational with zero denominator");
        BigInt g = boost::multiprecision::gcd(num, den);
        if (g == 0) g = 1;
        if (den < 0) g = -g;
        value_ = Rep(BigInt(num / g), BigInt(den / g));
    }
    BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    bool is_negative() const { return value_ < 0; }
    bool is_integer() const { return denominator() == 1; }

    BigRational operator-() const { return BigRational(Rep(-value_)); }
    BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
    BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
    BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw DomainError("BigRational division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.value_ != b.value_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.value_ < b.value_; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return a.value_ > b.value_; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return a.value_ <= b.value_; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return a.value_ >= b.value_; }

    double to_double() const { return value_.convert_to<double>(); }

    /// "p/q", or just "p" for integers.
    std::string to_fraction_string() const {
        std::string s = numerator().str();
        if (!is_integer()) s += "/" + denominator().str();
        return s;
    }

  private:
    using Rep = boost::multiprecision::cpp_rational;
    explicit BigRational(Rep v) : value_(std::move(v)) {}
    Rep value_;
};

/// Exact binomial coefficient for 0 <= k <= n.
BigRational rational_binomial(unsigned n, unsigned k);

/// abs(x) for BigInt.
inline BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

/// Convert to double-double: relative error about 1e-31.
DDouble to_ddouble(const BigInt& x);
DDouble to_ddouble(const BigRational& r);

/// Scientific-notation decimal string with `digits` significant digits,
/// round-half-up on the guard digit, computed by exact integer division.
std::string decimal_string(const BigRational& r, int digits = 30);

}  // namespace orbitkit
