#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace orbitkit {

/// Double-double real number: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
/// giving roughly 32 significant decimal digits.  Used wherever binary64 would
/// lose the digits of |L - t_n| long before an orbit settles.
///
/// The arithmetic follows the classic error-free transformations (two_sum,
/// two_prod via FMA); transcendentals are argument-reduced Taylor kernels
/// polished with Newton steps where an inverse is needed.
class DDouble {
  public:
    constexpr DDouble() = default;
    constexpr DDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT: implicit by design
    constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}
    static DDouble from_sum(double a, double b);  // renormalizing constructor

    double hi() const { return hi_; }
    double lo() const { return lo_; }
    double to_double() const { return hi_; }

    bool is_zero() const { return hi_ == 0.0; }
    bool is_negative() const { return hi_ < 0.0; }
    bool is_finite() const { return std::isfinite(hi_) && std::isfinite(lo_); }

    DDouble operator-() const { return {-hi_, -lo_}; }

    DDouble& operator+=(const DDouble& b);
    DDouble& operator-=(const DDouble& b);
    DDouble& operator*=(const DDouble& b);
    DDouble& operator/=(const DDouble& b);

    /// Machine epsilon of the format: 2^-104.
    static constexpr double eps = 4.93038065763132e-32;

    static const DDouble pi;
    static const DDouble two_pi;
    static const DDouble pi_half;
    static const DDouble e;
    static const DDouble ln2;

  private:
    double hi_{0.0};
    double lo_{0.0};
};

DDouble operator+(const DDouble& a, const DDouble& b);
DDouble operator-(const DDouble& a, const DDouble& b);
DDouble operator*(const DDouble& a, const DDouble& b);
DDouble operator/(const DDouble& a, const DDouble& b);

inline DDouble operator+(const DDouble& a, double b) { return a + DDouble(b); }
inline DDouble operator+(double a, const DDouble& b) { return DDouble(a) + b; }
inline DDouble operator-(const DDouble& a, double b) { return a - DDouble(b); }
inline DDouble operator-(double a, const DDouble& b) { return DDouble(a) - b; }
inline DDouble operator*(const DDouble& a, double b) { return a * DDouble(b); }
inline DDouble operator*(double a, const DDouble& b) { return DDouble(a) * b; }
inline DDouble operator/(const DDouble& a, double b) { return a / DDouble(b); }
inline DDouble operator/(double a, const DDouble& b) { return DDouble(a) / b; }

bool operator==(const DDouble& a, const DDouble& b);
bool operator<(const DDouble& a, const DDouble& b);
inline bool operator!=(const DDouble& a, const DDouble& b) { return !(a == b); }
inline bool operator>(const DDouble& a, const DDouble& b) { return b < a; }
inline bool operator<=(const DDouble& a, const DDouble& b) { return !(b < a); }
inline bool operator>=(const DDouble& a, const DDouble& b) { return !(a < b); }

DDouble abs(const DDouble& a);
DDouble ldexp(const DDouble& a, int n);
DDouble sqrt(const DDouble& a);
DDouble powi(const DDouble& a, long n);          // integer power, binary exponentiation
DDouble nth_root(const DDouble& a, int k);       // a >= 0, k >= 1
DDouble exp(const DDouble& a);
DDouble log(const DDouble& a);                   // a > 0
DDouble log1p(const DDouble& a);                 // a > -1
DDouble pow(const DDouble& a, const DDouble& b); // a > 0
void sincos(const DDouble& a, DDouble& sin_out, DDouble& cos_out);
DDouble sin(const DDouble& a);
DDouble cos(const DDouble& a);
DDouble asin(const DDouble& a);                  // |a| <= 1
DDouble acos(const DDouble& a);                  // |a| <= 1
DDouble cosh(const DDouble& a);
DDouble acosh(const DDouble& a);                 // a >= 1

inline double to_double(const DDouble& a) { return a.to_double(); }

/// Round-half-even string in scientific notation with `digits` significant digits.
std::string to_string(const DDouble& a, int digits = 30);

std::ostream& operator<<(std::ostream& os, const DDouble& a);

}  // namespace orbitkit
