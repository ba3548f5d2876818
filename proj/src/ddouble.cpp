#include "orbitkit/ddouble.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>
#include <vector>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace {

// Error-free transformations.  two_sum/two_prod return the exact rounding error
// of the double operation in *err.

inline double quick_two_sum(double a, double b, double* err) {
    double s = a + b;
    *err = b - (s - a);  // requires |a| >= |b|
    return s;
}

inline double two_sum(double a, double b, double* err) {
    double s = a + b;
    double bb = s - a;
    *err = (a - (s - bb)) + (b - bb);
    return s;
}

inline double two_prod(double a, double b, double* err) {
    double p = a * b;
    *err = std::fma(a, b, -p);
    return p;
}

}  // namespace

const DDouble DDouble::pi{3.141592653589793, 1.2246467991473532e-16};
const DDouble DDouble::two_pi{6.283185307179586, 2.4492935982947064e-16};
const DDouble DDouble::pi_half{1.5707963267948966, 6.123233995736766e-17};
const DDouble DDouble::e{2.718281828459045, 1.4456468917292502e-16};
const DDouble DDouble::ln2{0.6931471805599453, 2.3190468138462996e-17};

DDouble DDouble::from_sum(double a, double b) {
    double err;
    double s = two_sum(a, b, &err);
    return {s, err};
}

DDouble operator+(const DDouble& a, const DDouble& b) {
    double e1, e2;
    double s1 = two_sum(a.hi(), b.hi(), &e1);
    double s2 = two_sum(a.lo(), b.lo(), &e2);
    e1 += s2;
    s1 = quick_two_sum(s1, e1, &e1);
    e1 += e2;
    s1 = quick_two_sum(s1, e1, &e1);
    return {s1, e1};
}

DDouble operator-(const DDouble& a, const DDouble& b) { return a + (-b); }

DDouble operator*(const DDouble& a, const DDouble& b) {
    double e;
    double p = two_prod(a.hi(), b.hi(), &e);
    e += a.hi() * b.lo() + a.lo() * b.hi();
    p = quick_two_sum(p, e, &e);
    return {p, e};
}

DDouble operator/(const DDouble& a, const DDouble& b) {
    if (b.hi() == 0.0) throw DomainError("DDouble division by zero");
    double q1 = a.hi() / b.hi();
    DDouble r = a - q1 * b;
    double q2 = r.hi() / b.hi();
    r = r - q2 * b;
    double q3 = r.hi() / b.hi();
    double e;
    double s = quick_two_sum(q1, q2, &e);
    return DDouble(s, e) + q3;
}

DDouble& DDouble::operator+=(const DDouble& b) { return *this = *this + b; }
DDouble& DDouble::operator-=(const DDouble& b) { return *this = *this - b; }
DDouble& DDouble::operator*=(const DDouble& b) { return *this = *this * b; }
DDouble& DDouble::operator/=(const DDouble& b) { return *this = *this / b; }

bool operator==(const DDouble& a, const DDouble& b) {
    return a.hi() == b.hi() && a.lo() == b.lo();
}

bool operator<(const DDouble& a, const DDouble& b) {
    return a.hi() < b.hi() || (a.hi() == b.hi() && a.lo() < b.lo());
}

DDouble abs(const DDouble& a) { return a.is_negative() ? -a : a; }

DDouble ldexp(const DDouble& a, int n) {
    return {std::ldexp(a.hi(), n), std::ldexp(a.lo(), n)};
}

DDouble sqrt(const DDouble& a) {
    if (a.is_zero()) return 0.0;
    if (a.is_negative()) throw DomainError("DDouble sqrt of negative value");
    // Karp's trick: one Newton correction on the double estimate.
    double x = 1.0 / std::sqrt(a.hi());
    double ax = a.hi() * x;
    DDouble err = a - DDouble(ax) * DDouble(ax);
    return DDouble::from_sum(ax, err.hi() * x * 0.5);
}

DDouble powi(const DDouble& a, long n) {
    if (n == 0) return 1.0;
    bool invert = n < 0;
    unsigned long m = invert ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    DDouble base = a;
    DDouble result(1.0);
    while (m != 0) {
        if (m & 1UL) result *= base;
        m >>= 1UL;
        if (m != 0) base *= base;
    }
    return invert ? 1.0 / result : result;
}

DDouble nth_root(const DDouble& a, int k) {
    if (k <= 0) throw DomainError("nth_root: k must be positive");
    if (k == 1) return a;
    if (k == 2) return sqrt(a);
    if (a.is_zero()) return 0.0;
    if (a.is_negative()) throw DomainError("nth_root of negative value");
    DDouble x = std::pow(a.hi(), 1.0 / k);
    for (int iter = 0; iter < 3; ++iter) {
        // x <- x - (x^k - a) / (k x^(k-1))
        DDouble xk1 = powi(x, k - 1);
        x = x - (xk1 * x - a) / (static_cast<double>(k) * xk1);
    }
    return x;
}

DDouble exp(const DDouble& a) {
    // exp(m ln2 + r) with r/512 fed to the Taylor series, then 9 squarings.
    if (a.hi() <= -709.0) return 0.0;
    if (a.hi() >= 709.0) throw DomainError("DDouble exp overflow");
    if (a.is_zero()) return 1.0;

    const double inv_k = 1.0 / 512.0;
    double m = std::floor(a.hi() / DDouble::ln2.hi() + 0.5);
    DDouble r = ldexp(a - DDouble::ln2 * m, -9);

    // expm1 Taylor on the reduced argument.
    DDouble p = r * r;              // r^i as the loop runs
    DDouble s = r + ldexp(p, -1);   // r + r^2/2
    double fact = 2.0;
    for (int i = 3; i <= 12; ++i) {
        p *= r;
        fact *= static_cast<double>(i);
        DDouble t = p / fact;
        s += t;
        if (std::abs(t.hi()) <= inv_k * DDouble::eps) break;
    }

    for (int i = 0; i < 9; ++i) s = ldexp(s, 1) + s * s;  // (1+s)^2 - 1
    return ldexp(s + 1.0, static_cast<int>(m));
}

DDouble log(const DDouble& a) {
    if (a.hi() <= 0.0) throw DomainError("DDouble log of non-positive value");
    if (a == DDouble(1.0)) return 0.0;
    DDouble d = a - 1.0;
    if (std::abs(d.hi()) < 0.5) return log1p(d);
    // Newton on exp: y <- y + a e^{-y} - 1 converges quadratically in the
    // absolute error, so two corrections from the double seed suffice.
    DDouble y = std::log(a.hi());
    y = y + a * exp(-y) - 1.0;
    y = y + a * exp(-y) - 1.0;
    return y;
}

DDouble log1p(const DDouble& a) {
    if (a.hi() <= -1.0) throw DomainError("DDouble log1p of value <= -1");
    if (std::abs(a.hi()) >= 0.5) return log(a + 1.0);
    if (a.is_zero()) return 0.0;
    // log1p(y) = 2 atanh(y / (2 + y)); |z| < 0.2 so the odd series is short
    // and, unlike the Newton route, stays accurate in relative terms for
    // arguments far below DDouble::eps.
    DDouble z = a / (a + 2.0);
    DDouble z2 = z * z;
    DDouble term = z;
    DDouble sum = z;
    for (int n = 3; n < 60; n += 2) {
        term *= z2;
        DDouble add = term / static_cast<double>(n);
        sum += add;
        if (std::abs(add.hi()) <= std::abs(sum.hi()) * DDouble::eps) break;
    }
    return ldexp(sum, 1);
}

DDouble pow(const DDouble& a, const DDouble& b) {
    if (a.hi() <= 0.0) throw DomainError("DDouble pow requires a positive base");
    return exp(b * log(a));
}

namespace {

// Taylor kernels valid for |r| <= pi/4.
void sincos_taylor(const DDouble& r, DDouble* s, DDouble* c) {
    DDouble x2 = r * r;
    DDouble term = r;
    DDouble sum = r;
    for (int k = 3; k < 40; k += 2) {
        term *= x2 / static_cast<double>(k * (k - 1));
        term = -term;
        sum += term;
        if (std::abs(term.hi()) <= DDouble::eps) break;
    }
    *s = sum;
    term = 1.0;
    sum = 1.0;
    for (int k = 2; k < 40; k += 2) {
        term *= x2 / static_cast<double>(k * (k - 1));
        term = -term;
        sum += term;
        if (std::abs(term.hi()) <= DDouble::eps) break;
    }
    *c = sum;
}

}  // namespace

void sincos(const DDouble& a, DDouble& sin_out, DDouble& cos_out) {
    if (a.is_zero()) {
        sin_out = 0.0;
        cos_out = 1.0;
        return;
    }
    // Reduce modulo 2*pi, then modulo pi/2.  Arguments here are O(1), so the
    // dd-precision constants carry enough slack.
    double z = std::floor(a.hi() / DDouble::two_pi.hi() + 0.5);
    DDouble r = a - DDouble::two_pi * z;
    double q = std::floor(r.hi() / DDouble::pi_half.hi() + 0.5);
    r = r - DDouble::pi_half * q;
    int quadrant = ((static_cast<int>(q) % 4) + 4) % 4;  // q in [-2, 2]

    DDouble s, c;
    sincos_taylor(r, &s, &c);
    switch (quadrant) {
        case 0: sin_out = s;  cos_out = c;  break;
        case 1: sin_out = c;  cos_out = -s; break;
        case 2: sin_out = -s; cos_out = -c; break;
        default: sin_out = -c; cos_out = s; break;
    }
}

DDouble sin(const DDouble& a) {
    DDouble s, c;
    sincos(a, s, c);
    return s;
}

DDouble cos(const DDouble& a) {
    DDouble s, c;
    sincos(a, s, c);
    return c;
}

namespace {

// Newton for asin on |x| <= 0.71, where cos(theta) stays away from 0.
DDouble asin_kernel(const DDouble& x) {
    if (x.is_zero()) return 0.0;
    DDouble theta = std::asin(x.hi());
    for (int i = 0; i < 2; ++i) {
        DDouble s, c;
        sincos(theta, s, c);
        theta = theta - (s - x) / c;
    }
    return theta;
}

}  // namespace

DDouble asin(const DDouble& a) {
    DDouble x = abs(a);
    if (x > DDouble(1.0)) throw DomainError("DDouble asin argument outside [-1, 1]");
    DDouble r;
    if (x.hi() <= 0.71) {
        r = asin_kernel(x);
    } else {
        // asin(x) = pi/2 - 2 asin(sqrt((1-x)/2)); the auxiliary argument is <= 0.39.
        DDouble u = sqrt(ldexp(1.0 - x, -1));
        r = DDouble::pi_half - ldexp(asin_kernel(u), 1);
    }
    return a.is_negative() ? -r : r;
}

DDouble acos(const DDouble& a) {
    if (abs(a) > DDouble(1.0)) throw DomainError("DDouble acos argument outside [-1, 1]");
    if (a.hi() > 0.5) return ldexp(asin_kernel(sqrt(ldexp(1.0 - a, -1))), 1);
    if (a.hi() < -0.5) return DDouble::pi - ldexp(asin_kernel(sqrt(ldexp(1.0 + a, -1))), 1);
    return DDouble::pi_half - asin_kernel(a);
}

DDouble cosh(const DDouble& a) {
    DDouble ea = exp(a);
    return ldexp(ea + 1.0 / ea, -1);
}

DDouble acosh(const DDouble& a) {
    if (a < DDouble(1.0)) throw DomainError("DDouble acosh argument below 1");
    DDouble u = a - 1.0;  // exact in dd when a is close to 1
    return log1p(u + sqrt(u * (a + 1.0)));
}

std::string to_string(const DDouble& a, int digits) {
    digits = std::clamp(digits, 1, 31);
    if (!a.is_finite()) return std::to_string(a.hi());
    if (a.is_zero()) {
        std::string s = "0.";
        s.append(static_cast<size_t>(digits - 1), '0');
        return s + "e+00";
    }

    bool negative = a.is_negative();
    DDouble x = abs(a);
    int exp10 = static_cast<int>(std::floor(std::log10(x.hi())));
    // Scale into [1, 10); correct the estimate if it is off by one.
    x = x / pow(DDouble(10.0), DDouble(static_cast<double>(exp10)));
    if (x.hi() >= 10.0) {
        x /= 10.0;
        ++exp10;
    } else if (x.hi() < 1.0) {
        x *= 10.0;
        --exp10;
    }

    std::vector<int> digs(static_cast<size_t>(digits) + 1, 0);
    for (int i = 0; i <= digits; ++i) {
        int d = static_cast<int>(x.hi());
        d = std::clamp(d, 0, 9);
        x = (x - static_cast<double>(d)) * 10.0;
        if (x.is_negative() && d > 0) {  // borrow from an overshoot
            --d;
            x += 10.0;
        }
        digs[static_cast<size_t>(i)] = d;
    }
    // Round on the guard digit and propagate carries.
    if (digs[static_cast<size_t>(digits)] >= 5) {
        int i = digits - 1;
        while (i >= 0 && ++digs[static_cast<size_t>(i)] == 10) {
            digs[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) {
            digs.insert(digs.begin(), 1);
            ++exp10;
        }
    }

    std::string out;
    if (negative) out += '-';
    out += static_cast<char>('0' + digs[0]);
    out += '.';
    for (int i = 1; i < digits; ++i) out += static_cast<char>('0' + digs[static_cast<size_t>(i)]);
    out += 'e';
    out += (exp10 < 0 ? '-' : '+');
    int ae = std::abs(exp10);
    std::string es = std::to_string(ae);
    if (es.size() < 2) es.insert(es.begin(), '0');
    return out + es;
}

std::ostream& operator<<(std::ostream& os, const DDouble& a) {
    return os << to_string(a, 30);
}

}  // namespace orbitkit
