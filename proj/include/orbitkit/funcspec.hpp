#pragma once

#include <string>
#include <type_traits>
#include <variant>

#include "orbitkit/scalar.hpp"

namespace orbitkit {

// The catalog of concrete function families.  Each entry carries its
// parameters; values and analytic first/second derivatives are evaluated
// generically over double or DDouble.

struct SqrtAffine {        // f(t) = sqrt(c + t)
    double c;
};
struct KthRoot {           // f(t) = (l^k - l + t)^(1/k)
    double l;
    int k;
};
struct MobiusFun {         // f(t) = (a t + b) / (t + d), b != a d
    double a, b, d;
};
struct LogShift {          // f(t) = ln(e^l - l + t)
    double l;
};
struct RationalDemo {};    // f(t) = 6 - (2t + 16) / (t^2 + 1)
struct PowerMap {          // f(t) = t^alpha, alpha in (0, 1)
    double alpha;
};
struct ScaledCubeRoot {};  // f(t) = cbrt(t / 4)
struct ExpConjugate {};    // f(t) = exp(sqrt(2 + ln t))
struct ChebInverse {       // increasing-branch inverse of cos(K acos t); optionally K f(t/K)
    int k;
    bool scaled;
};
struct ContinuedFraction { // f(t) = a + b / t
    double a, b;
};
struct NonSmoothDemo {};   // f(t) = 1 + g(t-1), g(t) = .5t - .24t^2 + .024 t^2 |t|
struct QuarticDemo {};     // f(t) = 1 + g(t-1), g(z) = z/2 - z^4/12

using FunctionSpec = std::variant<SqrtAffine, KthRoot, MobiusFun, LogShift, RationalDemo,
                                  PowerMap, ScaledCubeRoot, ExpConjugate, ChebInverse,
                                  ContinuedFraction, NonSmoothDemo, QuarticDemo>;

/// Throws DomainError when parameters violate the family constraints.
void validate(const FunctionSpec& spec);

/// Family name in the canonical text form, e.g. "sqrt_affine".
std::string family_name(const FunctionSpec& spec);

/// Canonical text form, e.g. `sqrt_affine(c=2)` or `cheb_inverse(k=5,scaled=false)`.
std::string format_spec(const FunctionSpec& spec);

/// Parses the canonical text form.  Values may be decimal literals or integer
/// ratios `p/q`.  Throws DomainError on malformed input.
FunctionSpec parse_spec(const std::string& text);

/// True when f(t) is defined (pole-free, radicands nonnegative, logs positive).
bool in_domain(const FunctionSpec& spec, double t);

/// base^k for small nonnegative k, evaluated in T by repeated multiplication.
template <class T>
T powi_scalar(double base, int k) {
    T acc(1.0);
    T b(base);
    for (int i = 0; i < k; ++i) acc *= b;
    return acc;
}

namespace detail {

// T_k, T_k' and T_k'' at x by the three-term recurrences; shared with the
// Chebyshev module.
template <class T>
void cheb_t123(int k, const T& x, T* value, T* d1, T* d2) {
    T tm1(1.0), t0 = x;          // T_0, T_1
    T dm1(0.0), d0(1.0);         // derivatives
    T sm1(0.0), s0(0.0);         // second derivatives
    if (k == 0) { *value = tm1; *d1 = dm1; *d2 = sm1; return; }
    for (int j = 1; j < k; ++j) {
        T t1 = 2.0 * x * t0 - tm1;
        T d1n = 2.0 * t0 + 2.0 * x * d0 - dm1;
        T s1 = 4.0 * d0 + 2.0 * x * s0 - sm1;
        tm1 = t0; t0 = t1;
        dm1 = d0; d0 = d1n;
        sm1 = s0; s0 = s1;
    }
    *value = t0; *d1 = d0; *d2 = s0;
}

// Increasing-branch inverse of T_k on [-1, inf).
template <class T>
T cheb_inverse_value(int k, const T& t) {
    if (t < T(-1.0)) throw OutOfDomain("cheb inverse argument below -1");
    if (t == T(1.0)) return T(1.0);
    if (t < T(1.0)) return cos(acos(t) / static_cast<double>(k));
    return cosh(acosh(t) / static_cast<double>(k));
}

}  // namespace detail

/// f(t).  Throws DomainError when t is outside the family domain.
template <class T>
T eval(const FunctionSpec& spec, const T& t) {
    return std::visit(
        [&](const auto& f) -> T {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                return sqrt(f.c + t);
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                return nth_root(powi_scalar<T>(f.l, f.k) - f.l + t, f.k);
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                T den = t + f.d;
                if (den == T(0.0)) throw DomainError("Mobius pole at t = -d");
                return (f.a * t + f.b) / den;
            } else if constexpr (std::is_same_v<F, LogShift>) {
                return log(exp(T(f.l)) - f.l + t);
            } else if constexpr (std::is_same_v<F, RationalDemo>) {
                return 6.0 - (2.0 * t + 16.0) / (t * t + 1.0);
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                if (t == T(0.0)) return T(0.0);
                return pow(t, T(f.alpha));
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                return nth_root(t / 4.0, 3);
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                return exp(sqrt(2.0 + log(t)));
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                if (!f.scaled) return detail::cheb_inverse_value(f.k, t);
                double kk = static_cast<double>(f.k);
                return kk * detail::cheb_inverse_value(f.k, t / kk);
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                if (t == T(0.0)) throw DomainError("continued fraction pole at t = 0");
                return f.a + f.b / t;
            } else if constexpr (std::is_same_v<F, NonSmoothDemo>) {
                T z = t - 1.0;
                return 1.0 + 0.5 * z - 0.24 * z * z + 0.024 * z * z * abs(z);
            } else {  // QuarticDemo
                T z = t - 1.0;
                return 1.0 + 0.5 * z - z * z * z * z / 12.0;
            }
        },
        spec);
}

/// Analytic f'(t).
template <class T>
T eval_d1(const FunctionSpec& spec, const T& t) {
    return std::visit(
        [&](const auto& f) -> T {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                return 0.5 / sqrt(f.c + t);
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                T radicand = powi_scalar<T>(f.l, f.k) - f.l + t;
                T root = nth_root(radicand, f.k);
                return root / (static_cast<double>(f.k) * radicand);  // (1/k) r^(1/k - 1)
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                T den = t + f.d;
                if (den == T(0.0)) throw DomainError("Mobius pole at t = -d");
                return (f.a * f.d - f.b) / (den * den);
            } else if constexpr (std::is_same_v<F, LogShift>) {
                return 1.0 / (exp(T(f.l)) - f.l + t);
            } else if constexpr (std::is_same_v<F, RationalDemo>) {
                T q = t * t + 1.0;
                return (2.0 * t * t + 32.0 * t - 2.0) / (q * q);
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                return f.alpha * pow(t, T(f.alpha - 1.0));
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                T r = t / 4.0;
                return nth_root(r, 3) / (12.0 * r);
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                T u = sqrt(2.0 + log(t));
                return exp(u) / (2.0 * u * t);
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                T x = f.scaled ? T(t / static_cast<double>(f.k)) : t;
                T fx = detail::cheb_inverse_value(f.k, x);
                T p, dp, d2p;
                detail::cheb_t123(f.k, fx, &p, &dp, &d2p);
                return 1.0 / dp;
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                if (t == T(0.0)) throw DomainError("continued fraction pole at t = 0");
                return -f.b / (t * t);
            } else if constexpr (std::is_same_v<F, NonSmoothDemo>) {
                T z = t - 1.0;
                return 0.5 - 0.48 * z + 0.072 * z * abs(z);
            } else {  // QuarticDemo
                T z = t - 1.0;
                return 0.5 - z * z * z / 3.0;
            }
        },
        spec);
}

/// Analytic f''(t).
template <class T>
T eval_d2(const FunctionSpec& spec, const T& t) {
    return std::visit(
        [&](const auto& f) -> T {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                T r = f.c + t;
                return -0.25 / (r * sqrt(r));
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                T radicand = powi_scalar<T>(f.l, f.k) - f.l + t;
                T root = nth_root(radicand, f.k);
                double k = static_cast<double>(f.k);
                return (1.0 / k) * (1.0 / k - 1.0) * root / (radicand * radicand);
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                T den = t + f.d;
                if (den == T(0.0)) throw DomainError("Mobius pole at t = -d");
                return 2.0 * (f.b - f.a * f.d) / (den * den * den);
            } else if constexpr (std::is_same_v<F, LogShift>) {
                T den = exp(T(f.l)) - f.l + t;
                return -1.0 / (den * den);
            } else if constexpr (std::is_same_v<F, RationalDemo>) {
                T q = t * t + 1.0;
                return -4.0 * (t * t * t + 24.0 * t * t - 3.0 * t - 8.0) / (q * q * q);
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                return f.alpha * (f.alpha - 1.0) * pow(t, T(f.alpha - 2.0));
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                T r = t / 4.0;
                return -nth_root(r, 3) / (72.0 * r * r);
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                T u = sqrt(2.0 + log(t));
                T up = 1.0 / (2.0 * u * t);
                T upp = -(up * t + u) / (2.0 * u * u * t * t);
                return exp(u) * (up * up + upp);
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                T x = f.scaled ? T(t / static_cast<double>(f.k)) : t;
                T fx = detail::cheb_inverse_value(f.k, x);
                T p, dp, d2p;
                detail::cheb_t123(f.k, fx, &p, &dp, &d2p);
                T second = -d2p / (dp * dp * dp);
                return f.scaled ? T(second / static_cast<double>(f.k)) : second;
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                if (t == T(0.0)) throw DomainError("continued fraction pole at t = 0");
                return 2.0 * f.b / (t * t * t);
            } else if constexpr (std::is_same_v<F, NonSmoothDemo>) {
                T z = t - 1.0;
                return -0.48 + 0.144 * abs(z);
            } else {  // QuarticDemo
                T z = t - 1.0;
                return -z * z;
            }
        },
        spec);
}

/// f(t) evaluated in extended precision, relative error around 1e-31.
inline DDouble ext_eval(const FunctionSpec& spec, const DDouble& t) {
    return eval<DDouble>(spec, t);
}

}  // namespace orbitkit
