#include "orbitkit/eigenfunction.hpp"

#include <algorithm>
#include <cmath>

namespace orbitkit {

EigenPair eigenpair_two_cos() {
    return {"two_cos",
            SqrtAffine{2.0},
            0.5,
            2.0,
            0.0,
            -2.0,
            [](double x) { return 2.0 * std::cos(x); },
            [](double t) { return std::acos(t / 2.0); }};
}

EigenPair eigenpair_sqrt2_second() {
    return {"sqrt2_second",
            SqrtAffine{2.0},
            0.25,
            2.0,
            1.0,
            1.0 / 6.0,
            [](double x) {
                return x < 0.0 ? 2.0 * std::cos(std::sqrt(-x)) : 2.0 * std::cosh(std::sqrt(x));
            },
            [](double t) {
                if (t < -2.0) throw OutOfDomain("sqrt2_second inverse below -2");
                if (t <= 2.0) {
                    double r = std::acos(t / 2.0);
                    return -r * r;
                }
                double r = std::acosh(t / 2.0);
                return r * r;
            }};
}

EigenPair eigenpair_exp(double alpha) {
    return {"exp",
            PowerMap{alpha},
            alpha,
            1.0,
            1.0,
            1.0,
            [](double x) { return std::exp(x); },
            [](double t) { return std::log(t); }};
}

EigenPair eigenpair_half_exp() {
    return {"half_exp",
            ScaledCubeRoot{},
            1.0 / 3.0,
            0.5,
            0.5,
            0.5,
            [](double x) { return 0.5 * std::exp(x); },
            [](double t) { return std::log(2.0 * t); }};
}

EigenPair eigenpair_exp_two_cos() {
    double e2 = std::exp(2.0);
    return {"exp_two_cos",
            ExpConjugate{},
            0.5,
            e2,
            0.0,
            -2.0 * e2,
            [](double x) { return std::exp(2.0 * std::cos(x)); },
            [](double t) { return std::acos(std::log(t) / 2.0); }};
}

EigenPair eigenpair_cos(int k) {
    return {"cos",
            ChebInverse{k, false},
            1.0 / k,
            1.0,
            0.0,
            -1.0,
            [](double x) { return std::cos(x); },
            [](double t) { return std::acos(t); }};
}

EigenPair eigenpair_k_cos(int k) {
    double kk = k;
    return {"k_cos",
            ChebInverse{k, true},
            1.0 / k,
            kk,
            0.0,
            -kk,
            [kk](double x) { return kk * std::cos(x); },
            [kk](double t) { return std::acos(t / kk); }};
}

EigenPair eigenpair_cheb_second(int k) {
    return {"cheb_second",
            ChebInverse{k, false},
            1.0 / (static_cast<double>(k) * k),
            1.0,
            0.5,
            1.0 / 12.0,  // cos(sqrt(-x)) = 1 + x/2 + x^2/24 + ...
            [](double x) {
                return x < 0.0 ? std::cos(std::sqrt(-x)) : std::cosh(std::sqrt(x));
            },
            [](double t) {
                if (t < -1.0) throw OutOfDomain("cheb_second inverse below -1");
                if (t <= 1.0) {
                    double r = std::acos(t);
                    return -r * r;
                }
                double r = std::acosh(t);
                return r * r;
            }};
}

double limit_first_order(const EigenPair& ep, double t0) {
    if (ep.phi_d1_0 == 0.0)
        throw WrongOrder("limit_first_order: phi'(0) = 0; use limit_second_order");
    return std::fabs(ep.phi_inverse(t0) * ep.phi_d1_0);
}

double limit_second_order(const EigenPair& ep, double t0) {
    if (ep.phi_d1_0 != 0.0)
        throw WrongOrder("limit_second_order: phi'(0) != 0; use limit_first_order");
    if (ep.phi_d2_0 == 0.0) throw WrongOrder("limit_second_order: phi''(0) = 0");
    double theta = ep.phi_inverse(t0);
    return std::fabs(theta * theta * ep.phi_d2_0 / 2.0);
}

double conjugate_limit(ConjugationKind kind, double beta, const EigenPair& base, double t0) {
    if (base.phi_d1_0 == 0.0)
        throw WrongOrder("conjugate_limit: base pair must have phi'(0) != 0");
    if (kind == ConjugationKind::translate)
        return std::fabs(base.phi_inverse(t0 - beta) * base.phi_d1_0);
    if (beta == 0.0) throw DomainError("conjugate_limit: scale factor must be nonzero");
    return std::fabs(base.phi_inverse(t0 / beta) * beta * base.phi_d1_0);
}

namespace {

// Exact rational from the binary64 value: mantissa * 2^exponent.
BigRational rational_from_double(double x) {
    if (x == 0.0) return BigRational(0);
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    BigRational r{BigInt(mant)};
    BigInt two_p = BigInt(1) << std::abs(e);
    return e >= 0 ? r * BigRational(two_p) : r / BigRational(two_p);
}

// Rational square root when it exists.
bool rational_sqrt(const BigRational& x, BigRational* out) {
    if (x.is_negative()) return false;
    BigInt num = x.numerator(), den = x.denominator();
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    *out = BigRational(sn, sd);
    return true;
}

// Straightforward rational recursion.  The per-operation gcd normalization
// makes this quadratic-with-huge-gcds; it is kept for the rare non-integer-2L
// case and as the fallback of the scaled-integer path.
void build_exact_generic(const BigRational& twoL, const BigRational& L, int n_terms,
                         std::vector<BigRational>* derivs) {
    derivs->clear();
    derivs->push_back(L);
    derivs->push_back(BigRational(1));
    for (int n = 2; n < n_terms; ++n) {
        BigRational sum(0);
        for (int k = 1; k < n; ++k)
            sum += rational_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) *
                   (*derivs)[static_cast<size_t>(k)] * (*derivs)[static_cast<size_t>(n - k)];
        BigRational growth(1);
        for (int i = 0; i < n; ++i) growth *= twoL;
        BigRational den = growth - twoL;
        if (den.is_zero()) throw NonIntegerGrowth("build_phi_series: (2L)^n == 2L");
        derivs->push_back(sum / den);
    }
}

// Scaled-integer recursion for integer w = 2L.  With B_n = prod_{j=2}^n
// (w^j - w), the scaled derivatives A_n = phi^(n)(0) * B_n stay integral, and
// the level-n sum clears denominators against Q = B_{floor(n/2)}:
//   A_n = sum_k C(n,k) A_k A_{n-k} * (B_{n-1}/B_{n-k}) * (Q/B_k) / Q.
// Every factor is an integer and the one division per level is exact, so no
// gcd is ever taken; exactness is verified by the division remainder.
void build_exact_scaled(const BigInt& w, const BigRational& L, int n_terms,
                        std::vector<BigRational>* derivs) {
    std::vector<BigInt> wpow{1, w};  // w^j
    for (int j = 2; j < n_terms + 1; ++j) wpow.push_back(wpow.back() * w);
    auto factor = [&](int j) { return BigInt(wpow[static_cast<size_t>(j)] - w); };

    std::vector<BigInt> b{1, 1};  // B_0, B_1
    std::vector<BigInt> a{0, 1};  // A_0 unused (index 0 never enters the sum); A_1 = 1
    derivs->clear();
    derivs->push_back(L);
    derivs->push_back(BigRational(1));

    for (int n = 2; n < n_terms; ++n) {
        BigInt growth = factor(n);
        if (growth == 0) throw NonIntegerGrowth("build_phi_series: (2L)^n == 2L");
        b.push_back(b.back() * growth);

        int half = n / 2;
        // suffix[k] = Q/B_k for Q = B_half
        std::vector<BigInt> suffix(static_cast<size_t>(half) + 1);
        suffix[static_cast<size_t>(half)] = 1;
        for (int k = half - 1; k >= 1; --k)
            suffix[static_cast<size_t>(k)] = suffix[static_cast<size_t>(k) + 1] * factor(k + 1);

        BigInt sum = 0;
        BigInt pair_scale = 1;  // B_{n-1}/B_{n-k}, grown as k increases
        for (int k = 1; k <= half; ++k) {
            if (k > 1) pair_scale *= factor(n - k + 1);
            BigInt term = rational_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))
                              .numerator() *
                          a[static_cast<size_t>(k)] * a[static_cast<size_t>(n - k)] *
                          pair_scale * suffix[static_cast<size_t>(k)];
            if (k != n - k) term *= 2;
            sum += term;
        }

        BigInt q = b[static_cast<size_t>(half)];
        BigInt quot, rem;
        boost::multiprecision::divide_qr(sum, q, quot, rem);
        if (rem != 0) {  // scaled values stopped being integral; use the slow path
            build_exact_generic(BigRational(w), L, n_terms, derivs);
            return;
        }
        a.push_back(quot);
        derivs->push_back(BigRational(quot, b.back()));
    }
}

}  // namespace

RationalSeries build_phi_series(double C, int n_terms) {
    if (!(C > 0.0)) throw DomainError("build_phi_series: C must be positive");
    if (n_terms < 2 || n_terms > 200)
        throw DomainError("build_phi_series: n_terms must be in [2, 200]");

    RationalSeries out;
    out.C = C;
    BigRational c_rat = rational_from_double(C);
    BigRational disc = BigRational(1) + BigRational(4) * c_rat;
    BigRational sq;
    out.exact = rational_sqrt(disc, &sq);

    if (out.exact) {
        out.L_rat = (BigRational(1) + sq) / BigRational(2);
        out.L = to_ddouble(out.L_rat);
        out.alpha = 1.0 / (2.0 * out.L);
        BigRational twoL = BigRational(2) * out.L_rat;
        if (twoL.is_integer()) {
            build_exact_scaled(twoL.numerator(), out.L_rat, n_terms, &out.derivs);
        } else {
            build_exact_generic(twoL, out.L_rat, n_terms, &out.derivs);
        }
        out.derivs_dd.reserve(out.derivs.size());
        for (const auto& d : out.derivs) out.derivs_dd.push_back(to_ddouble(d));
    } else {
        out.L = (1.0 + sqrt(DDouble(1.0) + 4.0 * DDouble(C))) / 2.0;
        out.alpha = 1.0 / (2.0 * out.L);
        out.derivs_dd.push_back(out.L);
        out.derivs_dd.push_back(DDouble(1.0));
        DDouble twoL = 2.0 * out.L;
        for (int n = 2; n < n_terms; ++n) {
            DDouble sum(0.0);
            for (int k = 1; k < n; ++k)
                sum += to_ddouble(rational_binomial(static_cast<unsigned>(n),
                                                    static_cast<unsigned>(k))) *
                       out.derivs_dd[static_cast<size_t>(k)] *
                       out.derivs_dd[static_cast<size_t>(n - k)];
            DDouble den = powi(twoL, n) - twoL;
            if (den.is_zero()) throw NonIntegerGrowth("build_phi_series: (2L)^n == 2L");
            out.derivs_dd.push_back(sum / den);
        }
    }
    return out;
}

BigRational taylor_coeff(const RationalSeries& rs, int k) {
    if (!rs.exact) throw DomainError("taylor_coeff: series is not in exact mode");
    if (k < 0 || k >= static_cast<int>(rs.derivs.size()))
        throw DomainError("taylor_coeff: index out of range");
    BigRational fact(1);
    for (int i = 2; i <= k; ++i) fact *= BigRational(i);
    return rs.derivs[static_cast<size_t>(k)] / fact;
}

namespace {

std::vector<double> taylor_coeffs_double(const RationalSeries& rs, int order) {
    if (order < 0 || order >= static_cast<int>(rs.derivs_dd.size()))
        throw DomainError("eval_taylor: order exceeds the built series");
    std::vector<double> c(static_cast<size_t>(order) + 1);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 1) fact *= k;
        c[static_cast<size_t>(k)] = to_double(rs.derivs_dd[static_cast<size_t>(k)]) / fact;
    }
    return c;
}

}  // namespace

double eval_taylor(const RationalSeries& rs, int order, double theta) {
    auto c = taylor_coeffs_double(rs, order);
    double acc = 0.0;
    for (int k = order; k >= 0; --k) acc = acc * theta + c[static_cast<size_t>(k)];
    return acc;
}

double eval_taylor_d1(const RationalSeries& rs, int order, double theta) {
    auto c = taylor_coeffs_double(rs, order);
    double acc = 0.0;
    for (int k = order; k >= 1; --k) acc = acc * theta + k * c[static_cast<size_t>(k)];
    return acc;
}

SeriesErrorReport phi_series_error(const RationalSeries& rs, int order,
                                   std::pair<double, double> range, int quad_points) {
    if (quad_points < 65 || quad_points % 2 == 0)
        throw DomainError("phi_series_error: quad_points must be odd and >= 65");
    auto [lo, hi] = range;
    if (!(hi > lo)) throw DomainError("phi_series_error: empty range");
    double alpha = to_double(rs.alpha);

    auto err_at = [&](double theta) {
        double p = eval_taylor(rs, order, theta);
        double radicand = rs.C + p;
        if (radicand <= 0.0)
            throw RadicandNegative("phi_series_error: C + p_n(theta) <= 0 at theta = " +
                                   std::to_string(theta));
        return std::fabs(std::sqrt(radicand) - eval_taylor(rs, order, alpha * theta));
    };

    double max_err = 0.0;
    const int grid = 1000;
    for (int i = 0; i < grid; ++i)
        max_err = std::max(max_err, err_at(lo + (hi - lo) * i / (grid - 1)));

    // Composite Simpson for the average value of E_n over the range.
    int n = quad_points - 1;  // even panel count
    double h = (hi - lo) / n;
    double sum = err_at(lo) + err_at(hi);
    for (int i = 1; i < n; ++i) sum += err_at(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    double avg = (h / 3.0) * sum / (hi - lo);

    return {order, max_err, avg, range};
}

double sqrt2_phi_closed(double t0) {
    if (t0 < -2.0) throw OutOfDomain("sqrt2_phi_closed: t0 must be >= -2");
    if (t0 <= 2.0) {
        double r = std::acos(t0 / 2.0);
        return r * r;
    }
    double r = std::acosh(t0 / 2.0);
    return r * r;
}

double phi_root_for_limit(const RationalSeries& rs, double target) {
    int order = static_cast<int>(rs.derivs_dd.size()) - 1;
    double L = to_double(rs.L);
    double lo = -2.0 * L * L, hi = 2.0 * L * L;

    auto g = [&](double theta) { return eval_taylor(rs, order, theta) - target; };

    const int scan = 8192;
    double a = lo, b = lo;
    double ga = g(lo);
    bool found = false;
    for (int i = 1; i <= scan; ++i) {
        b = lo + (hi - lo) * i / scan;
        double gb = g(b);
        if (ga == 0.0) return a;
        if (ga * gb < 0.0) {
            found = true;
            break;
        }
        a = b;
        ga = gb;
    }
    if (!found) {
        if (g(hi) == 0.0) return hi;
        throw NoBracket("phi_root_for_limit: no sign change of p_n - target in [-2L^2, 2L^2]");
    }

    for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
        double mid = 0.5 * (a + b);
        double gm = g(mid);
        if (gm == 0.0) return mid;
        (g(a) * gm < 0.0 ? b : a) = mid;
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < 4; ++i) {
        double d = eval_taylor_d1(rs, order, x);
        if (d == 0.0) break;
        x -= g(x) / d;
    }
    return x;
}

}  // namespace orbitkit
