#include "orbitkit/chebyshev.hpp"

#include <cmath>

namespace orbitkit {

ChebPoly cheb_poly(int k) {
    if (k < 2 || k > 64) throw DomainError("cheb_poly: K must be in [2, 64]");
    std::vector<BigInt> prev{1};     // p_0 = 1
    std::vector<BigInt> cur{0, 1};   // p_1 = t
    for (int j = 1; j < k; ++j) {
        std::vector<BigInt> next(static_cast<size_t>(j) + 2, BigInt(0));
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = 2 * cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {k, std::move(cur)};
}

double cheb_poly_eval(const ChebPoly& p, double t) {
    double acc = 0.0;
    for (size_t i = p.coeffs.size(); i-- > 0;)
        acc = acc * t + p.coeffs[i].convert_to<double>();
    return acc;
}

double cheb_poly_d1(const ChebPoly& p, double t) {
    double acc = 0.0;
    for (size_t i = p.coeffs.size(); i-- > 1;)
        acc = acc * t + static_cast<double>(i) * p.coeffs[i].convert_to<double>();
    return acc;
}

BigInt cheb_poly_d1_at_1(const ChebPoly& p) {
    BigInt acc = 0;
    for (size_t i = 1; i < p.coeffs.size(); ++i) acc += BigInt(i) * p.coeffs[i];
    return acc;
}

double f_k(int k, double t, bool scaled) {
    if (k < 2) throw DomainError("f_k: K must be >= 2");
    if (!scaled) return detail::cheb_inverse_value(k, t);
    double kk = k;
    return kk * detail::cheb_inverse_value(k, t / kk);
}

DDouble f_k_ext(int k, const DDouble& t, bool scaled) {
    if (k < 2) throw DomainError("f_k_ext: K must be >= 2");
    if (!scaled) return detail::cheb_inverse_value(k, t);
    double kk = k;
    return kk * detail::cheb_inverse_value(k, t / kk);
}

double cheb_candidate_limit(int k, double t0) {
    if (k < 2) throw DomainError("cheb_candidate_limit: K must be >= 2");
    if (t0 < -1.0 || t0 >= 1.0)
        throw OutOfDomain("cheb_candidate_limit: t0 must lie in [-1, 1)");
    double theta0 = std::acos(t0);
    return theta0 * theta0 / 2.0;
}

std::vector<std::pair<long, DDouble>> cheb_nested_table(int k, double t0, long n, bool scaled) {
    if (k < 2) throw DomainError("cheb_nested_table: K must be >= 2");
    if (n < 0 || n > 100000) throw DomainError("cheb_nested_table: n out of range");
    DDouble L(scaled ? static_cast<double>(k) : 1.0);
    double k2 = static_cast<double>(k) * k;

    std::vector<std::pair<long, DDouble>> table;
    table.reserve(static_cast<size_t>(n) + 1);
    DDouble t(t0);
    DDouble c = abs(L - t);
    table.emplace_back(0, c);
    const double floor_ = 1e3 * ulp_of(L);
    for (long i = 1; i <= n; ++i) {
        DDouble diff_prev = abs(L - t);
        if (to_double(diff_prev) < floor_) break;  // residual is rounding noise past here
        t = f_k_ext(k, t, scaled);
        DDouble diff = abs(L - t);
        c = c * (k2 * diff) / diff_prev;  // c_i = K^(2i) |L - t_i|, by ratios
        table.emplace_back(i, c);
    }
    return table;
}

}  // namespace orbitkit
