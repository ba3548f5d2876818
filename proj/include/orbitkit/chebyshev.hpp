#pragma once

#include <utility>
#include <vector>

#include "orbitkit/funcspec.hpp"
#include "orbitkit/rational.hpp"

namespace orbitkit {

/// p_K with cos(K theta) = p_K(cos theta), exact integer coefficients in
/// ascending degree order (p_K(1) = 1, p_K'(1) = K^2).
struct ChebPoly {
    int k;
    std::vector<BigInt> coeffs;  // degree K, leading coefficient 2^(K-1)
};

/// Built by the recurrence p_{K+1} = 2 t p_K - p_{K-1}, p_0 = 1, p_1 = t.
/// Valid for 2 <= K <= 64.
ChebPoly cheb_poly(int k);

/// Horner evaluation of the exact polynomial (and derivatives) in double.
double cheb_poly_eval(const ChebPoly& p, double t);
double cheb_poly_d1(const ChebPoly& p, double t);

/// Exact p_K'(1) as an integer (equals K^2).
BigInt cheb_poly_d1_at_1(const ChebPoly& p);

/// Increasing-branch inverse f_K on [-1, inf): cos(acos(t)/K) for t in [-1, 1],
/// cosh(acosh(t)/K) for t >= 1.  scaled selects K f_K(t/K) (domain t >= -K).
double f_k(int k, double t, bool scaled = false);
DDouble f_k_ext(int k, const DDouble& t, bool scaled = false);

/// Candidate-sequence limit for f_K from t0 in [-1, 1): acos(t0)^2 / 2.
double cheb_candidate_limit(int k, double t0);

/// Table of (n, c_n) with c_n = K^(2n) |1 - f_K^(n)(t0)| (unscaled) or
/// K^(2n) |K - f~^(n)(t0)| (scaled), computed in extended precision.
std::vector<std::pair<long, DDouble>> cheb_nested_table(int k, double t0, long n,
                                                        bool scaled = false);

}  // namespace orbitkit
