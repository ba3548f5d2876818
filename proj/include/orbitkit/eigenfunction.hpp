#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "orbitkit/funcspec.hpp"
#include "orbitkit/rational.hpp"

namespace orbitkit {

/// An invertible map phi with f = phi . mu_alpha . phi^-1, mu_alpha(t) = alpha t.
/// Carries phi, its inverse, the derivatives of phi at 0, and the function f
/// it linearizes.  L = phi(0) is f's fixed point; f'(L) = alpha when
/// phi'(0) != 0 and alpha^2 when phi'(0) = 0 != phi''(0).
struct EigenPair {
    std::string name;
    FunctionSpec f;
    double alpha;
    double L;
    double phi_d1_0;  // phi'(0)
    double phi_d2_0;  // phi''(0)
    std::function<double(double)> phi;
    std::function<double(double)> phi_inverse;
};

// Built-in pairs.
EigenPair eigenpair_two_cos();               // phi = 2 cos, alpha = 1/2, f = sqrt(2+t)
EigenPair eigenpair_sqrt2_second();          // phi = 2cos(sqrt(-x)) / 2cosh(sqrt(x)), alpha = 1/4
EigenPair eigenpair_exp(double alpha);       // phi = e^x, f = t^alpha
EigenPair eigenpair_half_exp();              // phi = e^x / 2, alpha = 1/3, f = cbrt(t/4)
EigenPair eigenpair_exp_two_cos();           // phi = e^(2 cos x), alpha = 1/2, f = exp(sqrt(2+ln t))
EigenPair eigenpair_cos(int k);              // phi = cos, alpha = 1/k, f = f_k
EigenPair eigenpair_k_cos(int k);            // phi = k cos, f = k f_k(t/k)
EigenPair eigenpair_cheb_second(int k);      // phi = cos(sqrt(-x)), alpha = 1/k^2, f = f_k

/// lim c_n = |phi^-1(t0) phi'(0)|; requires phi'(0) != 0 (else WrongOrder).
double limit_first_order(const EigenPair& ep, double t0);

/// lim c_n = |phi^-1(t0)^2 phi''(0) / 2|; requires phi'(0) == 0 != phi''(0).
double limit_second_order(const EigenPair& ep, double t0);

enum class ConjugationKind { translate, scale };

/// Candidate limit after conjugating f by t+beta (translate) or beta*t (scale):
/// translate: |phi^-1(t0 - beta) phi'(0)|; scale: |phi^-1(t0/beta) beta phi'(0)|.
double conjugate_limit(ConjugationKind kind, double beta, const EigenPair& base, double t0);

/// Derivatives phi^(n)(0) of the eigen-function of f(t) = sqrt(C + t),
/// normalized to phi'(0) = 1, built from the functional equation
/// C + phi(theta/alpha) = phi(theta)^2 with alpha = 1/(2L):
/// phi^(n)(0) = sum_{k=1}^{n-1} C(n,k) phi^(k)(0) phi^(n-k)(0) / ((2L)^n - 2L).
/// Exact rationals when L = (1 + sqrt(1+4C))/2 is rational, else double-double.
struct RationalSeries {
    double C;
    bool exact;
    BigRational L_rat;                 // meaningful when exact
    DDouble L;
    DDouble alpha;                     // 1/(2L)
    std::vector<BigRational> derivs;   // phi^(n)(0), exact mode only
    std::vector<DDouble> derivs_dd;    // always populated
};

RationalSeries build_phi_series(double C, int n_terms);

/// Taylor coefficient phi^(k)(0)/k! (exact mode only).
BigRational taylor_coeff(const RationalSeries& rs, int k);

/// p_n(theta): the Taylor polynomial of order n (n < derivs count).
double eval_taylor(const RationalSeries& rs, int order, double theta);
double eval_taylor_d1(const RationalSeries& rs, int order, double theta);

struct SeriesErrorReport {
    int n;
    double max_error;
    double avg_error;
    std::pair<double, double> theta_range;
};

/// Residual of the functional equation for the order-n truncation:
/// E_n(theta) = |sqrt(C + p_n(theta)) - p_n(alpha theta)|.  Max over a
/// 1000-point grid; average by composite Simpson on quad_points (odd, >= 65).
SeriesErrorReport phi_series_error(const RationalSeries& rs, int order,
                                   std::pair<double, double> range, int quad_points = 129);

/// Closed-form candidate limit for f(t) = sqrt(2 + t):
/// acos(t0/2)^2 on [-2, 2], acosh(t0/2)^2 on [2, inf); OutOfDomain below -2.
double sqrt2_phi_closed(double t0);

/// Solves p_n(theta) = target (n = highest built order) by a sign-change scan
/// on [-2L^2, 2L^2] followed by bisection and Newton polish, to 1e-12.
/// With target = 0 this predicts the candidate limit |theta| for t0 = 0.
double phi_root_for_limit(const RationalSeries& rs, double target);

}  // namespace orbitkit
