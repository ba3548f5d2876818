#pragma once

#include <vector>

#include "orbitkit/catalog.hpp"
#include "orbitkit/funcspec.hpp"

namespace orbitkit {

enum class Precision { double_prec, extended };

/// The orbit t_0, f(t_0), f(f(t_0)), ... stored in extended precision.
struct Orbit {
    FunctionSpec spec;
    double t0;
    std::vector<DDouble> values;  // t_0 .. t_n
};

/// Computes n+1 orbit values.  Throws DomainError carrying the failing index
/// when an iterate leaves the family domain (e.g. hits a Mobius pole).
Orbit orbit(const FunctionSpec& spec, double t0, long n,
            Precision precision = Precision::extended);

/// Candidate sequence c_n = |L - t_n| / m^n, built by the incremental ratio
/// recursion c_{n+1} = c_n * |L - t_{n+1}| / (m |L - t_n|) so m^n is never
/// formed.  Iteration stops early once |L - t_n| < 10^3 ulp(L) in the active
/// precision, past which the residual digits are rounding noise.
struct CandidateSequence {
    FunctionSpec spec;
    DDouble L;
    DDouble m;   // the positive ratio actually divided out, i.e. |f'(L)|
    double t0;
    Precision precision;
    std::vector<DDouble> orbit;  // t_0 .. t_N
    std::vector<DDouble> c;      // c_0 .. c_N
    bool stopped_early;          // hit the cancellation floor before n terms
};

/// Explicit (L, m) form; m must lie in (0, 1) or ZeroMultiplier is thrown.
CandidateSequence candidate_sequence(const FunctionSpec& spec, const DDouble& L, const DDouble& m,
                                     double t0, long n,
                                     Precision precision = Precision::extended);

/// Convenience form: L and m = |f'(L)| from the catalog, in extended precision.
CandidateSequence candidate_sequence(const FunctionSpec& spec, double t0, long n,
                                     Precision precision = Precision::extended);

enum class LimitMethod { closed_form, aitken, direct_tail };

struct LimitEstimate {
    double value;
    double abs_error_bound;  // 0 by convention for closed_form
    LimitMethod method;
    long n_used;
};

/// Aitken delta-squared acceleration of the candidate tail.  The accelerated
/// sequence is scanned for its plateau (smallest successive gap); the gap is
/// the reported error bound.  Falls back to the direct tail value when every
/// acceleration denominator is below 10 ulp.  Throws Degenerate for the
/// all-zero sequence (t0 = L) and NotConverged when the plateau gap is still
/// larger than rel_tol * |value|.
LimitEstimate estimate_limit(const CandidateSequence& c, double rel_tol = 1e-8);

/// End-to-end helper: builds the candidate sequence out to the cancellation
/// floor (hard cap 4000 terms) and estimates its limit.
LimitEstimate limit_of(const FunctionSpec& spec, double t0, double rel_tol = 1e-8,
                       Precision precision = Precision::extended);

/// Orbit monotonicity: t0 > L implies strictly decreasing toward L and
/// t0 < L strictly increasing, up to 4 ulp of slack once iterates reach L.
bool check_monotone_orbit(const Orbit& o, const DDouble& L);

/// Candidate monotonicity: non-increasing when t0 > L, non-decreasing when
/// t0 < L, with 4 ulp slack in the active precision.
bool check_monotone_candidate(const CandidateSequence& c);

/// Termwise comparison of candidate sequences for two maps sharing (L, m):
/// with u0 <= t0 < L requires c_f < c_g for 1 <= k <= n, with t0 >= u0 > L
/// requires c_f > c_g.  The pointwise ordering g < f is spot-verified at the
/// visited orbit points on the relevant side of L; HypothesisViolated is
/// thrown when it fails (including g == f) or when an orbit crosses L.
bool compare_candidates(const FunctionSpec& f, const FunctionSpec& g, double L, double m,
                        double t0, double u0, long n);

}  // namespace orbitkit
