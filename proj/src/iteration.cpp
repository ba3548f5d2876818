#include "orbitkit/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitkit {

namespace {

template <class T>
std::vector<T> orbit_values(const FunctionSpec& spec, const T& t0, long n) {
    std::vector<T> vals;
    vals.reserve(static_cast<size_t>(n) + 1);
    vals.push_back(t0);
    for (long i = 1; i <= n; ++i) {
        try {
            vals.push_back(eval(spec, vals.back()));
        } catch (const DomainError& e) {
            throw DomainError(std::string("orbit left the domain: ") + e.what(), i);
        }
    }
    return vals;
}

template <class T>
struct CandidateRaw {
    std::vector<T> orbit;
    std::vector<T> c;
    bool stopped_early;
};

// Incremental candidate values; never forms m^n.  Stops once |L - t_n| drops
// below 10^3 ulp(L), where further digits are rounding noise.
template <class T>
CandidateRaw<T> candidate_raw(const FunctionSpec& spec, const T& L, const T& m, const T& t0,
                              long n) {
    CandidateRaw<T> out;
    out.stopped_early = false;
    out.orbit.push_back(t0);
    T diff = abs(L - t0);
    out.c.push_back(diff);
    const double floor_ = 1e3 * ulp_of(L);
    for (long i = 1; i <= n; ++i) {
        if (to_double(abs(diff)) < floor_) {
            out.stopped_early = true;
            break;
        }
        T t_next;
        try {
            t_next = eval(spec, out.orbit.back());
        } catch (const DomainError& e) {
            throw DomainError(std::string("candidate orbit left the domain: ") + e.what(), i);
        }
        T diff_next = abs(L - t_next);
        T c_next;
        if (diff == T(0.0)) {
            c_next = T(0.0);  // orbit hit L exactly; the tail is identically zero
        } else {
            c_next = out.c.back() * diff_next / (m * diff);
        }
        out.orbit.push_back(t_next);
        out.c.push_back(c_next);
        diff = diff_next;
    }
    return out;
}

std::vector<DDouble> widen(const std::vector<double>& v) {
    std::vector<DDouble> out;
    out.reserve(v.size());
    for (double x : v) out.emplace_back(x);
    return out;
}

}  // namespace

Orbit orbit(const FunctionSpec& spec, double t0, long n, Precision precision) {
    if (n < 0 || n > 1000000) throw DomainError("orbit: n must be in [0, 10^6]");
    validate(spec);
    if (precision == Precision::double_prec)
        return {spec, t0, widen(orbit_values<double>(spec, t0, n))};
    return {spec, t0, orbit_values<DDouble>(spec, DDouble(t0), n)};
}

CandidateSequence candidate_sequence(const FunctionSpec& spec, const DDouble& L, const DDouble& m,
                                     double t0, long n, Precision precision) {
    if (!(m > DDouble(0.0)) || !(m < DDouble(1.0)))
        throw ZeroMultiplier("candidate_sequence: multiplier must lie in (0, 1)");
    if (n < 0 || n > 1000000) throw DomainError("candidate_sequence: n must be in [0, 10^6]");
    validate(spec);

    CandidateSequence cs{spec, L, m, t0, precision, {}, {}, false};
    if (precision == Precision::double_prec) {
        auto raw = candidate_raw<double>(spec, to_double(L), to_double(m), t0, n);
        cs.orbit = widen(raw.orbit);
        cs.c = widen(raw.c);
        cs.stopped_early = raw.stopped_early;
    } else {
        auto raw = candidate_raw<DDouble>(spec, L, m, DDouble(t0), n);
        cs.orbit = std::move(raw.orbit);
        cs.c = std::move(raw.c);
        cs.stopped_early = raw.stopped_early;
    }
    return cs;
}

CandidateSequence candidate_sequence(const FunctionSpec& spec, double t0, long n,
                                     Precision precision) {
    FixedPointExt fp = fixed_point_ext(spec);
    DDouble m_abs = abs(fp.m);
    if (m_abs.is_zero() || !(m_abs < DDouble(1.0)))
        throw ZeroMultiplier("candidate_sequence: |f'(L)| must lie in (0, 1)");
    return candidate_sequence(spec, fp.L, m_abs, t0, n, precision);
}

namespace {

template <class T>
LimitEstimate estimate_impl(const std::vector<T>& v, double rel_tol) {
    double scale = 0.0;
    for (const auto& x : v) scale = std::max(scale, std::fabs(to_double(x)));
    if (scale == 0.0)
        throw Degenerate("candidate sequence is identically zero (t0 = L): converges, "
                         "but not properly");
    if (v.size() < 6)
        throw DomainError("estimate_limit: need at least 6 usable candidate terms");

    // Aitken delta-squared while the second difference stays resolvable.
    std::vector<T> accel;
    std::vector<long> last_used;
    const double den_floor = 10.0 * ulp_of(T(scale));
    for (size_t i = 0; i + 2 < v.size(); ++i) {
        T d1 = v[i + 1] - v[i];
        T d2 = v[i + 2] - 2.0 * v[i + 1] + v[i];
        if (std::fabs(to_double(d2)) < den_floor) break;
        accel.push_back(v[i] - d1 * d1 / d2);
        last_used.push_back(static_cast<long>(i) + 2);
    }

    if (accel.size() < 2) {
        LimitEstimate est{to_double(v.back()),
                          std::fabs(to_double(v.back() - v[v.size() - 2])),
                          LimitMethod::direct_tail, static_cast<long>(v.size()) - 1};
        if (est.abs_error_bound > rel_tol * std::fabs(est.value))
            throw NotConverged("estimate_limit: direct tail has not settled to rel_tol");
        return est;
    }

    // The accelerated values first settle (truncation shrinking), then drift
    // apart again as cancellation noise takes over: pick the plateau.
    double gap_min = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < accel.size(); ++i)
        gap_min = std::min(gap_min, std::fabs(to_double(accel[i] - accel[i - 1])));
    size_t best = 1;
    for (size_t i = 1; i < accel.size(); ++i) {
        double gap = std::fabs(to_double(accel[i] - accel[i - 1]));
        if (gap <= 2.0 * gap_min) best = i;  // latest index near the minimum gap
    }
    // Bound from the plateau gap together with the next gap beyond it: the
    // plateau gap alone can undershoot (two accelerated values may coincide
    // by chance), while the neighbor exposes the local noise level.
    double gap_best = std::fabs(to_double(accel[best] - accel[best - 1]));
    if (best + 1 < accel.size())
        gap_best = std::max(gap_best, std::fabs(to_double(accel[best + 1] - accel[best])));

    LimitEstimate est{to_double(accel[best]), gap_best, LimitMethod::aitken, last_used[best]};
    if (est.abs_error_bound > rel_tol * std::fabs(est.value))
        throw NotConverged("estimate_limit: accelerated values still disagree at rel_tol");
    return est;
}

}  // namespace

LimitEstimate estimate_limit(const CandidateSequence& c, double rel_tol) {
    if (c.precision == Precision::double_prec) {
        std::vector<double> v;
        v.reserve(c.c.size());
        for (const auto& x : c.c) v.push_back(to_double(x));
        return estimate_impl<double>(v, rel_tol);
    }
    return estimate_impl<DDouble>(c.c, rel_tol);
}

LimitEstimate limit_of(const FunctionSpec& spec, double t0, double rel_tol, Precision precision) {
    long cap = precision == Precision::extended ? 4000 : 400;
    return estimate_limit(candidate_sequence(spec, t0, cap, precision), rel_tol);
}

bool check_monotone_orbit(const Orbit& o, const DDouble& L) {
    if (o.values.size() < 2) return true;
    const double slack = 4.0 * ulp_of(L);
    DDouble t0 = o.values.front();
    if (to_double(abs(L - t0)) <= slack) return true;  // constant orbit at L
    bool increasing = t0 < L;
    for (size_t i = 0; i + 1 < o.values.size(); ++i) {
        if (to_double(abs(L - o.values[i])) <= slack) break;  // settled; ordering unresolvable
        const DDouble& a = o.values[i];
        const DDouble& b = o.values[i + 1];
        if (increasing) {
            if (!(b > a)) return false;
            if (to_double(b - L) > slack) return false;  // must stay bounded above by L
        } else {
            if (!(b < a)) return false;
            if (to_double(L - b) > slack) return false;
        }
    }
    return true;
}

bool check_monotone_candidate(const CandidateSequence& c) {
    if (c.c.size() < 2) return true;
    DDouble t0 = c.orbit.front();
    if (abs(c.L - t0).is_zero()) return true;
    bool increasing = t0 < c.L;  // the candidate grows from below L, shrinks from above

    // Ordering is only resolvable while |L - t_n| is far enough above the
    // rounding floor that division by m^n has not amplified noise past the
    // true successive gaps (which shrink like m^n themselves).
    double eps_active =
        c.precision == Precision::extended ? DDouble::eps : std::numeric_limits<double>::epsilon();
    double guard = 10.0 * std::sqrt(eps_active) * to_double(abs(c.L - t0));

    for (size_t i = 0; i + 1 < c.c.size(); ++i) {
        if (to_double(abs(c.L - c.orbit[i + 1])) < guard) break;
        double slack = 4.0 * ulp_of(c.c[i]);
        double step = to_double(c.c[i + 1] - c.c[i]);
        if (increasing ? step < -slack : step > slack) return false;
    }
    return true;
}

bool compare_candidates(const FunctionSpec& f, const FunctionSpec& g, double L, double m,
                        double t0, double u0, long n) {
    if (!(m > 0.0 && m < 1.0)) throw ZeroMultiplier("compare_candidates: m must be in (0, 1)");
    if (n < 1) throw DomainError("compare_candidates: n must be >= 1");
    DDouble Ld(L);

    bool below;
    if (u0 <= t0 && t0 < L) {
        below = true;
    } else if (t0 >= u0 && u0 > L) {
        below = false;
    } else if (t0 == u0 && t0 == L) {
        throw DomainError("compare_candidates: starts coincide with the fixed point");
    } else {
        throw DomainError("compare_candidates: starts must satisfy u0 <= t0 < L or t0 >= u0 > L");
    }

    auto tf = orbit_values<DDouble>(f, DDouble(t0), n);
    auto ug = orbit_values<DDouble>(g, DDouble(u0), n);

    // The supplied L is a fixed point of f and g only up to the rounding of
    // their stored coefficients; below that mismatch scale the residuals of
    // the two orbits are not comparable.
    double fp_noise = to_double(abs(eval(f, Ld) - Ld) + abs(eval(g, Ld) - Ld)) / (1.0 - m);
    const double side_slack = 4.0 * ulp_of(Ld) + 10.0 * fp_noise;
    const double hyp_floor =
        100.0 * std::sqrt((fp_noise + ulp_of(Ld)) * std::max(1.0, std::fabs(L)));
    auto on_side = [&](const DDouble& x) {
        return below ? to_double(x - Ld) <= side_slack : to_double(Ld - x) <= side_slack;
    };
    // Spot-verify the pointwise hypothesis g < f at every visited point on the
    // relevant side of L, and that neither orbit crosses L.
    for (long k = 0; k <= n; ++k) {
        for (const DDouble& x : {tf[static_cast<size_t>(k)], ug[static_cast<size_t>(k)]}) {
            if (!on_side(x))
                throw HypothesisViolated("compare_candidates: an orbit crossed the fixed point");
            if (k < n && abs(x - Ld) > DDouble(hyp_floor)) {
                DDouble gx = eval(g, x);
                DDouble fx = eval(f, x);
                if (!(gx < fx))
                    throw HypothesisViolated(
                        "compare_candidates: ordering g < f fails at a visited point");
            }
        }
    }

    // Termwise conclusion; c_f vs c_g at equal k reduces to |L - t_k| vs
    // |L - u_k| since the m^k factor is shared.  Stop once both residuals are
    // down at the resolvability floor.
    const double floor_ = 100.0 * (ulp_of(Ld) + fp_noise);
    for (long k = 1; k <= n; ++k) {
        DDouble df = abs(Ld - tf[static_cast<size_t>(k)]);
        DDouble dg = abs(Ld - ug[static_cast<size_t>(k)]);
        if (to_double(df) < floor_ && to_double(dg) < floor_) break;
        bool ok = below ? df < dg   // case (i):  c_f < c_g
                        : df > dg;  // case (ii): c_f > c_g
        if (!ok) return false;
    }
    return true;
}

}  // namespace orbitkit
