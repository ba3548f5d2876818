#include "orbitkit/repro.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "orbitkit/chebyshev.hpp"
#include "orbitkit/eigenfunction.hpp"
#include "orbitkit/iteration.hpp"
#include "orbitkit/koenigs.hpp"
#include "orbitkit/mobius.hpp"

namespace orbitkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool rel_close(double value, double expected, double rel_tol) {
    return std::fabs(value - expected) <= rel_tol * std::fabs(expected);
}

struct Harness {
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<std::string()>& body) {
        try {
            std::string detail = body();  // empty string = pass
            results.push_back({name, detail.empty(), detail});
        } catch (const std::exception& e) {
            results.push_back({name, false, std::string("exception: ") + e.what()});
        }
    }
};

std::string check_rel(double value, double expected, double rel_tol, const std::string& what) {
    if (rel_close(value, expected, rel_tol)) return {};
    std::ostringstream os;
    os.precision(16);
    os << what << ": got " << value << ", expected " << expected << " (rel tol " << rel_tol << ")";
    return os.str();
}

std::string check_abs(double value, double expected, double abs_tol, const std::string& what) {
    if (std::fabs(value - expected) <= abs_tol) return {};
    std::ostringstream os;
    os.precision(16);
    os << what << ": got " << value << ", expected " << expected << " (abs tol " << abs_tol << ")";
    return os.str();
}

// ---- criterion bodies -------------------------------------------------------

std::string mysterious_pattern() {
    FunctionSpec spec = SqrtAffine{2.0};
    LimitEstimate est = limit_of(spec, 0.0, 1e-8);
    std::string err = check_rel(est.value, kPi * kPi / 4.0, 1e-8, "limit from t0=0");
    if (!err.empty()) return err;

    auto cs = candidate_sequence(spec, 0.0, 19);
    if (cs.c.size() < 20) return "candidate sequence stopped before n = 19";
    double scaled = 4.0 * to_double(cs.c[19]);  // 4^20 (2 - t_19)
    return check_rel(scaled, kPi * kPi, 1e-6, "4^n (2 - t_(n-1)) at n = 20");
}

std::string mobius_worked_example() {
    MobiusCoeffs mc{3.0, 6.0, 4.0};
    FunctionSpec spec = MobiusFun{3.0, 6.0, 4.0};
    for (double t0 : {0.0, 1.0, 3.0, 5.0}) {
        double expected = std::fabs((5.0 * t0 - 10.0) / (t0 + 3.0));
        double exact = candidate_limit_exact(mc, t0);
        std::string err = check_abs(exact, expected, 1e-12 * std::max(1.0, expected),
                                    "closed form at t0=" + std::to_string(t0));
        if (!err.empty()) return err;
        double numeric = limit_of(spec, t0, 1e-8).value;
        err = check_rel(numeric, exact, 1e-6, "numeric vs closed form at t0=" + std::to_string(t0));
        if (!err.empty()) return err;
    }
    return {};
}

std::string continued_fraction_24_5() {
    double exact = candidate_limit_exact({2.0, 15.0, 0.0}, 2.0);
    std::string err = check_abs(exact, 24.0 / 5.0, 1e-12, "closed form");
    if (!err.empty()) return err;
    double numeric = limit_of(ContinuedFraction{2.0, 15.0}, 2.0, 1e-8).value;
    return check_rel(numeric, 24.0 / 5.0, 1e-6, "numeric");
}

std::string fibonacci_root5() {
    return check_abs(fibonacci_residual(25), std::sqrt(5.0), 1e-6, "residual at n = 25");
}

std::string phi_series_exact() {
    RationalSeries rs6 = build_phi_series(6.0, 6);
    if (!rs6.exact) return "C = 6 series not detected as exact";
    const BigRational want6[] = {BigRational(3),           BigRational(1),
                                 BigRational(1, 15),       BigRational(1, 525),
                                 BigRational(11, 338625),  BigRational(97, 263111625)};
    for (int i = 0; i < 6; ++i)
        if (rs6.derivs[static_cast<size_t>(i)] != want6[i])
            return "derivative sequence mismatch at n = " + std::to_string(i) + ": got " +
                   rs6.derivs[static_cast<size_t>(i)].to_fraction_string();
    const BigRational coeff6[] = {BigRational(1, 30), BigRational(1, 3150),
                                  BigRational(11, 8127000),
                                  BigRational(97, BigInt("31573395000"))};
    for (int k = 2; k <= 5; ++k)
        if (taylor_coeff(rs6, k) != coeff6[k - 2])
            return "p5 coefficient mismatch at k = " + std::to_string(k) + ": got " +
                   taylor_coeff(rs6, k).to_fraction_string();

    RationalSeries rs2 = build_phi_series(2.0, 12);
    for (int k = 1; k < 12; ++k) {
        BigRational fact(1);  // (2k-1)!
        for (int i = 2; i <= 2 * k - 1; ++i) fact *= BigRational(i);
        if (taylor_coeff(rs2, k) != BigRational(1) / (BigRational(k) * fact))
            return "C = 2 coefficient mismatch at k = " + std::to_string(k);
    }
    return {};
}

std::string phi_series_residuals() {
    RationalSeries rs = build_phi_series(6.0, 6);
    struct Row {
        int order;
        double max_bound;
        double avg_center;
    };
    const Row rows[] = {{3, 4.5e-6, 7e-7}, {4, 2.1e-8, 3e-9}, {5, 5.1e-11, 6e-12}};
    for (const Row& r : rows) {
        SeriesErrorReport rep = phi_series_error(rs, r.order, {-2.0, 2.0});
        if (!(rep.max_error < r.max_bound)) {
            std::ostringstream os;
            os.precision(6);
            os << "max E_" << r.order << " = " << rep.max_error << " not below " << r.max_bound;
            return os.str();
        }
        if (!(rep.avg_error > r.avg_center / 3.0 && rep.avg_error < r.avg_center * 3.0)) {
            std::ostringstream os;
            os.precision(6);
            os << "avg E_" << r.order << " = " << rep.avg_error << " not within 3x of "
               << r.avg_center;
            return os.str();
        }
    }
    return {};
}

std::string phi_root_vs_numeric() {
    RationalSeries rs = build_phi_series(6.0, 6);
    double root = phi_root_for_limit(rs, 0.0);
    std::string err = check_abs(root, -3.3656575319, 1e-9, "p5 root");
    if (!err.empty()) return err;
    double numeric = limit_of(SqrtAffine{6.0}, 0.0, 1e-10).value;
    return check_abs(numeric, std::fabs(root), 1e-7, "numeric limit vs |root| (7 decimals)");
}

std::string chebyshev_limits() {
    for (int k : {2, 3, 4, 5}) {
        auto plain = cheb_nested_table(k, 0.0, 60, false);
        double last = to_double(plain.back().second);
        std::string err = check_rel(last, kPi * kPi / 8.0, 1e-6,
                                    "K = " + std::to_string(k) + " unscaled");
        if (!err.empty()) return err;
        auto scaled = cheb_nested_table(k, 0.0, 60, true);
        err = check_rel(to_double(scaled.back().second), k * kPi * kPi / 8.0, 1e-6,
                        "K = " + std::to_string(k) + " scaled");
        if (!err.empty()) return err;
    }
    auto k2 = cheb_nested_table(2, 0.0, 60, false);
    return check_rel(8.0 * to_double(k2.back().second), kPi * kPi, 1e-6, "8 c_n for K = 2");
}

std::string exp_conjugate_limit() {
    double expected = std::exp(2.0) * kPi * kPi / 4.0;
    double numeric = limit_of(ExpConjugate{}, 1.0, 1e-8).value;
    return check_rel(numeric, expected, 1e-6, "limit at t0 = 1");
}

std::string sqrt2_closed_family() {
    for (double t0 : {-1.0, 0.0, 1.0, 3.0, 5.0}) {
        double closed = sqrt2_phi_closed(t0);
        double numeric = limit_of(SqrtAffine{2.0}, t0, 1e-8).value;
        std::string err =
            check_rel(numeric, closed, 1e-6, "t0 = " + std::to_string(t0));
        if (!err.empty()) return err;
    }
    return {};
}

// -- property bundles ---------------------------------------------------------

std::string lemma_monotonicity() {
    const std::vector<FunctionSpec> specs = {
        SqrtAffine{2.0},        KthRoot{3.0, 3},        MobiusFun{3.0, 6.0, 4.0},
        LogShift{2.0},          RationalDemo{},         PowerMap{0.5},
        ScaledCubeRoot{},       ExpConjugate{},         ChebInverse{3, false},
        ChebInverse{3, true},   NonSmoothDemo{},
    };
    std::mt19937_64 rng(20240811u);
    for (const auto& spec : specs) {
        auto interval = root_like_interval(spec);
        if (!interval) return "missing root-like interval for " + family_name(spec);
        double L = fixed_point(spec).L;
        auto [lo, hi] = *interval;
        for (int side = 0; side < 2; ++side) {
            std::uniform_real_distribution<double> pick(side == 0 ? lo : L, side == 0 ? L : hi);
            for (int rep = 0; rep < 20; ++rep) {
                double t0 = pick(rng);
                if (std::fabs(t0 - L) < 1e-6 * std::max(1.0, std::fabs(L))) continue;
                auto cs = candidate_sequence(spec, t0, 25);
                Orbit o{spec, t0, cs.orbit};
                if (!check_monotone_orbit(o, cs.L))
                    return "orbit not monotone for " + format_spec(spec) + " from t0 = " +
                           std::to_string(t0);
                if (!check_monotone_candidate(cs))
                    return "candidate not monotone for " + format_spec(spec) + " from t0 = " +
                           std::to_string(t0);
            }
        }
    }
    return {};
}

std::string lemma4_comparisons() {
    struct Case {
        FunctionSpec f;
        double gap;
        double below;  // start below L
        double above;  // start above L
    };
    const Case cases[] = {
        {SqrtAffine{2.0}, 0.01, 0.0, 3.0},
        {SqrtAffine{2.0}, 0.2, 1.0, 2.5},
        {KthRoot{3.0, 3}, 0.02, 2.0, 4.0},
    };
    for (const Case& c : cases) {
        FixedPointInfo fp = fixed_point(c.f);
        MobiusCoeffs q = associated_q(c.f, c.gap);
        FunctionSpec qs = MobiusFun{q.a, q.b, q.d};
        if (!compare_candidates(c.f, qs, fp.L, fp.m, c.below, c.below, 20))
            return "case (i) comparison failed for " + format_spec(c.f) + " with gap " +
                   std::to_string(c.gap);
        if (!compare_candidates(c.f, qs, fp.L, fp.m, c.above, c.above, 20))
            return "case (ii) comparison failed for " + format_spec(c.f) + " with gap " +
                   std::to_string(c.gap);
    }
    return {};
}

BigRational rand_rational(std::mt19937_64& rng, int lo, int hi, bool nonzero = false) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 12);
    for (;;) {
        BigRational r(num(rng), den(rng));
        if (!nonzero || !r.is_zero()) return r;
    }
}

std::string mobius_homomorphism_exact() {
    std::mt19937_64 rng(777u);
    int done = 0;
    while (done < 100) {
        MobiusCoeffsT<BigRational> f{rand_rational(rng, -8, 8), rand_rational(rng, -8, 8),
                                     rand_rational(rng, -8, 8)};
        MobiusCoeffsT<BigRational> g{rand_rational(rng, -8, 8), rand_rational(rng, -8, 8),
                                     rand_rational(rng, -8, 8)};
        if (f.b == f.a * f.d || g.b == g.a * g.d) continue;
        BigRational t = rand_rational(rng, -10, 10);
        try {
            MobiusCoeffsT<BigRational> fg = mobius_compose(f, g);
            BigRational direct = mobius_apply(f, mobius_apply(g, t));
            BigRational via = mobius_apply(fg, t);
            if (direct != via) return "composition mismatch (exact rational)";
        } catch (const DomainError&) {
            continue;  // pole or affine composition: resample
        }
        ++done;
    }
    return {};
}

std::string iterate_closed_vs_brute() {
    std::mt19937_64 rng(424242u);
    std::uniform_real_distribution<double> coeff(-4.0, 4.0);
    std::uniform_int_distribution<int> steps(1, 12);
    std::uniform_real_distribution<double> start(-2.0, 2.0);
    int done = 0;
    while (done < 100) {
        MobiusCoeffs mc{coeff(rng), coeff(rng), coeff(rng)};
        if ((mc.a - mc.d) * (mc.a - mc.d) + 4.0 * mc.b <= 0.01) continue;
        if (std::fabs(mc.b - mc.a * mc.d) < 1e-6) continue;
        long n = steps(rng);
        double t = start(rng);
        FunctionSpec spec = MobiusFun{mc.a, mc.b, mc.d};
        double brute = t;
        bool skip = false;
        for (long i = 0; i < n; ++i) {
            if (std::fabs(brute + mc.d) < 1e-3) { skip = true; break; }
            brute = eval(spec, brute);
            if (std::fabs(brute) > 1e6) { skip = true; break; }
        }
        if (skip) continue;
        try {
            double closed = iterate_closed(mc, n, t);
            if (std::fabs(closed - brute) > 1e-10 * std::max(1.0, std::fabs(brute)))
                return "iterate_closed disagrees with brute-force composition";
        } catch (const PoleHit&) {
            continue;
        }
        ++done;
    }
    return {};
}

BigRational rand_qparam_m(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 11);
    std::uniform_int_distribution<int> den(12, 24);
    return {num(rng), den(rng)};  // in (0, 1)
}

std::string q_round_trip_exact() {
    std::mt19937_64 rng(97531u);
    for (int i = 0; i < 200; ++i) {
        QParamsT<BigRational> p{rand_rational(rng, 1, 9, true), rand_qparam_m(rng),
                                -rand_rational(rng, 1, 9, true)};
        MobiusCoeffsT<BigRational> mc = q_from_lms(p);
        QParamsT<BigRational> back = lms_from_abd(mc, p.L);
        if (back.L != p.L || back.m != p.m || back.s != p.s)
            return "q_from_lms / lms_from_abd round trip not exact";
        MobiusCoeffsT<BigRational> again = q_from_lms(back);
        if (again.a != mc.a || again.b != mc.b || again.d != mc.d)
            return "q_from_lms not reproduced from recovered parameters";
    }
    return {};
}

std::string discriminant_positivity() {
    std::mt19937_64 rng(86420u);
    for (int i = 0; i < 1000; ++i) {
        QParamsT<BigRational> p{rand_rational(rng, 1, 9, true), rand_qparam_m(rng),
                                -rand_rational(rng, 1, 9, true)};
        MobiusCoeffsT<BigRational> mc = q_from_lms(p);
        BigRational disc = (mc.a - mc.d) * (mc.a - mc.d) + BigRational(4) * mc.b;
        if (!(disc > BigRational(0))) return "non-positive discriminant for a Q-function";
    }
    return {};
}

std::string property_suites() {
    struct Suite {
        const char* name;
        std::string (*fn)();
    };
    const Suite suites[] = {
        {"lemma 1/2 monotonicity", [] { return lemma_monotonicity(); }},
        {"lemma 4 comparison", [] { return lemma4_comparisons(); }},
        {"composition homomorphism", [] { return mobius_homomorphism_exact(); }},
        {"closed iterate vs brute force", [] { return iterate_closed_vs_brute(); }},
        {"q round trip (exact)", [] { return q_round_trip_exact(); }},
        {"discriminant positivity", [] { return discriminant_positivity(); }},
    };
    for (const Suite& s : suites) {
        std::string err = s.fn();
        if (!err.empty()) return std::string(s.name) + ": " + err;
    }
    return {};
}

std::string koenigs_geometry() {
    for (double L : {1.25, 2.0, 3.0, 10.0}) {
        DiskCheckResult disk = disk_self_map_check(L, 10000);
        if (!disk.ok || !(disk.min_margin > 0.0))
            return "disk self-map margin not positive at L = " + std::to_string(L);
        if (!cardioid_containment_check(L, 1000))
            return "cardioid containment failed at L = " + std::to_string(L);
    }
    return check_rel(currie_c(2.0), kPi, 1e-6, "C(2)");
}

std::string cube_root_self_consistency() {
    FunctionSpec spec = KthRoot{3.0, 3};
    double ext = limit_of(spec, 0.0, 1e-6, Precision::extended).value;
    double dbl = limit_of(spec, 0.0, 1e-5, Precision::double_prec).value;
    return check_rel(dbl, ext, 1e-5, "double vs extended estimate");
}

}  // namespace

std::vector<CheckResult> run_repro_checks() {
    Harness h;
    h.run("sqrt_affine(c=2) candidate limit pi^2/4", mysterious_pattern);
    h.run("mobius(3,6,4) limit formula (5t0-10)/(t0+3)", mobius_worked_example);
    h.run("continued_fraction(2,15) limit 24/5", continued_fraction_24_5);
    h.run("fibonacci residual sqrt(5)", fibonacci_root5);
    h.run("eigen-series exact coefficients (C=6, C=2)", phi_series_exact);
    h.run("eigen-series residual bounds E3/E4/E5", phi_series_residuals);
    h.run("series root matches numeric limit to 7 decimals", phi_root_vs_numeric);
    h.run("chebyshev nested limits pi^2/8 and K pi^2/8", chebyshev_limits);
    h.run("exp conjugate limit e^2 pi^2/4", exp_conjugate_limit);
    h.run("sqrt(2+t) closed-form limit family", sqrt2_closed_family);
    h.run("lemma and mobius algebra property suites", property_suites);
    h.run("koenigs disk geometry and C(2) = pi", koenigs_geometry);
    h.run("cube-root limit precision self-consistency", cube_root_self_consistency);
    return h.results;
}

int print_repro_report(std::ostream& out) {
    int failures = 0;
    for (const CheckResult& r : run_repro_checks()) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.passed) out << " -- " << r.detail;
        out << "\n";
        if (!r.passed) ++failures;
    }
    return failures;
}

}  // namespace orbitkit
