#include "orbitkit/cli_app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "orbitkit/chebyshev.hpp"
#include "orbitkit/csv.hpp"
#include "orbitkit/eigenfunction.hpp"
#include "orbitkit/iteration.hpp"
#include "orbitkit/koenigs.hpp"
#include "orbitkit/mobius.hpp"
#include "orbitkit/repro.hpp"

namespace orbitkit {

namespace {

struct CommonOpts {
    std::string spec_text;
    double t0 = 0.0;
    long n = 20;
    std::string precision = "extended";
    std::string format = "table";
    std::string out_path;
    double rel_tol = 1e-8;
};

Precision precision_of(const std::string& name) {
    if (name == "double") return Precision::double_prec;
    if (name == "extended") return Precision::extended;
    throw CLI::ValidationError("--precision must be 'double' or 'extended'");
}

std::string fmt_value(const DDouble& v, Precision prec) {
    if (prec == Precision::extended) return to_string(v, 30);
    std::ostringstream os;
    os << std::setprecision(17) << to_double(v);
    return os.str();
}

// Writes to --out when given, else stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw DomainError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

void emit_pairs(const CommonOpts& opt, const std::string& col0, const std::string& col1,
                const std::vector<std::pair<long, DDouble>>& rows, Precision prec) {
    Sink sink(opt.out_path);
    std::ostream& os = sink.stream();
    if (opt.format == "csv") {
        csv_row(os, {col0, col1});
        for (const auto& [i, v] : rows)
            csv_row(os, {std::to_string(i), fmt_value(v, prec)});
    } else {
        os << std::setw(6) << col0 << "  " << col1 << "\n";
        for (const auto& [i, v] : rows)
            os << std::setw(6) << i << "  " << fmt_value(v, prec) << "\n";
    }
}

// `--config FILE`: key=value lines with '#' comments; explicit flags win.
std::vector<std::string> apply_config_files(std::vector<std::string> args) {
    std::vector<std::string> out;
    std::vector<std::string> from_file;
    std::string pending;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        std::string path;
        if (a == "--config") {
            if (i + 1 >= args.size()) throw CLI::ValidationError("--config needs a file path");
            path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
        } else {
            out.push_back(a);
            continue;
        }
        std::ifstream in(path);
        if (!in) throw DomainError("cannot read config file " + path);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            auto e = line.find_last_not_of(" \t\r");
            line = line.substr(b, e - b + 1);
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw DomainError("config line is not key=value: " + line);
            std::string key = line.substr(0, eq);
            auto kend = key.find_last_not_of(" \t");
            key = key.substr(0, kend + 1);
            std::string value = line.substr(eq + 1);
            auto vb = value.find_first_not_of(" \t");
            value = vb == std::string::npos ? "" : value.substr(vb);
            from_file.push_back("--" + key + "=" + value);
        }
    }
    // command-line flags win: file-provided options are appended only when
    // the flag is absent from the explicit arguments
    for (const std::string& opt : from_file) {
        std::string key = opt.substr(0, opt.find('='));
        bool present = false;
        for (const std::string& a : out)
            if (a == key || a.rfind(key + "=", 0) == 0) present = true;
        if (!present) out.push_back(opt);
    }
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"orbitkit: iterated contraction maps, scaled residual sequences and "
                 "their limits"};
    app.require_subcommand(1);

    CommonOpts opt;
    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        if (needs_spec)
            sub->add_option("--spec", opt.spec_text, "function spec, e.g. sqrt_affine(c=2)")
                ->required();
        sub->add_option("--precision", opt.precision, "double | extended")
            ->check(CLI::IsMember({"double", "extended"}));
        sub->add_option("--format", opt.format, "table | csv")
            ->check(CLI::IsMember({"table", "csv"}));
        sub->add_option("--out", opt.out_path, "write output to a file instead of stdout");
        return sub;
    };

    auto* c_orbit = add_common(app.add_subcommand("orbit", "iterate f from t0"), true);
    c_orbit->add_option("--t0", opt.t0)->required();
    c_orbit->add_option("--n", opt.n);

    auto* c_cand = add_common(app.add_subcommand("candidate", "scaled residuals |L-t_n|/m^n"),
                              true);
    c_cand->add_option("--t0", opt.t0)->required();
    c_cand->add_option("--n", opt.n);

    auto* c_limit = add_common(app.add_subcommand("limit", "estimate the candidate limit"), true);
    c_limit->add_option("--t0", opt.t0)->required();
    c_limit->add_option("--rel-tol", opt.rel_tol);

    auto* c_mlimit = add_common(
        app.add_subcommand("mobius-limit", "closed-form candidate limit of a Mobius map"), true);
    c_mlimit->add_option("--t0", opt.t0)->required();

    double q_gap = 0.0, q_l = 0.0, q_m = 0.0, q_s = 0.0;
    auto* c_qcon = app.add_subcommand("q-construct",
                                      "build a Q-function from (l, m, s) or from --spec + --gap");
    c_qcon->add_option("--spec", opt.spec_text);
    c_qcon->add_option("--gap", q_gap);
    c_qcon->add_option("--l", q_l);
    c_qcon->add_option("--m", q_m);
    c_qcon->add_option("--s", q_s);

    double series_c = 6.0;
    long series_terms = 6;
    auto* c_series = add_common(
        app.add_subcommand("phi-series", "exact eigen-series coefficients for sqrt(c+t)"), false);
    c_series->add_option("--c", series_c);
    c_series->add_option("--terms", series_terms);

    long err_order = 5;
    double err_lo = -2.0, err_hi = 2.0;
    long quad_points = 129;
    auto* c_perr = app.add_subcommand("phi-error", "series residual max/avg on a range");
    c_perr->add_option("--c", series_c);
    c_perr->add_option("--terms", series_terms);
    c_perr->add_option("--n", err_order);
    c_perr->add_option("--lo", err_lo);
    c_perr->add_option("--hi", err_hi);
    c_perr->add_option("--quad-points", quad_points);

    long cheb_k = 2;
    bool cheb_scaled = false;
    auto* c_cheby = add_common(app.add_subcommand("cheby", "nested inverse-Chebyshev residuals"),
                               false);
    c_cheby->add_option("--k", cheb_k);
    c_cheby->add_option("--t0", opt.t0);
    c_cheby->add_option("--n", opt.n);
    c_cheby->add_option("--scaled", cheb_scaled);

    double cl = 2.0;
    auto* c_currie = app.add_subcommand("currie-c", "C(L) for the sqrt root family");
    c_currie->add_option("--l", cl);

    long samples = 10000;
    auto* c_koenigs = app.add_subcommand("koenigs-check", "disk self-map and cardioid checks");
    c_koenigs->add_option("--l", cl);
    c_koenigs->add_option("--samples", samples);

    double rl_lo = 0.0, rl_hi = 0.0;
    long rl_grid = 64;
    auto* c_verify = app.add_subcommand("verify-rootlike", "grid root-likeness verdict");
    c_verify->add_option("--spec", opt.spec_text)->required();
    c_verify->add_option("--lo", rl_lo)->required();
    c_verify->add_option("--hi", rl_hi)->required();
    c_verify->add_option("--grid", rl_grid);

    app.add_subcommand("repro", "run the full reproduction table, pass/fail per constant");

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    try {
        args = apply_config_files(std::move(args));
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        Precision prec = precision_of(opt.precision);
        std::cout.precision(15);

        if (c_orbit->parsed()) {
            Orbit o = orbit(parse_spec(opt.spec_text), opt.t0, opt.n, prec);
            std::vector<std::pair<long, DDouble>> rows;
            for (size_t i = 0; i < o.values.size(); ++i)
                rows.emplace_back(static_cast<long>(i), o.values[i]);
            emit_pairs(opt, "n", "t_n", rows, prec);
        } else if (c_cand->parsed()) {
            auto cs = candidate_sequence(parse_spec(opt.spec_text), opt.t0, opt.n, prec);
            std::vector<std::pair<long, DDouble>> rows;
            for (size_t i = 0; i < cs.c.size(); ++i)
                rows.emplace_back(static_cast<long>(i), cs.c[i]);
            emit_pairs(opt, "n", "c_n", rows, prec);
            if (cs.stopped_early)
                std::cerr << "note: stopped at n = " << cs.c.size() - 1
                          << " (residual at the rounding floor)\n";
        } else if (c_limit->parsed()) {
            LimitEstimate est = limit_of(parse_spec(opt.spec_text), opt.t0, opt.rel_tol, prec);
            const char* method = est.method == LimitMethod::aitken ? "aitken" : "direct-tail";
            std::cout << "limit = " << std::setprecision(17) << est.value
                      << "  (abs error bound " << std::setprecision(3) << est.abs_error_bound
                      << ", " << method << ", n_used = " << est.n_used << ")\n";
        } else if (c_mlimit->parsed()) {
            FunctionSpec spec = parse_spec(opt.spec_text);
            MobiusCoeffs mc{};
            if (const auto* m = std::get_if<MobiusFun>(&spec)) {
                mc = {m->a, m->b, m->d};
            } else if (const auto* cf = std::get_if<ContinuedFraction>(&spec)) {
                mc = {cf->a, cf->b, 0.0};
            } else {
                throw DomainError("mobius-limit needs a mobius or continued_fraction spec");
            }
            std::cout << "limit = " << std::setprecision(17) << candidate_limit_exact(mc, opt.t0)
                      << "  (exact-formula)\n";
        } else if (c_qcon->parsed()) {
            MobiusCoeffs q{};
            if (!opt.spec_text.empty()) {
                if (q_gap <= 0.0) throw DomainError("q-construct with --spec needs --gap > 0");
                q = associated_q(parse_spec(opt.spec_text), q_gap);
            } else {
                q = q_from_lms<double>({q_l, q_m, q_s});
            }
            MobiusEigen eg = eigen(q);
            std::cout << "q = " << format_spec(MobiusFun{q.a, q.b, q.d}) << "  (exact-formula)\n"
                      << "eigenvalues: " << eg.lambda << ", " << eg.mu << "; fixed points: "
                      << eg.L << ", " << eg.L1 << "; m = " << eg.m << "\n";
        } else if (c_series->parsed()) {
            RationalSeries rs = build_phi_series(series_c, static_cast<int>(series_terms));
            Sink sink(opt.out_path);
            std::ostream& os = sink.stream();
            csv_row(os, {"n", "numerator", "denominator", "coefficient_decimal"});
            for (int k = 0; k < static_cast<int>(rs.derivs_dd.size()); ++k) {
                if (rs.exact) {
                    BigRational coeff = taylor_coeff(rs, k);
                    csv_row(os, {std::to_string(k), coeff.numerator().str(),
                                 coeff.denominator().str(), decimal_string(coeff, 30)});
                } else {
                    DDouble fact(1.0);
                    for (int i = 2; i <= k; ++i) fact *= static_cast<double>(i);
                    csv_row(os, {std::to_string(k), "", "",
                                 to_string(rs.derivs_dd[static_cast<size_t>(k)] / fact, 30)});
                }
            }
        } else if (c_perr->parsed()) {
            if (!c_perr->count("--terms")) series_terms = err_order + 1;
            RationalSeries rs = build_phi_series(series_c, static_cast<int>(series_terms));
            SeriesErrorReport rep = phi_series_error(rs, static_cast<int>(err_order),
                                                     {err_lo, err_hi},
                                                     static_cast<int>(quad_points));
            std::cout << "order " << rep.n << " on [" << err_lo << ", " << err_hi
                      << "]: max error " << std::setprecision(6) << rep.max_error
                      << ", simpson average " << rep.avg_error << "\n";
        } else if (c_cheby->parsed()) {
            auto rows = cheb_nested_table(static_cast<int>(cheb_k), opt.t0, opt.n, cheb_scaled);
            emit_pairs(opt, "n", "c_n", rows, Precision::extended);
        } else if (c_currie->parsed()) {
            std::cout << "C(" << cl << ") = " << std::setprecision(17) << currie_c(cl) << "\n";
        } else if (c_koenigs->parsed()) {
            DiskCheckResult disk = disk_self_map_check(cl, samples);
            bool card = cardioid_containment_check(cl, 1000);
            std::cout << "disk self-map: " << (disk.ok ? "ok" : "FAILED") << ", min margin "
                      << std::setprecision(6) << disk.min_margin << " at ("
                      << disk.worst_point.real() << ", " << disk.worst_point.imag() << ")\n"
                      << "cardioid containment: " << (card ? "ok" : "FAILED") << "\n";
        } else if (c_verify->parsed()) {
            RootLikeReport rep = verify_root_like(parse_spec(opt.spec_text), {rl_lo, rl_hi},
                                                  static_cast<int>(rl_grid));
            std::cout << std::boolalpha << "contraction: " << rep.is_contraction
                      << ", f' > 0: " << rep.fprime_positive
                      << ", f'' < 0: " << rep.fsecond_negative
                      << ", fixed point inside: " << rep.fixed_point_inside
                      << "\nverdict: " << rep.verdict << "\n";
        } else {  // repro
            int failures = print_repro_report(std::cout);
            return failures == 0 ? 0 : 1;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const NotConverged& e) {
        std::cerr << "did not converge: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace orbitkit
