#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "orbitkit/cli_app.hpp"

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "orbitkit");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int code = orbitkit::run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return {code, captured.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("limit prints the value with an error bound") {
    RunResult r = run({"limit", "--spec", "sqrt_affine(c=2)", "--t0", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2.4674011002723") != std::string::npos);
    CHECK(r.out.find("abs error bound") != std::string::npos);
    CHECK(r.out.find("aitken") != std::string::npos);
}

TEST_CASE("mobius-limit uses the exact formula") {
    RunResult r = run({"mobius-limit", "--spec", "mobius(a=2,b=15,d=0)", "--t0", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4.8") != std::string::npos);
    CHECK(r.out.find("exact-formula") != std::string::npos);

    r = run({"mobius-limit", "--spec", "continued_fraction(a=2,b=15)", "--t0", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4.8") != std::string::npos);

    r = run({"mobius-limit", "--spec", "sqrt_affine(c=2)", "--t0", "0"});
    CHECK(r.code == 3);
}

TEST_CASE("exit codes: usage 2, domain 3, non-convergence 4") {
    CHECK(run({"limit", "--t0", "0"}).code == 2);                       // missing --spec
    CHECK(run({"nonsense"}).code == 2);                                 // unknown verb
    CHECK(run({"limit", "--spec", "bogus(x=1)", "--t0", "0"}).code == 2 + 1);
    CHECK(run({"orbit", "--spec", "sqrt_affine(c=2)", "--t0", "-9", "--n", "3"}).code == 3);
    CHECK(run({"limit", "--spec", "sqrt_affine(c=2)", "--t0", "0", "--rel-tol", "1e-25"}).code ==
          4);
    // degenerate start (t0 = L) is a domain-style failure, not non-convergence
    CHECK(run({"limit", "--spec", "sqrt_affine(c=2)", "--t0", "2"}).code == 3);
}

TEST_CASE("orbit and candidate tables, table and csv formats") {
    RunResult r = run({"orbit", "--spec", "mobius(a=2,b=15,d=0)", "--t0", "2", "--n", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("9.5") != std::string::npos);

    std::string path = "/tmp/orbitkit_test_orbit.csv";
    r = run({"orbit", "--spec", "sqrt_affine(c=2)", "--t0", "0", "--n", "3", "--format", "csv",
             "--out", path});
    CHECK(r.code == 0);
    std::string csv = slurp(path);
    CHECK(csv.rfind("n,t_n\r\n", 0) == 0);  // header row first
    CHECK(csv.find("\r\n0,0") != std::string::npos);
    CHECK(csv.find("1.41421356237309504880168872421") != std::string::npos);  // 30 digits

    r = run({"candidate", "--spec", "sqrt_affine(c=2)", "--t0", "0", "--n", "6", "--format",
             "csv", "--out", path});
    CHECK(r.code == 0);
    csv = slurp(path);
    CHECK(csv.rfind("n,c_n\r\n", 0) == 0);
    CHECK(csv.find("2,2.3431457") != std::string::npos);  // c_2 = 16 (2 - 1.8477...)
    std::remove(path.c_str());
}

TEST_CASE("phi-series emits exact rational rows") {
    std::string path = "/tmp/orbitkit_test_series.csv";
    RunResult r = run({"phi-series", "--c", "6", "--terms", "6", "--out", path});
    CHECK(r.code == 0);
    std::string csv = slurp(path);
    CHECK(csv.rfind("n,numerator,denominator,coefficient_decimal\r\n", 0) == 0);
    CHECK(csv.find("5,97,31573395000,3.0722068") != std::string::npos);
    CHECK(csv.find("2,1,30,3.3333333") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("q-construct from lms and from a spec") {
    RunResult r = run({"q-construct", "--l", "2", "--m", "0.16666666666666666", "--s",
                       "-0.05555555555555555"});
    CHECK(r.code == 0);
    CHECK(r.out.find("mobius(a=3") != std::string::npos);

    r = run({"q-construct", "--spec", "sqrt_affine(c=2)", "--gap", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("eigenvalues") != std::string::npos);

    CHECK(run({"q-construct", "--spec", "sqrt_affine(c=2)"}).code == 3);  // missing gap
}

TEST_CASE("cheby, currie-c, koenigs-check, verify-rootlike, phi-error") {
    RunResult r = run({"cheby", "--k", "5", "--t0", "0", "--n", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1.2337") != std::string::npos);  // pi^2/8

    r = run({"currie-c", "--l", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("3.14159265") != std::string::npos);

    r = run({"koenigs-check", "--l", "2", "--samples", "400"});
    CHECK(r.code == 0);
    CHECK(r.out.find("disk self-map: ok") != std::string::npos);
    CHECK(r.out.find("cardioid containment: ok") != std::string::npos);

    r = run({"verify-rootlike", "--spec", "sqrt_affine(c=2)", "--lo", "-1", "--hi", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: true") != std::string::npos);

    r = run({"verify-rootlike", "--spec", "quartic_demo()", "--lo", "0.5", "--hi", "1.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: false") != std::string::npos);

    r = run({"phi-error", "--c", "6", "--n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("max error") != std::string::npos);
}

TEST_CASE("config file supplies flags; explicit flags win") {
    std::string path = "/tmp/orbitkit_test_config.cfg";
    {
        std::ofstream cfg(path);
        cfg << "# reproduction of the worked example\n"
            << "spec = mobius(a=2,b=15,d=0)\n"
            << "t0 = 2   # limit is 24/5\n";
    }
    RunResult r = run({"mobius-limit", "--config", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("4.8") != std::string::npos);

    // the command line overrides t0 from the file
    r = run({"mobius-limit", "--config", path, "--t0", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("limit = 0") != std::string::npos);  // t0 = L gives 0

    std::remove(path.c_str());
    CHECK(run({"mobius-limit", "--config", "/tmp/definitely_missing.cfg"}).code == 3);
}

TEST_CASE("deterministic output for identical flags") {
    RunResult a = run({"candidate", "--spec", "kth_root(l=3,k=3)", "--t0", "1", "--n", "10",
                       "--format", "csv"});
    RunResult b = run({"candidate", "--spec", "kth_root(l=3,k=3)", "--t0", "1", "--n", "10",
                       "--format", "csv"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
