#include "orbitkit/funcspec.hpp"

#include "orbitkit/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace orbitkit {

void validate(const FunctionSpec& spec) {
    std::visit(
        [](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                if (!(f.c > 0.0)) throw DomainError("sqrt_affine: c must be positive");
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                if (f.k < 2) throw DomainError("kth_root: k must be >= 2");
                // attracting fixed point needs |f'(l)| = 1/(k l^(k-1)) < 1
                if (!(f.l > std::pow(1.0 / f.k, 1.0 / (f.k - 1))))
                    throw DomainError("kth_root: l too small for an attracting fixed point");
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                if (f.b == f.a * f.d) throw DomainError("mobius: constant map (b == a*d)");
            } else if constexpr (std::is_same_v<F, LogShift>) {
                if (!(f.l > 0.0)) throw DomainError("log_shift: l must be positive");
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                if (!(f.alpha > 0.0 && f.alpha < 1.0))
                    throw DomainError("power_map: alpha must be in (0, 1)");
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                if (f.k < 2 || f.k > 64) throw DomainError("cheb_inverse: k must be in [2, 64]");
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                if (f.b == 0.0) throw DomainError("continued_fraction: b must be nonzero");
            }
        },
        spec);
}

std::string family_name(const FunctionSpec& spec) {
    return std::visit(
        [](const auto& f) -> std::string {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) return "sqrt_affine";
            else if constexpr (std::is_same_v<F, KthRoot>) return "kth_root";
            else if constexpr (std::is_same_v<F, MobiusFun>) return "mobius";
            else if constexpr (std::is_same_v<F, LogShift>) return "log_shift";
            else if constexpr (std::is_same_v<F, RationalDemo>) return "rational_demo";
            else if constexpr (std::is_same_v<F, PowerMap>) return "power_map";
            else if constexpr (std::is_same_v<F, ScaledCubeRoot>) return "scaled_cube_root";
            else if constexpr (std::is_same_v<F, ExpConjugate>) return "exp_conjugate";
            else if constexpr (std::is_same_v<F, ChebInverse>) return "cheb_inverse";
            else if constexpr (std::is_same_v<F, ContinuedFraction>) return "continued_fraction";
            else if constexpr (std::is_same_v<F, NonSmoothDemo>) return "non_smooth_demo";
            else return "quartic_demo";
        },
        spec);
}

namespace {

std::string num_str(double v) { return format_shortest(v); }

}  // namespace

std::string format_spec(const FunctionSpec& spec) {
    std::string name = family_name(spec);
    return std::visit(
        [&](const auto& f) -> std::string {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                return name + "(c=" + num_str(f.c) + ")";
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                return name + "(l=" + num_str(f.l) + ",k=" + std::to_string(f.k) + ")";
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                return name + "(a=" + num_str(f.a) + ",b=" + num_str(f.b) +
                       ",d=" + num_str(f.d) + ")";
            } else if constexpr (std::is_same_v<F, LogShift>) {
                return name + "(l=" + num_str(f.l) + ")";
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                return name + "(alpha=" + num_str(f.alpha) + ")";
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                return name + "(k=" + std::to_string(f.k) +
                       ",scaled=" + (f.scaled ? "true" : "false") + ")";
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                return name + "(a=" + num_str(f.a) + ",b=" + num_str(f.b) + ")";
            } else {
                return name + "()";
            }
        },
        spec);
}

namespace {

double parse_value(const std::string& raw, const std::string& context) {
    std::string s = raw;
    if (s == "true") return 1.0;
    if (s == "false") return 0.0;
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(s.substr(0, slash));
            double den = std::stod(s.substr(slash + 1));
            if (den == 0.0) throw DomainError("spec value with zero denominator: " + raw);
            return num / den;
        }
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw DomainError("malformed value '" + raw + "' in " + context);
    }
}

std::map<std::string, double> parse_kv(const std::string& body, const std::string& context) {
    std::map<std::string, double> kv;
    std::string token;
    std::istringstream in(body);
    while (std::getline(in, token, ',')) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw DomainError("expected key=value, got '" + token + "' in " + context);
        std::string key = token.substr(0, eq);
        if (kv.count(key)) throw DomainError("duplicate key '" + key + "' in " + context);
        kv[key] = parse_value(token.substr(eq + 1), context);
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, const std::string& ctx) {
    auto it = kv.find(key);
    if (it == kv.end()) throw DomainError("missing key '" + key + "' in " + ctx);
    double v = it->second;
    kv.erase(it);
    return v;
}

double take_or(std::map<std::string, double>& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    double v = it->second;
    kv.erase(it);
    return v;
}

}  // namespace

FunctionSpec parse_spec(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DomainError("empty function spec");

    std::string name = s;
    std::string body;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw DomainError("unbalanced parentheses in spec: " + text);
        name = s.substr(0, open);
        body = s.substr(open + 1, s.size() - open - 2);
    }
    auto kv = parse_kv(body, text);

    FunctionSpec spec;
    if (name == "sqrt_affine") {
        spec = SqrtAffine{take(kv, "c", text)};
    } else if (name == "kth_root") {
        spec = KthRoot{take(kv, "l", text), static_cast<int>(take(kv, "k", text))};
    } else if (name == "mobius") {
        spec = MobiusFun{take(kv, "a", text), take(kv, "b", text), take(kv, "d", text)};
    } else if (name == "log_shift") {
        spec = LogShift{take(kv, "l", text)};
    } else if (name == "rational_demo") {
        spec = RationalDemo{};
    } else if (name == "power_map") {
        spec = PowerMap{take(kv, "alpha", text)};
    } else if (name == "scaled_cube_root") {
        spec = ScaledCubeRoot{};
    } else if (name == "exp_conjugate") {
        spec = ExpConjugate{};
    } else if (name == "cheb_inverse") {
        spec = ChebInverse{static_cast<int>(take(kv, "k", text)),
                           take_or(kv, "scaled", 0.0) != 0.0};
    } else if (name == "continued_fraction") {
        spec = ContinuedFraction{take(kv, "a", text), take(kv, "b", text)};
    } else if (name == "non_smooth_demo") {
        spec = NonSmoothDemo{};
    } else if (name == "quartic_demo") {
        spec = QuarticDemo{};
    } else {
        throw DomainError("unknown function family '" + name + "'");
    }
    if (!kv.empty()) throw DomainError("unexpected key '" + kv.begin()->first + "' in " + text);
    validate(spec);
    return spec;
}

bool in_domain(const FunctionSpec& spec, double t) {
    return std::visit(
        [&](const auto& f) -> bool {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, SqrtAffine>) {
                return t >= -f.c;
            } else if constexpr (std::is_same_v<F, KthRoot>) {
                return std::pow(f.l, f.k) - f.l + t >= 0.0;
            } else if constexpr (std::is_same_v<F, MobiusFun>) {
                return t != -f.d;
            } else if constexpr (std::is_same_v<F, LogShift>) {
                return std::exp(f.l) - f.l + t > 0.0;
            } else if constexpr (std::is_same_v<F, PowerMap>) {
                return t >= 0.0;
            } else if constexpr (std::is_same_v<F, ScaledCubeRoot>) {
                return t >= 0.0;
            } else if constexpr (std::is_same_v<F, ExpConjugate>) {
                return t >= std::exp(-2.0);
            } else if constexpr (std::is_same_v<F, ChebInverse>) {
                return t >= (f.scaled ? -static_cast<double>(f.k) : -1.0);
            } else if constexpr (std::is_same_v<F, ContinuedFraction>) {
                return t != 0.0;
            } else {
                return true;
            }
        },
        spec);
}

}  // namespace orbitkit
