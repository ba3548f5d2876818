#include "orbitkit/koenigs.hpp"

#include <cmath>

namespace orbitkit {

Complex principal_sqrt(Complex z) {
    double r = std::abs(z);
    double theta = std::arg(z);  // (-pi, pi]
    return std::polar(std::sqrt(r), theta / 2.0);
}

namespace {

Complex sqrt_family_map(double L, Complex z) {
    Complex w = L * L - L + z;
    if (w.imag() == 0.0 && w.real() < 0.0)
        throw DomainExit("square-root argument on the negative real axis");
    return principal_sqrt(w);
}

}  // namespace

DiskCheckResult disk_self_map_check(double L, long n_samples) {
    if (!(L > 1.0)) throw DomainError("disk_self_map_check: L must exceed 1");
    if (n_samples < 100) throw DomainError("disk_self_map_check: need at least 100 samples");

    long n_radii = std::max(8L, static_cast<long>(std::sqrt(static_cast<double>(n_samples) / 4)));
    long n_angles = (n_samples + n_radii - 1) / n_radii;

    DiskCheckResult res{true, L, Complex(L, 0.0)};
    for (long i = 0; i < n_radii; ++i) {
        // Chebyshev-Gauss nodes on (0, L): clustered toward the center and the
        // boundary, where the margin is smallest.
        double rho = L * 0.5 * (1.0 + std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * n_radii)));
        for (long j = 0; j < n_angles; ++j) {
            double phi = 2.0 * M_PI * j / n_angles;
            Complex z = Complex(L, 0.0) + std::polar(rho, phi);
            Complex fz = sqrt_family_map(L, z);
            double margin = L - std::abs(fz - Complex(L, 0.0));
            if (margin < res.min_margin) {
                res.min_margin = margin;
                res.worst_point = z;
            }
            if (margin <= 0.0) res.ok = false;
        }
    }
    return res;
}

bool cardioid_containment_check(double L, int n_theta) {
    if (!(L > 1.0)) throw DomainError("cardioid_containment_check: L must exceed 1");
    if (n_theta < 3) throw DomainError("cardioid_containment_check: need n_theta >= 3");
    double R = 2.0 * L * L;
    // Circle r = R cos(theta) inside cardioid r = R (1 + cos theta).
    for (int i = 0; i < n_theta; ++i) {
        double theta = -M_PI / 2.0 + M_PI * i / (n_theta - 1);
        if (R * std::cos(theta) > R * (1.0 + std::cos(theta))) return false;
    }
    // Squaring samples of the disk boundary region: (r, t) with
    // r <= 2 L cos(t) maps to (r^2, 2t), which must satisfy
    // r^2 <= 2 L^2 (1 + cos 2t).
    for (int i = 0; i < n_theta; ++i) {
        double t = -M_PI / 2.0 + M_PI * i / (n_theta - 1);
        for (double frac : {0.25, 0.5, 0.75, 1.0}) {
            double r = frac * 2.0 * L * std::cos(t);
            if (r * r > 2.0 * L * L * (1.0 + std::cos(2.0 * t)) + 1e-12) return false;
        }
    }
    return true;
}

Complex koenigs_approximant(double L, Complex z, long n) {
    if (!(L > 1.0)) throw DomainError("koenigs_approximant: L must exceed 1");
    if (std::abs(z - Complex(L, 0.0)) >= L)
        throw DomainError("koenigs_approximant: z must lie in the open disk D_L(L)");
    if (n < 0) throw DomainError("koenigs_approximant: n must be nonnegative");

    // g = psi^-1 . f . psi with psi(z) = L + L z; iterate g from psi^-1(z).
    Complex zeta = (z - Complex(L, 0.0)) / L;
    for (long i = 0; i < n; ++i) {
        Complex w = Complex(L, 0.0) + L * zeta;
        zeta = (sqrt_family_map(L, w) - Complex(L, 0.0)) / L;
    }
    double lambda = 1.0 / (2.0 * L);
    double scale = std::pow(lambda, -static_cast<double>(n));
    return scale * zeta;
}

double currie_c(double L, double rel_tol) {
    if (!(L > 1.0)) throw DomainError("currie_c: L must exceed 1");
    // f_L(t) = sqrt(L^2 - L + t) is the k = 2 member of the root family.
    FunctionSpec spec = SqrtAffine{L * L - L};
    double t0 = std::sqrt(L * L - L);  // = f_L(0)
    LimitEstimate est = limit_of(spec, t0, rel_tol, Precision::extended);
    return std::sqrt(4.0 * L * L * est.value);
}

}  // namespace orbitkit
