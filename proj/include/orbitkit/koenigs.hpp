#pragma once

#include <complex>
#include <vector>

#include "orbitkit/iteration.hpp"

namespace orbitkit {

using Complex = std::complex<double>;

/// Principal square root by polar halving (r, theta) -> (sqrt r, theta/2),
/// theta in (-pi, pi].
Complex principal_sqrt(Complex z);

struct DiskCheckResult {
    bool ok;
    double min_margin;    // min over samples of L - |f(z) - L|
    Complex worst_point;  // sample attaining the minimum
};

/// Samples D_L(L) (open disk of radius L centered at L) on a polar grid with
/// Chebyshev-spaced radii and checks |sqrt(L^2 - L + z) - L| < L at every
/// sample.  n_samples >= 100.
DiskCheckResult disk_self_map_check(double L, long n_samples);

/// Checks the cardioid picture behind the self-map proof: the circle
/// r = 2 L^2 cos(theta) lies inside the cardioid r = 2 L^2 (1 + cos theta),
/// and squaring polar samples of D_L(L) lands inside the cardioid.
bool cardioid_containment_check(double L, int n_theta);

/// Koenigs approximant lambda^-n g^(n)(zeta_0) for f(z) = sqrt(L^2 - L + z),
/// where g = psi^-1 . f . psi shifts the disk to the unit disk via
/// psi(z) = L + L z, zeta_0 = psi^-1(z), and lambda = 1/(2L).
/// Throws DomainExit if an iterate meets the branch cut of the square root.
Complex koenigs_approximant(double L, Complex z, long n);

/// C(L) = sqrt(lim (2L)^n (L - f_L^(n-1)(0))) for f_L(t) = sqrt(L^2 - L + t),
/// evaluated as sqrt(4 L^2 * candidate-limit from t0 = f_L(0)) in extended
/// precision.  C(2) is pi.
double currie_c(double L, double rel_tol = 1e-9);

}  // namespace orbitkit
