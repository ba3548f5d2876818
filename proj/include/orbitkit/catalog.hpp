#pragma once

#include <optional>
#include <utility>

#include "orbitkit/funcspec.hpp"

namespace orbitkit {

/// Fixed point data for a catalog entry: L, the multiplier m = f'(L), and
/// (when the family is twice differentiable there) s = f''(L).
struct FixedPointInfo {
    double L;
    double m;
    std::optional<double> s;
    bool attracting;  // |m| < 1
};

/// Same data carried in extended precision, for orbit targets.
struct FixedPointExt {
    DDouble L;
    DDouble m;
};

/// Analytic fixed point of the attracting branch.  Every catalog family has a
/// closed form; a Newton polish from the documented per-family seed guards the
/// few entries whose closed form involves transcendentals.
FixedPointInfo fixed_point(const FunctionSpec& spec);

FixedPointExt fixed_point_ext(const FunctionSpec& spec);

/// Newton iteration on f(t) - t from the given seed; used as an independent
/// cross-check of the closed forms.  Throws NoFixedPoint when it fails to
/// reach |f(t) - t| <= 1e-14 * max(1, |t|).
double newton_fixed_point(const FunctionSpec& spec, double seed, int max_iter = 60);

/// Documented Newton seed for each family.
double newton_seed(const FunctionSpec& spec);

/// Maximal interval (lo, hi) on which 0 < f' < 1, in closed form.  Supported
/// for KthRoot, SqrtAffine and ChebInverse; throws Unsupported otherwise
/// (use scan_contraction_interval for a numeric answer).
std::pair<double, double> contraction_interval(const FunctionSpec& spec);

/// Numeric fallback: scans [lo, hi] on a grid and returns the widest
/// subinterval around the fixed point with 0 < f' < 1.
std::pair<double, double> scan_contraction_interval(const FunctionSpec& spec, double lo,
                                                    double hi, int grid_points = 4096);

struct RootLikeReport {
    std::pair<double, double> interval;
    bool is_contraction;     // |f'| < 1 on the grid
    bool fprime_positive;    // f' > 0 on the grid
    bool fsecond_negative;   // f'' < 0 on the grid
    bool fixed_point_inside; // L strictly inside the interval
    bool verdict;            // all of the above
};

/// Grid check of the root-likeness conditions on [lo, hi].  The grid includes
/// the endpoints and the fixed point itself.  Analytic derivatives are used;
/// grid points outside the family domain raise DomainError.
RootLikeReport verify_root_like(const FunctionSpec& spec, std::pair<double, double> interval,
                                int grid_points);

/// An interval on which the family is known root-like (for property tests);
/// empty for families that are not root-like anywhere.
std::optional<std::pair<double, double>> root_like_interval(const FunctionSpec& spec);

}  // namespace orbitkit
