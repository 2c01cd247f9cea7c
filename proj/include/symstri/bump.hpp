#pragma once
// ============================================================================
// The fixed smooth Littlewood-Paley cutoffs.
//
//   g(s)    = exp(-1/s) for s > 0, 0 otherwise            (C^infty glue)
//   chi(y)  = g(2-|y|) / (g(2-|y|) + g(|y|-1))            (1 on |y|<=1, 0 on |y|>=2)
//   phi(y)  = chi(y) - chi(2y)                            (supported in 1/2 < |y| < 2)
//   phi0(y) = chi(2y)                                     (low-pass cap, |y| < 1)
//
// The family telescopes exactly:  phi0(y) + sum_{j>=0} phi(y / 2^j) = 1 for
// every y with |y| <= 2^J once J is large enough, because the partial sum
// collapses to chi(y / 2^J).  phi(1) = chi(1) - chi(2) = 1, so the dyadic
// weight attached to a mode sitting exactly at |lambda|_rho = N is 1.
// ============================================================================

#include <cmath>

namespace symstri {

inline double bump_g(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

inline double bump_chi(double y) {
    double a = std::fabs(y);
    double up = bump_g(2.0 - a);
    double dn = bump_g(a - 1.0);
    if (up == 0.0) return 0.0;
    return up / (up + dn);
}

inline double bump_phi(double y) { return bump_chi(y) - bump_chi(2.0 * y); }

inline double bump_phi0(double y) { return bump_chi(2.0 * y); }

} // namespace symstri
