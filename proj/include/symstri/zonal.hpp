#pragma once
// ============================================================================
// Zonal spherical function values.
//
// On S^d (and on SU(2) viewed as the unit S^3) the normalized zonal function
// of the mode n is the ultraspherical polynomial
//     p_n(x) = C_n^nu(x) / C_n^nu(1),   nu = (d-1)/2,   x = cos(theta),
// normalized so p_n(1) = 1; |p_n| <= 1 on [-1,1].  It satisfies
//     (n + 2 nu - 1) p_n = 2 x (n + nu - 1) p_{n-1} - (n - 1) p_{n-2},
// p_0 = 1, p_1 = x, which is the stable upward recurrence used throughout.
// d = 2 gives Legendre, d = 3 gives sin((n+1)theta) / ((n+1) sin theta).
//
// Torus factors carry the characters e^{i xi . x}.  On a product the zonal
// function is the product of the factor values.
//
// phi_laplace_integral is the independent construction on S^2:
//     (1/2pi) Int_0^{2pi} (cos 2theta + i sin 2theta cos 2t)^n dt
//       = P_n(cos 2theta),
// evaluated by the trapezoid rule, which is exact as soon as the node count
// exceeds the top harmonic 2n of the integrand; below 4(n+1) nodes the
// result is flagged, not trusted.
// ============================================================================

#include "symstri/space.hpp"

#include <complex>
#include <vector>

namespace symstri {

/** p_n(x) with p_n(1) = 1 for S^d; d >= 2, n >= 0, |x| <= 1 (+1e-9 slack). */
double ultraspherical_norm(int d, long long n, double x);

/** All of p_0(x) .. p_nmax(x) from one pass of the recurrence. */
std::vector<double> ultraspherical_column(int d, long long nmax, double x);

/** Full zonal value phi_lambda at a zonal point (validated). */
std::complex<double> zonal_value(const SpaceDescriptor& sp, const Weight& lam,
                                 const ZonalPoint& z);

struct LaplaceResult {
    std::complex<double> value;
    bool precision_warning = false; // quad_points below the exactness threshold
};

/** Trapezoid evaluation of the degree-n Laplace integral at angle theta. */
LaplaceResult phi_laplace_integral(long long n, double theta, long long quad_points);

} // namespace symstri
