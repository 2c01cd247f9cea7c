#pragma once
// ============================================================================
// Exact product quadrature on catalog spaces.
//
// The polar direction of S^d carries the weight sin^{d-1}(theta) d theta =
// (1 - x^2)^{(d-2)/2} dx.  Instead of a general Gauss rule for that weight:
//   - even d: (1-x^2)^{(d-2)/2} is a polynomial; fold it into the integrand
//     and use Gauss-Legendre nodes;
//   - odd d: split off sqrt(1-x^2) and use the closed-form Chebyshev
//     second-kind rule x_k = cos(k pi/(n+1)), w_k = pi/(n+1) sin^2(k pi/(n+1)),
//     folding the leftover polynomial (1-x^2)^{(d-3)/2} into the weights.
// Both choices integrate p(x) (1-x^2)^{(d-2)/2} exactly for polynomials p up
// to the requested degree.  Sphere grids are built by polar recursion down
// to the uniform circle; torus factors take uniform angle grids, which are
// exact on characters e^{i k x} up to |k| = degree.
//
// Weights always sum to the geometric volume of the factor/space.
// ============================================================================

#include "symstri/space.hpp"

#include <vector>

namespace symstri {

/** Gauss-Legendre nodes/weights on [-1, 1] (exact through degree 2n - 1). */
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/**
 * Rule for Int_0^pi f(cos theta) sin^{d-1}(theta) d theta, exact whenever
 * f is a polynomial of degree <= degree.
 */
struct PolarRule {
    std::vector<double> theta;
    std::vector<double> weight;
};
PolarRule polar_rule(int d, int degree);

/**
 * Full product rule on M: points on every factor, weights summing to vol(M).
 * Exact on products of zonal polynomials of degree <= degree per factor and
 * torus characters with |xi_i| <= degree.
 */
struct QuadratureRule {
    std::vector<PointOnM> points;
    std::vector<double> weights;
};
QuadratureRule product_quadrature(const SpaceDescriptor& sp, int degree);

} // namespace symstri
