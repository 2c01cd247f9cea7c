#pragma once
// ============================================================================
// Spectral projectors and product supports.
//
// With normalized Haar measure, the projector onto the lambda-isotypic block
// acts on a sampled function by
//     (P_lambda f)(x) = (d_lambda / vol) Sum_y w_y f(y) phi_lambda(x - y),
// where {y, w_y} is a quadrature rule whose weights sum to vol(M) and x - y
// stands for the zonal coordinates of the pair.  The squared L^2 norm of the
// projection collapses to the double sum
//     ||P_lambda f||^2 = (d_lambda / vol) Sum_{y,y'} w_y w_y'
//                         f(y) conj(f(y')) phi_lambda(y - y'),
// which is what the support scans use (O(grid^2) per mode).
//
// The product phi_lambda . phi_mu decomposes over modes nu = lambda + xi
// where xi runs over the free weight lattice inside the shifted ball
//     |xi + rho0|_G <= |mu + rho0|_G,
// intersected with the valid cone.  product_support returns that predicted
// superset (exact enumeration, lex-ordered).
// ============================================================================

#include "symstri/quadrature.hpp"
#include "symstri/space.hpp"
#include "symstri/zonal.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace symstri {

struct SampledFunction {
    QuadratureRule grid;
    std::vector<std::complex<double>> values;
};

/** Evaluate any zonal-atom-free function on a rule (helper for tests/CLI). */
SampledFunction sample_on_rule(const SpaceDescriptor& sp, const QuadratureRule& rule,
                               const std::function<std::complex<double>(const PointOnM&)>& f);

/** (P_lambda f)(x) as above; throws on invalid lambda or mismatched sizes. */
std::complex<double> projector_apply(const SpaceDescriptor& sp, const Weight& lam,
                                     const SampledFunction& f, const PointOnM& x);

/** ||P_lambda f||_{L^2}^2 via the grid double sum (real up to roundoff). */
double projector_l2_sq(const SpaceDescriptor& sp, const Weight& lam, const SampledFunction& f);

/** Predicted modes of phi_lambda . phi_mu (superset, exact, lex-ordered). */
std::vector<Weight> product_support(const SpaceDescriptor& sp, const Weight& lam,
                                    const Weight& mu);

} // namespace symstri
