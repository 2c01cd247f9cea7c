#pragma once
// ============================================================================
// Band-limited trial states.
//
// A state is a finite sum of zonal atoms
//     f(x) = Sum_i c_i d_{lambda_i} phi_{lambda_i}(x - y_i),
// each atom a translated zonal function; the translates of phi_lambda span
// the full lambda-isotypic block, so these states exhaust the band subspace.
//
// The L^2 norm needs no quadrature: with normalized Haar measure,
//     < d phi_lam(. - y), d phi_lam(. - z) > = vol d_lam phi_lam(z - y)
// and blocks of different lambda are orthogonal, so
//     ||f||^2 = vol Sum_lam d_lam Sum_{i,j in block lam}
//               c_i conj(c_j) phi_lam(y_j - y_i),
// evaluated exactly up to the zonal recurrences (no discretization).
//
// random_band_state draws modes uniformly from the dyadic band [N, 2N),
// centers uniformly from M, coefficients complex gaussian, then normalizes
// to ||f|| = 1.  coherent_probe_state is the deterministic extremal probe:
// every band mode exactly once, equal coefficients, one shared center.
// random_shell_state/coherent_shell_probe are the analogous constructions
// on one exact spectral shell.
// ============================================================================

#include "symstri/space.hpp"
#include "symstri/zonal.hpp"

#include <complex>
#include <map>
#include <vector>

namespace symstri {

struct BandAtom {
    Weight lam;
    PointOnM center;
    std::complex<double> coeff;
};

struct BandState {
    std::vector<BandAtom> atoms;
};

std::complex<double> band_state_eval(const SpaceDescriptor& sp, const BandState& st,
                                     const PointOnM& x);

/** Exact ||f||_{L^2}^2 through the Gram formula above. */
double band_state_l2_sq(const SpaceDescriptor& sp, const BandState& st);

/** Divide all coefficients by ||f|| (throws DomainError on the zero state). */
void band_state_normalize(const SpaceDescriptor& sp, BandState& st);

/** n_atoms <= 0 picks the default 3 * |band|.  Empty band: DomainError. */
BandState random_band_state(const SpaceDescriptor& sp, const Rat& N, long long n_atoms,
                            RngStream& rng);

/** Every band mode once, equal coefficients, one shared center; ||f|| = 1. */
BandState coherent_probe_state(const SpaceDescriptor& sp, const Rat& N, const PointOnM& center);

/** Gaussian coefficients on the exact shell spec == n, centers at identity. */
BandState random_shell_state(const SpaceDescriptor& sp, const Rat& shell_n, RngStream& rng);

/** Equal coefficients on the exact shell, one shared center; ||f|| = 1. */
BandState coherent_shell_probe(const SpaceDescriptor& sp, const Rat& shell_n);

/** Pure tori only: collapse atoms to lattice coefficients A_xi with
 *  f(x) = Sum_xi A_xi e^{i xi . x};  ||f||^2 = vol Sum |A_xi|^2. */
std::map<Weight, std::complex<double>> torus_mode_coefficients(const SpaceDescriptor& sp,
                                                               const BandState& st);

} // namespace symstri
