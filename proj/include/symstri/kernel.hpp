#pragma once
// ============================================================================
// Schrodinger kernel at frequency N as an explicit exponential sum.
//
//   K_N(t, x) = Sum_lambda phi(|lambda|_rho / N) e^{-i t |lambda|^2_rho}
//               d_lambda phi_lambda(x)
//
// The bump phi is supported in (1/2, 2), so the sum runs over the closed
// spectral window N^2/4 <= |lambda|^2_rho <= 4 N^2 (the endpoint modes carry
// weight exactly zero and are dropped).  Phases are handled exactly: with
// m = period * |lambda|^2_rho (always an integer) and t = 2 pi period t_frac,
//   e^{-i t |lambda|^2_rho} = e^{-2 pi i frac(m t_frac)},
// so a rational t_frac gives phases with no accumulated floating error and
// K is exactly periodic in t_frac with period 1.
//
// Parseval (normalized Haar, ||phi_lambda||^2 = vol / d_lambda):
//   (1/vol) Int_M |K_N(t, x)|^2 dx = Sum_lambda phi(|lambda|_rho/N)^2 d_lambda
// for every t.
//
// dispersive_rhs is the major-arc target size
//   N^d / ( sqrt(q) (1 + N dist^{1/2}) )^r,   (defined only for q < N)
// with d = dim M, r = rank M, dist = |t_frac - a/q|.
// ============================================================================

#include "symstri/space.hpp"
#include "symstri/zonal.hpp"

#include <complex>
#include <vector>

namespace symstri {

struct KernelModes {
    std::vector<Weight> modes;
    std::vector<double> bump;       // phi(|lambda|_rho / N)
    std::vector<long long> dlam;    // d_lambda
    std::vector<double> coeff;      // phi * d_lambda
    std::vector<long long> phase;   // m = period * spec(lambda), integer
    std::vector<Rat> spec;          // |lambda|^2_rho
};

/** Modes with nonzero bump weight in the window [N^2/4, 4 N^2]. */
KernelModes kernel_modes(const SpaceDescriptor& sp, const Rat& N);

/** Exact-phase evaluation at rational circle time t_frac = t / (2 pi period). */
std::complex<double> kernel_value(const SpaceDescriptor& sp, const KernelModes& km,
                                  const Rat& t_frac, const ZonalPoint& z);

/** Same kernel through double phases e^{-i t spec} (for periodicity checks). */
std::complex<double> kernel_value_time(const SpaceDescriptor& sp, const KernelModes& km,
                                       double t, const ZonalPoint& z);

/** Sum phi^2 d_lambda = (1/vol) ||K_N(t, .)||^2 for every t. */
double kernel_parseval_sum(const KernelModes& km);

/** Major-arc dispersive bound; throws DomainError when q >= N. */
double dispersive_rhs(const SpaceDescriptor& sp, long long N, long long q, const Rat& dist);

} // namespace symstri
