#pragma once
// ============================================================================
// Representation numbers of positive-definite integer quadratic forms.
//
// Convention: Q(x) = x^T M x with M integer symmetric, so an off-diagonal
// entry M_ij contributes 2 M_ij x_i x_j.  Positive definiteness is verified
// exactly through the rational LDL^T pivots.
//
// Two independent routes cross-check each other everywhere:
//   - rep_counts_upto builds the histogram r_Q(0..X).  Diagonal identity
//     forms use convolution of square histograms (r2 = r1 * r1, r4 = r2 * r2,
//     r5 = r4 * r1, ...); general forms walk the ellipsoid.
//   - ball_count counts {Q <= X} by a prefix recursion whose innermost level
//     is the closed-form count of an integer interval, never enumerated.
// The shell-sum identity  Sum_{n <= X} r_Q(n) = ball_count(X)  ties them.
//
// theta_major_arc_check evaluates the smoothed theta block
//   s_n(t) = Sum_m phi(m/n) r_Q(m) e^{2 pi i t (m - n)}
// at t = a/q + delta and compares it against the major-arc target
//   ( N / ( sqrt(q) (1 + N |delta|^{1/2}) ) )^r,  N = floor(sqrt(n)).
// Averaging s_n over >= 2n+1 equispaced t recovers phi(1) r_Q(n) = r_Q(n)
// exactly, which pins the normalization.
//
// joint_pair_count counts spectral pairs on a catalog space: lambda_1 in an
// inclusive coordinate cube, lambda_2 in the dyadic band [N2, 2N2), with
// spec(lambda_1) + spec(lambda_2) = n, all in exact arithmetic (histograms
// are keyed by period * value, an integer).
// ============================================================================

#include "symstri/space.hpp"

#include <complex>
#include <map>
#include <vector>

namespace symstri {

struct QuadForm {
    int r = 0;
    std::vector<std::vector<long long>> M;
};

QuadForm identity_form(int r);
QuadForm make_quadform(const std::vector<std::vector<long long>>& M);
long long quadform_eval(const QuadForm& Q, const std::vector<long long>& x);

/** r_Q(n) for 0 <= n <= X. */
std::vector<long long> rep_counts_upto(const QuadForm& Q, long long X);

/** #{x in Z^r : Q(x) <= X} by prefix recursion + closed-form innermost level. */
long long ball_count(const QuadForm& Q, long long X);

struct ExponentFit {
    double slope = 0.0;
    double residual = 0.0; // rms residual of the OLS fit in log-log space
    double theory = 0.0;
};

/** OLS of log(running max of r_Q) vs log n on dyadic checkpoints 16..n_max. */
ExponentFit rep_exponent_fit(const QuadForm& Q, long long n_max, double theory_exponent);

struct ThetaMajorArc {
    std::complex<double> value;
    double bound = 0.0;
    double ratio = 0.0;
};

/** Smoothed theta block at t = a/q + delta; needs 1 <= q < floor(sqrt(n)). */
ThetaMajorArc theta_major_arc_check(const QuadForm& Q, long long n, long long a, long long q,
                                    const Rat& delta);

/** Trapezoid average of s_n over M nodes (= r_Q(n) exactly once M >= 2n+1). */
double theta_fourier_extract(const QuadForm& Q, long long n, long long M);

/** Histogram over n of pair counts, keyed by period * (spec1 + spec2). */
std::map<long long, long long> joint_pair_histogram(const SpaceDescriptor& sp,
                                                    const Weight& cube_center,
                                                    const Rat& cube_side, const Rat& N2);

/** Pairs with spec(l1) + spec(l2) == n (l1 in the cube, l2 in the band). */
long long joint_pair_count(const SpaceDescriptor& sp, const Weight& cube_center,
                           const Rat& cube_side, const Rat& N2, const Rat& n);

} // namespace symstri
