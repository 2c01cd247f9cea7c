#pragma once
// ============================================================================
// Farey dissection of the time circle and its dyadic refinement.
//
// farey_sequence(n) lists the reduced fractions a/q in [0,1] with q <= n in
// ascending order (0/1 first, 1/1 last); consecutive terms satisfy the
// unimodularity a'q - a q' = 1.  farey_arcs(n) surrounds each fraction by
// the interval reaching to the mediants with its neighbours, so the arcs
// tile the circle exactly; the two endpoints 0/1 and 1/1 merge into one arc
// centred at 0.  The half-length toward a neighbour a'/q' is exactly
// 1/(q (q + q')), which lies in [1/(2qn), 1/(qn)) because Farey neighbours
// satisfy n < q + q' <= 2n.
//
// arc_refine slices one arc into dyadic distance cells: with Q the largest
// power of two <= q and Lmax the largest power of two <= N, the cell labeled
// L in [Q, Lmax] holds the distances in (1/(2NL), 1/(NL)], the innermost
// cell [0, 1/(N Lmax)] also carries the label Lmax, and the outermost cell
// (L = Q) absorbs everything out to the arc edge.  All boundaries are exact
// rationals.
//
// indicator_fourier_sup measures the Fourier decay of the indicator of the
// union of all (Q, L) cells at level N: it returns the sup of |c_hat(n)| for
// 1 <= n <= 64 N^2 together with the exact time measure period * |union|.
//
// weyl_denominator_sum is the classical complete-sum heuristic
//     Sum_{|m| <= N} 1 / max(1/N, ||m t + h||)^2
// evaluated in exact rational arithmetic.
// ============================================================================

#include "symstri/rational.hpp"
#include "symstri/errors.hpp"

#include <vector>

namespace symstri {

struct Frac {
    long long a = 0;
    long long q = 1;
    bool operator==(const Frac& o) const { return a == o.a && q == o.q; }
};

std::vector<Frac> farey_sequence(long long n);

struct Arc {
    Frac center;
    Rat left = 0;  // half-length toward the left neighbour
    Rat right = 0; // half-length toward the right neighbour
};

/** Arcs tiling R/Z, one per fraction of F_n with 0/1 and 1/1 merged. */
std::vector<Arc> farey_arcs(long long n);

/** Largest power of two <= q (q >= 1). */
long long dyadic_floor(long long q);

struct ArcCell {
    long long L = 1;
    Rat lo = 0; // distances d with lo < d <= hi (innermost cell includes 0)
    Rat hi = 0;
};

struct ArcRefinement {
    std::vector<ArcCell> left;  // cells on the side toward the left neighbour
    std::vector<ArcCell> right;
};

/** Dyadic distance cells of one arc at level N (requires q < N). */
ArcRefinement arc_refine(const Arc& arc, long long N);

struct IndicatorSup {
    double sup_mod = 0.0; // sup over 1 <= n <= 64 N^2 of |c_hat(n)|
    Rat l1_mass = 0;      // period * total length of the union
};

/** Fourier sup of the indicator of the (Q, L) cell union at level N. */
IndicatorSup indicator_fourier_sup(long long N, long long Q, long long L, const Rat& period);

/** |c_hat(n)| for n = 1 .. n_max of the same indicator (table form). */
std::vector<double> indicator_fourier_series(long long N, long long Q, long long L,
                                             long long n_max);

Rat weyl_denominator_sum(long long N, const Rat& t, const Rat& h);

} // namespace symstri
