#include "symstri/farey.hpp"

#include <cmath>
#include <complex>

namespace symstri {

std::vector<Frac> farey_sequence(long long n) {
    if (n < 1) throw DomainError("farey_sequence needs n >= 1");
    std::vector<Frac> out;
    long long a = 0, b = 1, c = 1, d = n;
    out.push_back({0, 1});
    while (c <= n) {
        out.push_back({c, d});
        long long k = (n + b) / d;
        long long c2 = k * c - a, d2 = k * d - b;
        a = c;
        b = d;
        c = c2;
        d = d2;
    }
    return out;
}

std::vector<Arc> farey_arcs(long long n) {
    std::vector<Frac> f = farey_sequence(n);
    std::vector<Arc> arcs;
    // Interior fractions: mediant boundaries on both sides.  The two ends
    // 0/1 and 1/1 merge into one circle arc centred at 0: its right half
    // reaches the mediant with 1/n and its left half is the mirror image,
    // the mediant of 1/1 with its left neighbour (n-1)/n shifted by -1.
    const std::size_t m = f.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        Arc arc;
        arc.center = f[i];
        const Frac L = (i == 0) ? Frac{f[m - 2].a - f[m - 2].q, f[m - 2].q} : f[i - 1];
        const Frac R = f[i + 1];
        // half-length to a neighbour a'/q' is |a/q - (a+a')/(q+q')| = 1/(q(q+q'))
        arc.left = Rat(1) / (Rat(arc.center.q) * Rat(arc.center.q + L.q));
        arc.right = Rat(1) / (Rat(arc.center.q) * Rat(arc.center.q + R.q));
        arcs.push_back(arc);
    }
    return arcs;
}

long long dyadic_floor(long long q) {
    if (q < 1) throw DomainError("dyadic_floor needs q >= 1");
    long long p = 1;
    while (2 * p <= q) p *= 2;
    return p;
}

ArcRefinement arc_refine(const Arc& arc, long long N) {
    if (N < 1) throw DomainError("arc_refine needs N >= 1");
    if (arc.center.q >= N)
        throw DomainError("arc_refine expects q < N (got q = " + std::to_string(arc.center.q) +
                          ", N = " + std::to_string(N) + ")");
    const long long Q = dyadic_floor(arc.center.q);
    const long long Lmax = dyadic_floor(N);
    ArcRefinement out;
    for (int side = 0; side < 2; ++side) {
        const Rat h = side == 0 ? arc.left : arc.right;
        std::vector<ArcCell>& cells = side == 0 ? out.left : out.right;
        for (long long L = Lmax; L >= Q; L /= 2) {
            ArcCell c;
            c.L = L;
            if (L == Lmax) {
                c.lo = 0; // innermost cell includes the centre
                c.hi = Rat(1) / (Rat(N) * Rat(L));
            } else {
                c.lo = Rat(1) / (2 * Rat(N) * Rat(L));
                c.hi = Rat(1) / (Rat(N) * Rat(L));
            }
            if (L == Q && c.hi < h) c.hi = h; // outermost absorbs to the edge
            if (c.hi > h) c.hi = h;           // clamp to the arc
            if (c.lo > h) continue;           // cell entirely outside
            if (c.hi <= c.lo && L != Lmax) continue;
            cells.push_back(c);
        }
    }
    return out;
}

namespace {

struct CellUnion {
    std::vector<Rat> starts, ends;
    Rat total = 0;
};

/** Endpoints of the union of (Q, L)-cells over all arcs with
 *  dyadic_floor(q) == Q; each (arc, side, level) contributes one interval. */
CellUnion collect_cells(long long N, long long Q, long long L) {
    if (N < 2) throw DomainError("the cell union needs N >= 2");
    if (Q < 1 || dyadic_floor(Q) != Q) throw DomainError("Q must be a power of two");
    if (L < Q || dyadic_floor(L) != L) throw DomainError("L must be a power of two >= Q");
    if (Q >= N || L > dyadic_floor(N))
        throw DomainError("the cell union needs Q < N and L <= dyadic_floor(N)");
    CellUnion u;
    for (const auto& arc : farey_arcs(N)) {
        if (arc.center.q >= N) continue; // only arcs of order q < N carry cells
        if (dyadic_floor(arc.center.q) != Q) continue;
        ArcRefinement ref = arc_refine(arc, N);
        const Rat centre = Rat(arc.center.a) / Rat(arc.center.q);
        for (int side = 0; side < 2; ++side) {
            const auto& cells = side == 0 ? ref.left : ref.right;
            for (const auto& c : cells) {
                if (c.L != L) continue;
                Rat s, e;
                if (side == 0) {
                    s = centre - c.hi;
                    e = centre - c.lo;
                } else {
                    s = centre + c.lo;
                    e = centre + c.hi;
                }
                u.starts.push_back(s);
                u.ends.push_back(e);
                u.total += e - s;
            }
        }
    }
    return u;
}

/**
 * Streams |c_hat(n)| = |Sum_k (e^{-2 pi i n s_k} - e^{-2 pi i n e_k})| / (2 pi n)
 * for n = 1 .. nmax into visit(n, mod): every endpoint phase advances
 * multiplicatively, renormalized to unit modulus every 4096 steps to stop drift.
 */
template <class Visit>
void stream_indicator_coeffs(const CellUnion& u, long long nmax, Visit&& visit) {
    const std::size_t m = u.starts.size();
    std::vector<std::complex<double>> sphase(m), sstep(m), ephase(m), estep(m);
    for (std::size_t k = 0; k < m; ++k) {
        double s = rat_to_double(rat_frac(u.starts[k]));
        double e = rat_to_double(rat_frac(u.ends[k]));
        sstep[k] = std::polar(1.0, -2.0 * M_PI * s);
        estep[k] = std::polar(1.0, -2.0 * M_PI * e);
        sphase[k] = 1.0;
        ephase[k] = 1.0;
    }
    for (long long n = 1; n <= nmax; ++n) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            sphase[k] *= sstep[k];
            ephase[k] *= estep[k];
            acc += sphase[k] - ephase[k];
        }
        visit(n, std::abs(acc) / (2.0 * M_PI * static_cast<double>(n)));
        if ((n & 4095) == 0) {
            for (std::size_t k = 0; k < m; ++k) {
                sphase[k] /= std::abs(sphase[k]);
                ephase[k] /= std::abs(ephase[k]);
            }
        }
    }
}

} // namespace

IndicatorSup indicator_fourier_sup(long long N, long long Q, long long L, const Rat& period) {
    CellUnion u = collect_cells(N, Q, L);
    IndicatorSup out;
    out.l1_mass = period * u.total;
    if (u.starts.empty()) return out;
    double sup = 0.0;
    stream_indicator_coeffs(u, 64 * N * N,
                            [&](long long, double mod) { sup = std::max(sup, mod); });
    out.sup_mod = sup;
    return out;
}

std::vector<double> indicator_fourier_series(long long N, long long Q, long long L,
                                             long long n_max) {
    if (n_max < 1) throw DomainError("indicator_fourier_series needs n_max >= 1");
    CellUnion u = collect_cells(N, Q, L);
    std::vector<double> out(static_cast<std::size_t>(n_max), 0.0);
    if (u.starts.empty()) return out;
    stream_indicator_coeffs(u, n_max, [&](long long n, double mod) {
        out[static_cast<std::size_t>(n - 1)] = mod;
    });
    return out;
}

Rat weyl_denominator_sum(long long N, const Rat& t, const Rat& h) {
    if (N < 1) throw DomainError("weyl_denominator_sum needs N >= 1");
    Rat acc = 0;
    const Rat invN(1, N);
    for (long long m = -N; m <= N; ++m) {
        Rat d = rat_dist_to_int(Rat(m) * t + h);
        if (d < invN) d = invN;
        acc += 1 / (d * d);
    }
    return acc;
}

} // namespace symstri
