#include "symstri/quadform.hpp"

#include "symstri/bump.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace symstri {

namespace {

/** Exact LDL^T pivots of the (rational view of the) integer matrix. */
std::vector<std::vector<Rat>> ldl_data(const QuadForm& Q, std::vector<Rat>& D) {
    const int r = Q.r;
    std::vector<std::vector<Rat>> A(r, std::vector<Rat>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) A[i][j] = Rat(Q.M[i][j]);
    std::vector<std::vector<Rat>> U(r, std::vector<Rat>(r, Rat(0)));
    D.assign(r, Rat(0));
    for (int i = 0; i < r; ++i) {
        D[i] = A[i][i];
        if (D[i] <= 0) throw DomainError("quadratic form is not positive definite");
        for (int j = i + 1; j < r; ++j) U[i][j] = A[i][j] / D[i];
        for (int j = i + 1; j < r; ++j)
            for (int k = i + 1; k < r; ++k) A[j][k] -= D[i] * U[i][j] * U[i][k];
    }
    return U;
}

bool is_identity(const QuadForm& Q) {
    for (int i = 0; i < Q.r; ++i)
        for (int j = 0; j < Q.r; ++j)
            if (Q.M[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

/** One more coordinate: h'[n] = Sum_{a^2 <= n} mult(a) h[n - a^2]. */
std::vector<long long> convolve_square(const std::vector<long long>& h) {
    const long long X = static_cast<long long>(h.size()) - 1;
    std::vector<long long> out(h.size(), 0);
    for (long long a = 0; a * a <= X; ++a) {
        const long long mult = (a == 0) ? 1 : 2;
        const long long a2 = a * a;
        for (long long n = a2; n <= X; ++n) out[n] += mult * h[n - a2];
    }
    return out;
}

} // namespace

QuadForm identity_form(int r) {
    if (r < 1) throw DomainError("identity_form needs rank >= 1");
    QuadForm Q;
    Q.r = r;
    Q.M.assign(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) Q.M[i][i] = 1;
    return Q;
}

QuadForm make_quadform(const std::vector<std::vector<long long>>& M) {
    QuadForm Q;
    Q.r = static_cast<int>(M.size());
    if (Q.r < 1) throw DomainError("quadratic form needs rank >= 1");
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != Q.r)
            throw DomainError("quadratic form matrix is not square");
    for (int i = 0; i < Q.r; ++i)
        for (int j = 0; j < Q.r; ++j)
            if (M[i][j] != M[j][i]) throw DomainError("quadratic form matrix is not symmetric");
    Q.M = M;
    std::vector<Rat> D;
    ldl_data(Q, D); // throws unless positive definite
    return Q;
}

long long quadform_eval(const QuadForm& Q, const std::vector<long long>& x) {
    if (static_cast<int>(x.size()) != Q.r)
        throw DomainError("quadform_eval: wrong number of coordinates");
    long long v = 0;
    for (int i = 0; i < Q.r; ++i)
        for (int j = 0; j < Q.r; ++j) v += Q.M[i][j] * x[i] * x[j];
    return v;
}

std::vector<long long> rep_counts_upto(const QuadForm& Q, long long X) {
    if (X < 0) throw DomainError("rep_counts_upto needs X >= 0");
    std::vector<long long> hist(static_cast<std::size_t>(X) + 1, 0);

    if (is_identity(Q)) {
        hist[0] = 1;
        for (int k = 0; k < Q.r; ++k) hist = convolve_square(hist);
        return hist;
    }

    // General walk: double LDL bounds per level (widened), exact value at the
    // leaves via the running products t_j = (M x)_j over the fixed suffix.
    std::vector<Rat> Dr;
    auto Ur = ldl_data(Q, Dr);
    const int r = Q.r;
    std::vector<double> Dd(r);
    std::vector<std::vector<double>> Ud(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i) {
        Dd[i] = rat_to_double(Dr[i]);
        for (int j = i + 1; j < r; ++j) Ud[i][j] = rat_to_double(Ur[i][j]);
    }
    std::vector<long long> x(r, 0), t(r, 0); // t_j = Sum_{k > level set} M_jk x_k
    std::function<void(int, long long, double)> rec = [&](int i, long long val, double ldl_used) {
        // val = Q(0,..,0,x_{i+1},..,x_{r-1});  ldl_used approximates the LDL
        // mass already committed (pruning only; exactness lives in `val`).
        double center = 0.0;
        for (int j = i + 1; j < r; ++j) center += Ud[i][j] * static_cast<double>(x[j]);
        double rad2 = (static_cast<double>(X) - ldl_used) / Dd[i];
        if (rad2 < 0) rad2 = 0;
        double rad = std::sqrt(rad2);
        long long lo = static_cast<long long>(std::floor(-center - rad)) - 2;
        long long hi = static_cast<long long>(std::ceil(-center + rad)) + 2;
        for (long long v = lo; v <= hi; ++v) {
            x[i] = v;
            // val' = val + M_ii v^2 + 2 v t_i
            long long nv = val + Q.M[i][i] * v * v + 2 * v * t[i];
            if (i == 0) {
                if (nv >= 0 && nv <= X) ++hist[static_cast<std::size_t>(nv)];
            } else {
                double y = static_cast<double>(v) + center;
                double used = ldl_used + Dd[i] * y * y;
                if (used > static_cast<double>(X) + 1.0 + 2.0 * Dd[i] * (std::fabs(y) + 1.0))
                    continue;
                for (int j = 0; j < i; ++j) t[j] += Q.M[j][i] * v;
                rec(i - 1, nv, used);
                for (int j = 0; j < i; ++j) t[j] -= Q.M[j][i] * v;
            }
        }
        x[i] = 0;
    };
    rec(r - 1, 0, 0.0);
    return hist;
}

long long ball_count(const QuadForm& Q, long long X) {
    if (X < 0) return 0;
    std::vector<Rat> Dr;
    auto Ur = ldl_data(Q, Dr);
    const int r = Q.r;
    if (r == 1) {
        // a x^2 <= X directly
        long long a = Q.M[0][0];
        long long s = static_cast<long long>(std::sqrt(static_cast<double>(X) /
                                                       static_cast<double>(a)));
        while (a * (s + 1) * (s + 1) <= X) ++s;
        while (s > 0 && a * s * s > X) --s;
        return 2 * s + 1;
    }
    std::vector<double> Dd(r);
    std::vector<std::vector<double>> Ud(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i) {
        Dd[i] = rat_to_double(Dr[i]);
        for (int j = i + 1; j < r; ++j) Ud[i][j] = rat_to_double(Ur[i][j]);
    }
    std::vector<long long> x(r, 0), t(r, 0);
    long long count = 0;
    std::function<void(int, long long, double)> rec = [&](int i, long long val, double ldl_used) {
        double center = 0.0;
        for (int j = i + 1; j < r; ++j) center += Ud[i][j] * static_cast<double>(x[j]);
        if (i == 0) {
            // closed form: count a v^2 + b v + val <= X exactly, a = M_00,
            // b = 2 t_0 (all cross terms of the fixed suffix live in t_0)
            const long long a = Q.M[0][0];
            const long long b = 2 * t[0];
            auto f = [&](long long v) { return a * v * v + b * v + val - X; };
            double disc = static_cast<double>(b) * static_cast<double>(b) -
                          4.0 * static_cast<double>(a) * static_cast<double>(val - X);
            if (disc < 0) {
                // the double estimate can only miss by rounding; probe the vertex
                long long v0 = static_cast<long long>(std::llround(
                    -static_cast<double>(b) / (2.0 * static_cast<double>(a))));
                long long best = v0;
                for (long long v = v0 - 2; v <= v0 + 2; ++v)
                    if (f(v) < f(best)) best = v;
                if (f(best) > 0) return;
                disc = 0;
            }
            double sd = std::sqrt(std::max(0.0, disc));
            long long lo = static_cast<long long>(
                               std::floor((-static_cast<double>(b) - sd) / (2.0 * a))) -
                           2;
            long long hi = static_cast<long long>(
                               std::ceil((-static_cast<double>(b) + sd) / (2.0 * a))) +
                           2;
            while (lo <= hi && f(lo) > 0) ++lo;
            while (hi >= lo && f(hi) > 0) --hi;
            if (lo <= hi) {
                // widen outward in case the double radius under-shot
                while (f(lo - 1) <= 0) --lo;
                while (f(hi + 1) <= 0) ++hi;
                count += hi - lo + 1;
            }
            return;
        }
        double rad2 = (static_cast<double>(X) - ldl_used) / Dd[i];
        if (rad2 < 0) rad2 = 0;
        double rad = std::sqrt(rad2);
        long long lo = static_cast<long long>(std::floor(-center - rad)) - 2;
        long long hi = static_cast<long long>(std::ceil(-center + rad)) + 2;
        for (long long v = lo; v <= hi; ++v) {
            x[i] = v;
            long long nv = val + Q.M[i][i] * v * v + 2 * v * t[i];
            double y = static_cast<double>(v) + center;
            double used = ldl_used + Dd[i] * y * y;
            for (int j = 0; j < i; ++j) t[j] += Q.M[j][i] * v;
            rec(i - 1, nv, used);
            for (int j = 0; j < i; ++j) t[j] -= Q.M[j][i] * v;
        }
        x[i] = 0;
    };
    rec(r - 1, 0, 0.0);
    return count;
}

ExponentFit rep_exponent_fit(const QuadForm& Q, long long n_max, double theory_exponent) {
    if (n_max < 16) throw DomainError("rep_exponent_fit needs n_max >= 16");
    std::vector<long long> rep = rep_counts_upto(Q, n_max);
    std::vector<double> xs, ys;
    long long runmax = 0, next_cp = 16;
    for (long long n = 1; n <= n_max; ++n) {
        runmax = std::max(runmax, rep[static_cast<std::size_t>(n)]);
        if (n == next_cp) {
            if (runmax == 0)
                throw DomainError("rep_exponent_fit: no nonzero counts up to n = " +
                                  std::to_string(n) + "; the fit is undefined");
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(static_cast<double>(runmax)));
            next_cp *= 2;
        }
    }
    if (xs.size() < 2) throw DomainError("rep_exponent_fit needs at least two checkpoints");
    const std::size_t k = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    double intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double e = ys[i] - (intercept + fit.slope * xs[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / k);
    fit.theory = theory_exponent;
    return fit;
}

namespace {
long long isqrt_ll(long long n) {
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}
} // namespace

ThetaMajorArc theta_major_arc_check(const QuadForm& Q, long long n, long long a, long long q,
                                    const Rat& delta) {
    if (n < 4) throw DomainError("theta_major_arc_check needs n >= 4");
    const long long N = isqrt_ll(n);
    if (q < 1 || q >= N)
        throw DomainError("theta_major_arc_check needs 1 <= q < floor(sqrt(n))");
    std::vector<long long> rep = rep_counts_upto(Q, 2 * n);
    const Rat t = Rat(a) / Rat(q) + delta;
    std::complex<double> s(0.0, 0.0);
    for (long long m = n / 2; m <= 2 * n; ++m) {
        double w = bump_phi(static_cast<double>(m) / static_cast<double>(n));
        if (w == 0.0) continue;
        double ph = rat_to_double(rat_frac(Rat(m - n) * t));
        s += w * static_cast<double>(rep[static_cast<std::size_t>(m)]) *
             std::polar(1.0, 2.0 * M_PI * ph);
    }
    ThetaMajorArc out;
    out.value = s;
    Rat ad = delta < 0 ? -delta : delta;
    double denom = std::sqrt(static_cast<double>(q)) *
                   (1.0 + static_cast<double>(N) * std::sqrt(rat_to_double(ad)));
    out.bound = std::pow(static_cast<double>(N) / denom, Q.r);
    out.ratio = std::abs(s) / out.bound;
    return out;
}

double theta_fourier_extract(const QuadForm& Q, long long n, long long M) {
    if (n < 1 || M < 1) throw DomainError("theta_fourier_extract needs n, M >= 1");
    std::vector<long long> rep = rep_counts_upto(Q, 2 * n);
    std::complex<double> acc(0.0, 0.0);
    for (long long j = 0; j < M; ++j) {
        const Rat t(j, M);
        std::complex<double> s(0.0, 0.0);
        for (long long m = n / 2; m <= 2 * n; ++m) {
            double w = bump_phi(static_cast<double>(m) / static_cast<double>(n));
            if (w == 0.0) continue;
            double ph = rat_to_double(rat_frac(Rat(m - n) * t));
            s += w * static_cast<double>(rep[static_cast<std::size_t>(m)]) *
                 std::polar(1.0, 2.0 * M_PI * ph);
        }
        acc += s;
    }
    return (acc / static_cast<double>(M)).real();
}

std::map<long long, long long> joint_pair_histogram(const SpaceDescriptor& sp,
                                                    const Weight& cube_center,
                                                    const Rat& cube_side, const Rat& N2) {
    if (static_cast<int>(cube_center.size()) != sp.rank)
        throw DomainError("cube_center has the wrong number of coordinates");
    if (cube_side < 0) throw DomainError("cube_side must be >= 0");

    // spec histogram of the cube, keyed by period * spec (an integer)
    std::map<long long, long long> cube_hist;
    {
        std::vector<long long> lo(sp.rank), hi(sp.rank);
        for (int i = 0; i < sp.rank; ++i) {
            Rat half = cube_side / 2;
            lo[i] = rat_ceil(Rat(cube_center[i]) - half).convert_to<long long>();
            hi[i] = rat_floor(Rat(cube_center[i]) + half).convert_to<long long>();
        }
        Weight w(sp.rank, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == sp.rank) {
                if (!weight_valid(sp, w)) return;
                Rat key = sp.period * spec_norm_sq_lattice(sp, w);
                ++cube_hist[rat_num(key).convert_to<long long>()];
                return;
            }
            for (long long v = lo[i]; v <= hi[i]; ++v) {
                w[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
    }

    std::map<long long, long long> band_hist;
    for (const auto& l2 : weights_in_band(sp, N2)) {
        Rat key = sp.period * spec_norm_sq_lattice(sp, l2);
        ++band_hist[rat_num(key).convert_to<long long>()];
    }

    std::map<long long, long long> out;
    for (const auto& [k1, c1] : cube_hist)
        for (const auto& [k2, c2] : band_hist) out[k1 + k2] += c1 * c2;
    return out;
}

long long joint_pair_count(const SpaceDescriptor& sp, const Weight& cube_center,
                           const Rat& cube_side, const Rat& N2, const Rat& n) {
    Rat key = sp.period * n;
    if (!rat_is_integer(key)) return 0;
    auto hist = joint_pair_histogram(sp, cube_center, cube_side, N2);
    auto it = hist.find(rat_num(key).convert_to<long long>());
    return it == hist.end() ? 0 : it->second;
}

} // namespace symstri
