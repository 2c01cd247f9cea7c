// ============================================================================
// Acceptance suite: twelve numbered end-to-end checks, each printing one
//
//     [PASS] 03 indicator-fourier-bound (12.4 s) <detail>
//     [FAIL] 09 linear-strichartz-scaling (601.2 s) <detail>
//
// line.  A criterion passes only if its property holds AND it finishes
// inside its stated time budget.  With no arguments every criterion runs in
// order; arguments select a subset by number (e.g. `acceptance 3 9`).
// Criterion 12 drives the installed CLI binary ($SYMSTRI_BIN) end to end;
// everything else calls the library directly.  Exit code 0 iff every
// selected criterion passed.
// ============================================================================

#include "symstri/bandstate.hpp"
#include "symstri/farey.hpp"
#include "symstri/kernel.hpp"
#include "symstri/quadform.hpp"
#include "symstri/scans.hpp"
#include "symstri/space.hpp"
#include "symstri/spherical.hpp"
#include "symstri/zonal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace symstri;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }
Outcome pass(const std::string& what) { return {true, what}; }

std::string fts(double v, const char* fmt = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

struct Fit {
    double slope = 0.0;
    double residual = 0.0;
};

Fit ols(const std::vector<double>& x, const std::vector<double>& y) {
    Fit f;
    const std::size_t k = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) mx += x[i], my += y[i];
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    f.slope = sxy / sxx;
    double ss = 0;
    const double b = my - f.slope * mx;
    for (std::size_t i = 0; i < k; ++i) {
        const double e = y[i] - (b + f.slope * x[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / k);
    return f;
}

// ---------------------------------------------------------------------------
// 1. Degree-by-degree agreement of the trapezoid Laplace integral with the
//    three-term recurrence on a 256-point angle grid, n <= 40.
Outcome criterion_laplace_oracle() {
    double max_err = 0.0;
    for (long long n = 0; n <= 40; ++n) {
        for (int j = 0; j < 256; ++j) {
            const double theta = 0.5 * M_PI * j / 255.0;
            const LaplaceResult lr = phi_laplace_integral(n, theta, 4 * (n + 1));
            if (lr.precision_warning) return fail("unexpected precision warning");
            const double ref = ultraspherical_norm(2, n, std::cos(2.0 * theta));
            max_err = std::max(max_err, std::abs(lr.value - std::complex<double>(ref, 0)));
        }
    }
    if (max_err >= 1e-9) return fail("max_err=" + fts(max_err, "%.3e"));
    return pass("max_err=" + fts(max_err, "%.3e") + " over n<=40, 256 angles");
}

// ---------------------------------------------------------------------------
// 2. Exact Farey properties for every order n <= 200, pure rational
//    arithmetic: neighbour determinants, a seamless tiling of [0,1), and
//    half-lengths within [1/(2qn), 1/(qn)].
Outcome criterion_farey_exactness() {
    for (long long n = 1; n <= 200; ++n) {
        const std::vector<Frac> f = farey_sequence(n);
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            if (f[i + 1].a * f[i].q - f[i].a * f[i + 1].q != 1)
                return fail("determinant != 1 at order " + std::to_string(n));
        }
        const std::vector<Arc> arcs = farey_arcs(n);
        Rat total = 0;
        for (const Arc& arc : arcs) total += arc.left + arc.right;
        if (total != 1) return fail("tiling mass != 1 at order " + std::to_string(n));
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            // adjacency: this arc's right end meets the next arc's left end
            const Arc& a = arcs[i];
            const Arc& b = arcs[(i + 1) % arcs.size()];
            Rat gap = Rat(a.center.a) / Rat(a.center.q) + a.right + b.left -
                      Rat(b.center.a) / Rat(b.center.q);
            if (i + 1 == arcs.size()) gap -= 1; // wrap around the circle
            if (gap != 0) return fail("tiling gap at order " + std::to_string(n));
            const Rat lo = Rat(1) / Rat(2 * a.center.q * n);
            const Rat hi = Rat(1) / Rat(a.center.q * n);
            if (a.left < lo || a.left > hi || a.right < lo || a.right > hi)
                return fail("half-length outside [1/(2qn), 1/(qn)] at order " +
                            std::to_string(n));
        }
    }
    return pass("orders 1..200: determinants, tiling, half-length windows all exact");
}

// ---------------------------------------------------------------------------
// 3. Scale-invariant indicator Fourier bound: sup_n |c_hat(n)| * N L / Q^2
//    stays within 4x its value at (N, Q, L) = (16, 1, 16), across
//    N in {16, 32, 64} and every dyadic (Q, L) class.
Outcome criterion_indicator_bound() {
    const double ref =
        indicator_fourier_sup(16, 1, 16, Rat(1)).sup_mod * 16.0 * 16.0;
    if (!(ref > 0)) return fail("reference sup vanished");
    double worst = 0.0;
    std::string worst_at;
    for (long long N : {16, 32, 64}) {
        for (long long Q = 1; Q < N; Q *= 2) {
            for (long long L = Q; L <= dyadic_floor(N); L *= 2) {
                const double sup = indicator_fourier_sup(N, Q, L, Rat(1)).sup_mod;
                const double scaled = sup * static_cast<double>(N) *
                                      static_cast<double>(L) /
                                      (static_cast<double>(Q) * static_cast<double>(Q));
                if (scaled > worst) {
                    worst = scaled;
                    worst_at = "(N,Q,L)=(" + std::to_string(N) + "," + std::to_string(Q) +
                               "," + std::to_string(L) + ")";
                }
            }
        }
    }
    const std::string detail =
        "max scaled sup " + fts(worst) + " at " + worst_at + " vs 4x ref " + fts(4 * ref);
    if (worst > 4.0 * ref) return fail(detail);
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 4. Dispersive-constant boundedness: the major-arc ratio C(N) of the
//    band kernel grows by at most 4x from N = 8 to N in {16, 32, 64} on
//    T1, T2, S2, SU2.
Outcome criterion_dispersive_constant() {
    std::string detail;
    for (const char* name : {"T1", "T2", "S2", "SU2"}) {
        const SpaceDescriptor sp = catalog_get(name);
        const double c8 = kernel_bound_scan(sp, 8, 0, 0).c_of_n;
        double worst = 0.0;
        long long worst_n = 8;
        for (long long N : {16, 32, 64}) {
            const double cn = kernel_bound_scan(sp, N, 0, 0).c_of_n;
            if (cn / c8 > worst) {
                worst = cn / c8;
                worst_n = N;
            }
        }
        detail += std::string(name) + ":C(" + std::to_string(worst_n) + ")/C(8)=" +
                  fts(worst) + " ";
        if (worst > 4.0) return fail(detail + "exceeds 4");
    }
    return pass(detail + "all within 4x");
}

// ---------------------------------------------------------------------------
// 5. Kernel Parseval: spatial quadrature of |K_N|^2 against the exact
//    weight-space mode sum, N = 16 on T2 and S2.
Outcome criterion_kernel_parseval() {
    std::string detail;
    for (const char* name : {"T2", "S2"}) {
        const ParsevalCheck pc = kernel_parseval_check(catalog_get(name), 16, Rat(1, 7), 0);
        detail += std::string(name) + ":rel_err=" + fts(pc.rel_err, "%.3e") + " ";
        if (!(pc.rel_err < 1e-6)) return fail(detail + "exceeds 1e-6");
    }
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 6. Counting: representation numbers against an independent full-ball
//    enumeration (exact, n <= 10^4), shell sums against the closed-form
//    ball count, and running-max growth exponents under their windows.
Outcome criterion_counting() {
    // independent route: plain nested loops over the radius-100 disc
    const QuadForm I2 = identity_form(2);
    std::vector<long long> brute(10001, 0);
    for (long long x = -100; x <= 100; ++x)
        for (long long y = -100; y <= 100; ++y) {
            const long long v = x * x + y * y;
            if (v <= 10000) ++brute[static_cast<std::size_t>(v)];
        }
    const std::vector<long long> lib = rep_counts_upto(I2, 10000);
    for (std::size_t n = 0; n <= 10000; ++n)
        if (lib[n] != brute[n])
            return fail("I2 rep count mismatch at n=" + std::to_string(n));

    // shell-sum identity against the prefix-recursion ball count
    const QuadForm I4 = identity_form(4), I5 = identity_form(5);
    for (const auto& [form, X] :
         std::vector<std::pair<const QuadForm*, long long>>{{&I2, 10000}, {&I4, 4096}, {&I5, 2048}}) {
        const std::vector<long long> r = rep_counts_upto(*form, X);
        long long acc = 0;
        for (long long n = 0; n <= X; ++n) acc += r[static_cast<std::size_t>(n)];
        if (acc != ball_count(*form, X))
            return fail("shell sum != ball count for rank " + std::to_string(form->r));
    }

    // growth exponents, windows {0.3, 1.2, 1.6} with slack over {0, 1, 3/2}
    std::string detail = "rep counts exact to 10^4; slopes ";
    const struct {
        const QuadForm* form;
        long long n_max;
        double window;
        double theory;
    } fits[] = {{&I2, 65536, 0.3, 0.0}, {&I4, 4096, 1.2, 1.0}, {&I5, 4096, 1.6, 1.5}};
    for (const auto& c : fits) {
        const ExponentFit f = rep_exponent_fit(*c.form, c.n_max, c.theory);
        detail += "I" + std::to_string(c.form->r) + "=" + fts(f.slope) + " ";
        if (!(f.slope <= c.window))
            return fail(detail + "exceeds window " + fts(c.window));
    }
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 7. Joint pair counts on T2: the histogram maximum over n for the cube
//    [N2, 2 N2]^2 with matching band obeys M(N2) <= C N2^{2.2}, the
//    constant calibrated at N2 = 4.
Outcome criterion_pair_count() {
    const SpaceDescriptor sp = catalog_get("T2");
    auto max_count = [&](long long n2) {
        const Weight center{3 * n2 / 2, 3 * n2 / 2};
        long long m = 0;
        for (const auto& [key, count] : joint_pair_histogram(sp, center, Rat(n2), Rat(n2)))
            m = std::max(m, count);
        return m;
    };
    const long long m4 = max_count(4);
    if (m4 <= 0) return fail("empty calibration histogram at N2=4");
    const double C = static_cast<double>(m4) / std::pow(4.0, 2.2);
    std::string detail = "M(4)=" + std::to_string(m4);
    for (long long n2 : {8, 16}) {
        const long long m = max_count(n2);
        const double bound = C * std::pow(static_cast<double>(n2), 2.2);
        detail += " M(" + std::to_string(n2) + ")=" + std::to_string(m) + "<=" + fts(bound);
        if (static_cast<double>(m) > bound * (1.0 + 1e-12)) return fail(detail + " violated");
    }
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 8. Product support on S2 for l1 = 3, l2 = 2: every eigenspace projection
//    of phi_3(x-y1) phi_2(x-y2) outside l in {1..5} stays below 1e-8, and
//    the detected set lies inside product_support.
Outcome criterion_product_support() {
    const SpaceDescriptor sp = catalog_get("S2");
    const Weight lam{3}, mu{2};
    const std::vector<Weight> support = product_support(sp, lam, mu);

    RngStream rng(42, 0x5070u);
    const PointOnM y1 = random_point(sp, rng), y2 = random_point(sp, rng);
    const SampledFunction f =
        sample_on_rule(sp, product_quadrature(sp, 19), [&](const PointOnM& x) {
            return zonal_value(sp, lam, zonal_between(sp, x, y1)) *
                   zonal_value(sp, mu, zonal_between(sp, x, y2));
        });

    double max_outside = 0.0;
    long long detected = 0;
    bool detected_inside = true;
    for (long long l = 0; l <= 8; ++l) {
        const Weight nu{l};
        const double norm = std::sqrt(std::max(0.0, projector_l2_sq(sp, nu, f)));
        const bool inside_window = l >= 1 && l <= 5;
        if (!inside_window) max_outside = std::max(max_outside, norm);
        if (norm > 1e-8) {
            ++detected;
            if (!std::binary_search(support.begin(), support.end(), nu))
                detected_inside = false;
        }
    }
    const std::string detail = "detected=" + std::to_string(detected) +
                               " max_outside=" + fts(max_outside, "%.3e");
    if (max_outside >= 1e-8) return fail(detail + " (window {1..5} violated)");
    if (!detected_inside) return fail(detail + " (mode outside product_support)");
    if (detected == 0) return fail(detail + " (nothing detected at all)");
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 9. Linear space-time scaling on T2 at the scale-invariant exponent p = 8:
//    the max ratio to N^{dim/2-(dim+2)/p} is flat in N (slope within 0.2 of
//    zero in log-log) and its spread max/min stays within 3.
Outcome criterion_linear_scaling() {
    const SpaceDescriptor sp = catalog_get("T2");
    std::vector<double> lx, ly;
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    for (long long N : {4, 8, 16, 32}) {
        const LpScanResult r = spacetime_lp_scan(sp, N, 8.0, 5, 42, 0, 0);
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(r.max_ratio));
        hi = std::max(hi, r.max_ratio);
        lo = std::min(lo, r.max_ratio);
    }
    const Fit f = ols(lx, ly);
    const double spread = hi / lo;
    const std::string detail = "slope=" + fts(f.slope) + " spread=" + fts(spread);
    if (std::abs(f.slope) > 0.2) return fail(detail + " (slope window 0.2)");
    if (spread > 3.0) return fail(detail + " (spread window 3)");
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 10. Bilinear scaling on S3 x S3: log max-norm vs log N2 over N2 in {2, 4}
//     at N1 = 8 lands in [1.4, 2.6] around the theoretical slope 2; Monte
//     Carlo standard errors are carried into the report.
Outcome criterion_bilinear_scaling() {
    const SpaceDescriptor sp = catalog_get("S3xS3");
    std::vector<double> lx, ly;
    double max_stderr = 0.0;
    for (long long n2 : {2, 4}) {
        const BilinearScanResult r = bilinear_l2_scan(sp, 8, n2, 3, 42, 200000);
        double best = 0.0;
        for (const BilinearRow& row : r.rows) {
            best = std::max(best, row.norm);
            max_stderr = std::max(max_stderr, row.stderr_);
        }
        lx.push_back(std::log(static_cast<double>(n2)));
        ly.push_back(std::log(best));
    }
    const double slope = (ly[1] - ly[0]) / (lx[1] - lx[0]);
    const std::string detail =
        "slope=" + fts(slope) + " (theory 2) max_mc_stderr=" + fts(max_stderr, "%.3e");
    if (slope < 1.4 || slope > 2.6) return fail(detail + " outside [1.4, 2.6]");
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 11. Eigenfunction L^p scaling on T5 at p = 16 across exact shells
//     n in {25, 100, 400}: the fitted slope of log max-norm vs log sqrt(n)
//     stays below (d-2)/2 - d/p + 0.2.
Outcome criterion_eigenfunction_scaling() {
    const SpaceDescriptor sp = catalog_get("T5");
    const double window = 0.5 * (5 - 2) - 5.0 / 16.0 + 0.2;
    // 20000 sample points: the n = 400 shell carries 88330 modes, and this
    // count keeps all nine scans inside the budget on one core while the
    // per-row Monte Carlo stderr stays in the few-percent range
    std::vector<double> lx, ly;
    for (long long shell : {25, 100, 400}) {
        const ShellLpResult r = eigenfunction_lp_scan(sp, Rat(shell), 16.0, 3, 42, 20000);
        if (r.empty_shell) return fail("shell " + std::to_string(shell) + " empty");
        double best = 0.0;
        for (const ShellLpRow& row : r.rows) best = std::max(best, row.norm);
        lx.push_back(std::log(std::sqrt(static_cast<double>(shell))));
        ly.push_back(std::log(best));
    }
    const Fit f = ols(lx, ly);
    const std::string detail = "slope=" + fts(f.slope) + " window<=" + fts(window);
    if (f.slope > window) return fail(detail + " exceeded");
    return pass(detail);
}

// ---------------------------------------------------------------------------
// 12. Determinism audit through the real CLI: the same RunConfig twice gives
//     byte-identical CSV files, for both a random-trial scan and the kernel
//     scan.
Outcome criterion_determinism() {
    const char* bin = std::getenv("SYMSTRI_BIN");
    if (!bin) return fail("SYMSTRI_BIN not set");
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const struct {
        std::string args;
        std::string tag;
    } runs[] = {
        {"stri scan --space T2 --p 8 --N 4 --trials 3", "stri"},
        {"kernel scan --space S2 --N 8", "kernel"},
    };
    for (const auto& r : runs) {
        const std::string fa = "/tmp/symstri_acc_" + r.tag + "_a.csv";
        const std::string fb = "/tmp/symstri_acc_" + r.tag + "_b.csv";
        for (const std::string& f : {fa, fb}) {
            const std::string cmd =
                std::string(bin) + " " + r.args + " --out " + f + " >/dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) return fail(r.tag + " scan exited nonzero");
        }
        const std::string ba = slurp(fa), bb = slurp(fb);
        std::remove(fa.c_str());
        std::remove(fb.c_str());
        if (ba.empty()) return fail(r.tag + " scan produced no output");
        if (ba != bb) return fail(r.tag + " scan outputs differ between runs");
    }
    return pass("stri + kernel scans byte-identical across repeated runs");
}

// ---------------------------------------------------------------------------

struct Criterion {
    int number;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "laplace-oracle", 10, criterion_laplace_oracle},
        {2, "farey-exactness", 30, criterion_farey_exactness},
        {3, "indicator-fourier-bound", 120, criterion_indicator_bound},
        {4, "dispersive-constant", 900, criterion_dispersive_constant},
        {5, "kernel-parseval", 60, criterion_kernel_parseval},
        {6, "counting-exponents", 300, criterion_counting},
        {7, "pair-count-bound", 120, criterion_pair_count},
        {8, "product-support", 60, criterion_product_support},
        {9, "linear-strichartz-scaling", 600, criterion_linear_scaling},
        {10, "bilinear-scaling", 1200, criterion_bilinear_scaling},
        {11, "eigenfunction-scaling", 600, criterion_eigenfunction_scaling},
        {12, "determinism-audit", 120, criterion_determinism},
    };

    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : all) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.number) == wanted.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds) {
            out.pass = false;
            out.detail += " [over time budget " + fts(c.budget_seconds, "%.0f") + " s]";
        }
        std::printf("[%s] %02d %s (%.1f s) %s\n", out.pass ? "PASS" : "FAIL", c.number,
                    c.name, secs, out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
