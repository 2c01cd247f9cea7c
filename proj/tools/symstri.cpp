// ============================================================================
// symstri -- command-line front end.
//
// Command groups:
//   space     list | info          catalog browsing and descriptor export
//   spherical eval | check         zonal function values and the dual-route check
//   support   check                spectral support of products of zonal functions
//   kernel    scan                 dispersive bound scan over a Farey dissection
//   farey     dissect | spectrum   exact dissections and indicator Fourier tables
//   count     reps | fit | theta | pairs     quadratic-form counting
//   stri      scan | bilinear      space-time norm scaling scans
//   eigen     scan                 spatial L^p scaling on exact spectral shells
//
// Output rule: table commands write CSV to --out when given (atomically),
// otherwise to stdout; the JSON summary document goes to stdout when the
// table went to a file and to stderr otherwise, so either stream parses on
// its own.  --format summary suppresses the table.  Every CSV carries one
// "# schema=1 ..." metadata line echoing the full run configuration; no
// timestamps, so identical configurations give byte-identical files.
//
// Exit codes: 0 success; 1 domain/catalog/runtime error (message verbatim on
// stderr); 2 usage; 3 resolution refusal (message lists the required minima).
// ============================================================================

#include "CLI11.hpp"

#include "symstri/bandstate.hpp"
#include "symstri/csvio.hpp"
#include "symstri/errors.hpp"
#include "symstri/farey.hpp"
#include "symstri/kernel.hpp"
#include "symstri/quadform.hpp"
#include "symstri/scans.hpp"
#include "symstri/space.hpp"
#include "symstri/spherical.hpp"
#include "symstri/zonal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace symstri;

namespace {

// --- small parsing/formatting helpers ---------------------------------------

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rat arg_rat(const std::string& s, const char* what) {
    try {
        return parse_rat(s);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + ": cannot parse '" + s + "' as p/q");
    }
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Weight arg_weight(const std::string& s, const char* what) {
    Weight w;
    for (const std::string& p : split_commas(s)) {
        try {
            std::size_t used = 0;
            w.push_back(std::stoll(p, &used));
            if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": cannot parse '" + s +
                             "' as comma-separated integers");
        }
    }
    return w;
}

std::vector<long long> arg_ll_list(const std::string& s, const char* what) {
    return arg_weight(s, what);
}

std::vector<Rat> arg_rat_list(const std::string& s, const char* what) {
    std::vector<Rat> out;
    for (const std::string& p : split_commas(s)) out.push_back(arg_rat(p, what));
    return out;
}

/** Weight rendered as one CSV cell, coordinates joined with '|'. */
std::string weight_cell(const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += fmt_ll(w[i]);
    }
    return s;
}

struct Fit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
};

Fit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    Fit f;
    const std::size_t k = x.size();
    if (k < 2) return f;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    f.slope = sxy / sxx;
    const double b = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double e = y[i] - (b + f.slope * x[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / k);
    return f;
}

// --- output plumbing ---------------------------------------------------------

/** One JSON summary object, keys in insertion order, doubles at %.12g. */
class Doc {
    std::string body_;

    void key(const std::string& k) {
        if (!body_.empty()) body_ += ", ";
        body_ += "\"" + k + "\": ";
    }

  public:
    Doc& str(const std::string& k, const std::string& v) {
        key(k);
        body_ += "\"" + v + "\"";
        return *this;
    }
    Doc& num(const std::string& k, double v) {
        key(k);
        // JSON has no NaN/Inf literal; undefined statistics render as null.
        body_ += std::isfinite(v) ? fmt_g12(v) : std::string("null");
        return *this;
    }
    Doc& num(const std::string& k, long long v) {
        key(k);
        body_ += fmt_ll(v);
        return *this;
    }
    Doc& num(const std::string& k, int v) { return num(k, static_cast<long long>(v)); }
    Doc& rat(const std::string& k, const Rat& v) { return str(k, rat_str(v)); }
    Doc& boolean(const std::string& k, bool v) {
        key(k);
        body_ += v ? "true" : "false";
        return *this;
    }
    std::string render() const { return "{" + body_ + "}"; }
};

/** Shared table-output flags (--out, --format). */
struct TableOpt {
    std::string out;
    std::string format = "csv";

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out, "write the CSV table to this file (atomic)");
        cmd->add_option("--format", format, "csv (default) or summary (table suppressed)")
            ->check(CLI::IsMember({"csv", "summary"}));
    }
};

/** Emit table + summary per the output rule described at the top. */
void emit(const TableOpt& opt, const RunConfig& cfg, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows, const Doc& summary) {
    bool table_on_stdout = false;
    if (opt.format != "summary") {
        if (!opt.out.empty()) {
            write_csv(opt.out, cfg, header, rows);
        } else {
            std::cout << render_csv(cfg, header, rows);
            table_on_stdout = true;
        }
    }
    (table_on_stdout ? std::cerr : std::cout) << summary.render() << "\n";
}

// --- quadratic form files ------------------------------------------------------

/**
 * --form accepts the builtin identity names I1..I9 or a path to a text file:
 * first non-comment line the rank r, then r lines of r integers (the matrix
 * M of Q(x) = x^T M x).
 */
QuadForm load_form(const std::string& spec) {
    if (spec.size() == 2 && spec[0] == 'I' && spec[1] >= '1' && spec[1] <= '9')
        return identity_form(spec[1] - '0');
    std::ifstream in(spec);
    if (!in) throw DomainError("cannot open form file '" + spec + "'");
    std::vector<std::vector<long long>> m;
    long long r = -1;
    std::string line;
    while (std::getline(in, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<long long> vals;
        long long v;
        while (ls >> v) vals.push_back(v);
        if (vals.empty()) continue;
        if (r < 0) {
            if (vals.size() != 1 || vals[0] < 1)
                throw DomainError("form file '" + spec + "': first line must be the rank");
            r = vals[0];
        } else if (static_cast<long long>(m.size()) < r) {
            if (static_cast<long long>(vals.size()) != r)
                throw DomainError("form file '" + spec + "': matrix row needs " +
                                  std::to_string(r) + " entries");
            m.push_back(vals);
        }
    }
    if (r < 0 || static_cast<long long>(m.size()) != r)
        throw DomainError("form file '" + spec + "': expected rank line plus matrix rows");
    return make_quadform(m);
}

// --- zonal geometry helpers ----------------------------------------------------

/** Diagonal zonal point: polar angle theta on every factor coordinate. */
ZonalPoint diagonal_zonal(const SpaceDescriptor& sp, double theta) {
    ZonalPoint z;
    for (const SpaceFactor& f : sp.factors) {
        if (f.kind == FactorKind::Torus)
            z.f.push_back(std::vector<double>(static_cast<std::size_t>(f.rank), theta));
        else
            z.f.push_back({theta});
    }
    return z;
}

/** A concrete point of M whose zonal coordinates relative to identity are z. */
PointOnM zonal_to_point(const SpaceDescriptor& sp, const ZonalPoint& z) {
    PointOnM x;
    for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
        const SpaceFactor& f = sp.factors[fi];
        if (f.kind == FactorKind::Torus) {
            x.f.push_back(z.f[fi]);
        } else {
            std::vector<double> v(static_cast<std::size_t>(f.dim) + 1, 0.0);
            v[0] = std::cos(z.f[fi][0]);
            v[1] = std::sin(z.f[fi][0]);
            x.f.push_back(v);
        }
    }
    return x;
}

/** Per-factor independent evaluation where a second route exists:
 *  Laplace integral on 2-spheres, the closed sine form on 3-dim factors,
 *  the defining character sum on tori; the recurrence value otherwise. */
std::complex<double> reference_route(const SpaceDescriptor& sp, const Weight& lam,
                                     double theta) {
    std::complex<double> ref(1.0, 0.0);
    for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
        const SpaceFactor& f = sp.factors[fi];
        const int off = sp.factor_offset[fi];
        if (f.kind == FactorKind::Torus) {
            double dot = 0.0;
            for (int c = 0; c < f.rank; ++c)
                dot += static_cast<double>(lam[static_cast<std::size_t>(off + c)]) * theta;
            ref *= std::polar(1.0, dot);
        } else if (f.dim == 2) {
            const long long n = lam[static_cast<std::size_t>(off)];
            ref *= phi_laplace_integral(n, theta / 2.0, 4 * (n + 1)).value;
        } else if (f.dim == 3) {
            const long long n = lam[static_cast<std::size_t>(off)];
            const double s = std::sin(theta);
            if (std::abs(s) < 1e-9)
                ref *= ultraspherical_norm(3, n, std::cos(theta));
            else
                ref *= std::sin((static_cast<double>(n) + 1.0) * theta) /
                       ((static_cast<double>(n) + 1.0) * s);
        } else {
            ref *= ultraspherical_norm(f.dim, lam[static_cast<std::size_t>(off)],
                                       std::cos(theta));
        }
    }
    return ref;
}

long long weight_degree_sum(const Weight& w) {
    long long s = 0;
    for (long long c : w) s += std::llabs(c);
    return s;
}

// ============================================================================
// command implementations
// ============================================================================

int g_threads = 1; // accepted cap; every scan in this build is single-threaded

RunConfig base_config(const std::string& command) {
    RunConfig cfg;
    cfg.add("command", command);
    cfg.add("threads", static_cast<long long>(g_threads));
    return cfg;
}

// --- space ----------------------------------------------------------------------

void run_space_list(const TableOpt& opt) {
    RunConfig cfg = base_config("space list");
    std::vector<std::vector<std::string>> rows;
    for (const char* name : {"T1", "T2", "T3", "T4", "T5", "S2", "S3", "S4", "S5", "SU2",
                             "T1xS2", "S3xS3"}) {
        SpaceDescriptor sp = catalog_get(name);
        rows.push_back({sp.name, fmt_ll(sp.rank), fmt_ll(sp.dim), rat_str(sp.period),
                        fmt_g12(sp.volume)});
    }
    Doc d;
    d.num("spaces", static_cast<long long>(rows.size()))
        .str("note", "T{r}, S{d>=2}, SU2, products via 'x', or a descriptor file path");
    emit(opt, cfg, {"name", "rank", "dim", "period", "volume"}, rows, d);
}

void run_space_info(const std::string& space, bool as_json) {
    SpaceDescriptor sp = resolve_space(space);
    if (as_json) {
        std::cout << space_to_json(sp) << "\n";
        return;
    }
    Doc d;
    d.str("name", sp.name)
        .num("rank", sp.rank)
        .num("dim", sp.dim)
        .rat("period", sp.period)
        .num("volume", sp.volume)
        .num("factors", static_cast<long long>(sp.factors.size()));
    std::cout << d.render() << "\n";
}

// --- spherical -------------------------------------------------------------------

void run_spherical_eval(const TableOpt& opt, const std::string& space,
                        const std::string& lambda_s, const std::string& mu_s,
                        long long thetas) {
    SpaceDescriptor sp = resolve_space(space);
    Weight lam = arg_weight(lambda_s, "--lambda");
    require_valid_weight(sp, lam);
    const bool with_mu = !mu_s.empty();
    Weight mu;
    if (with_mu) {
        mu = arg_weight(mu_s, "--mu");
        require_valid_weight(sp, mu);
    }
    if (thetas < 1) throw DomainError("spherical eval needs --thetas >= 1");

    RunConfig cfg = base_config("spherical eval");
    cfg.add("space", sp.name);
    cfg.add("lambda", weight_cell(lam));
    if (with_mu) cfg.add("mu", weight_cell(mu));
    cfg.add("thetas", thetas);

    // with --mu the reference is the projector reconstruction of the product
    // through its predicted support (an independent quadrature route)
    std::vector<Weight> support;
    SampledFunction f;
    if (with_mu) {
        support = product_support(sp, lam, mu);
        const int deg =
            static_cast<int>(3 * (weight_degree_sum(lam) + weight_degree_sum(mu)) + 4);
        f = sample_on_rule(sp, product_quadrature(sp, deg), [&](const PointOnM& y) {
            ZonalPoint zy = zonal_between(sp, y, identity_point(sp));
            return zonal_value(sp, lam, zy) * zonal_value(sp, mu, zy);
        });
    }

    std::vector<std::vector<std::string>> rows;
    double max_err = 0.0;
    for (long long j = 0; j < thetas; ++j) {
        const double theta =
            thetas == 1 ? 0.0
                        : M_PI * static_cast<double>(j) / static_cast<double>(thetas - 1);
        ZonalPoint z = diagonal_zonal(sp, theta);
        std::complex<double> value = zonal_value(sp, lam, z);
        std::complex<double> ref;
        if (with_mu) {
            value *= zonal_value(sp, mu, z);
            const PointOnM x = zonal_to_point(sp, z);
            ref = 0.0;
            for (const Weight& nu : support) ref += projector_apply(sp, nu, f, x);
        } else {
            ref = reference_route(sp, lam, theta);
        }
        const double err = std::abs(value - ref);
        max_err = std::max(max_err, err);
        std::vector<std::string> row{weight_cell(lam)};
        if (with_mu) row.push_back(weight_cell(mu));
        row.push_back(fmt_g12(theta));
        row.push_back(fmt_g12(value.real()));
        row.push_back(fmt_g12(value.imag()));
        row.push_back(fmt_g12(ref.real()));
        row.push_back(fmt_g12(err));
        rows.push_back(std::move(row));
    }

    std::vector<std::string> header{"lambda_coords"};
    if (with_mu) header.push_back("mu_coords");
    for (const char* h : {"theta", "value_real", "value_imag", "reference", "abs_error"})
        header.push_back(h);
    Doc d;
    d.str("space", sp.name).num("rows", static_cast<long long>(rows.size()))
        .num("max_abs_error", max_err);
    if (with_mu) d.num("support_size", static_cast<long long>(support.size()));
    emit(opt, cfg, header, rows, d);
}

void run_spherical_check(const TableOpt& opt, const std::string& space, long long n_max,
                         long long thetas, long long quad_points) {
    SpaceDescriptor sp = resolve_space(space);
    if (sp.factors.size() != 1 || sp.factors[0].kind == FactorKind::Torus ||
        sp.factors[0].dim != 2)
        throw DomainError("spherical check: the integral dual route lives on S2");
    if (n_max < 0 || thetas < 1) throw DomainError("spherical check needs n_max >= 0, thetas >= 1");

    RunConfig cfg = base_config("spherical check");
    cfg.add("space", sp.name);
    cfg.add("n_max", n_max);
    cfg.add("thetas", thetas);
    cfg.add("quad_points", quad_points);

    std::vector<std::vector<std::string>> rows;
    double max_err = 0.0;
    bool warned = false;
    for (long long n = 0; n <= n_max; ++n) {
        const long long qp = quad_points > 0 ? quad_points : 4 * (n + 1);
        for (long long j = 0; j < thetas; ++j) {
            const double theta =
                thetas == 1
                    ? 0.0
                    : 0.5 * M_PI * static_cast<double>(j) / static_cast<double>(thetas - 1);
            const double value = ultraspherical_norm(2, n, std::cos(2.0 * theta));
            LaplaceResult lr = phi_laplace_integral(n, theta, qp);
            warned = warned || lr.precision_warning;
            const double err = std::abs(lr.value - std::complex<double>(value, 0.0));
            max_err = std::max(max_err, err);
            rows.push_back({fmt_ll(n), fmt_g12(theta), fmt_g12(value),
                            fmt_g12(lr.value.real()), fmt_g12(err)});
        }
    }
    Doc d;
    d.str("space", sp.name)
        .num("n_max", n_max)
        .num("thetas", thetas)
        .num("max_abs_error", max_err)
        .boolean("precision_warning", warned);
    emit(opt, cfg, {"n", "theta", "value", "reference", "abs_error"}, rows, d);
}

// --- support ---------------------------------------------------------------------

void run_support_check(const TableOpt& opt, const std::string& space,
                       const std::string& lambda_s, const std::string& mu_s, int degree,
                       double threshold, std::uint64_t seed) {
    SpaceDescriptor sp = resolve_space(space);
    Weight lam = arg_weight(lambda_s, "--lambda");
    Weight mu = arg_weight(mu_s, "--mu");
    require_valid_weight(sp, lam);
    require_valid_weight(sp, mu);

    RunConfig cfg = base_config("support check");
    cfg.add("space", sp.name);
    cfg.add("lambda", weight_cell(lam));
    cfg.add("mu", weight_cell(mu));
    cfg.add("degree", degree);
    cfg.add("threshold", threshold);
    cfg.add("seed", static_cast<long long>(seed));

    std::vector<Weight> support = product_support(sp, lam, mu);

    // candidates: every valid weight out to a couple of shells past the
    // predicted support, so vanishing outside the prediction is observable
    Rat max_spec = 0;
    for (const Weight& nu : support) max_spec = std::max(max_spec, spec_norm_sq(sp, nu));
    const double r_out = std::sqrt(rat_to_double(max_spec)) + 2.0;
    std::vector<Weight> candidates =
        weights_spec_between(sp, Rat(0), Rat(static_cast<long long>(r_out * r_out) + 1),
                             false, false);

    // the probe: product of the two zonal functions at independent random
    // centers (random so factor symmetries cannot hide a mode by accident)
    RngStream rng(seed, 0x5070u);
    const PointOnM y1 = random_point(sp, rng), y2 = random_point(sp, rng);
    const int s = static_cast<int>(weight_degree_sum(lam) + weight_degree_sum(mu));
    const int deg = degree > 0 ? degree : 3 * s + 4;
    SampledFunction f = sample_on_rule(sp, product_quadrature(sp, deg), [&](const PointOnM& x) {
        return zonal_value(sp, lam, zonal_between(sp, x, y1)) *
               zonal_value(sp, mu, zonal_between(sp, x, y2));
    });

    std::vector<std::vector<std::string>> rows;
    long long detected = 0;
    double max_outside = 0.0;
    bool all_inside = true;
    for (const Weight& nu : candidates) {
        const double norm = std::sqrt(std::max(0.0, projector_l2_sq(sp, nu, f)));
        const bool in_support =
            std::binary_search(support.begin(), support.end(), nu);
        const bool det = norm > threshold;
        if (det) ++detected;
        if (!in_support) max_outside = std::max(max_outside, norm);
        if (det && !in_support) all_inside = false;
        rows.push_back({weight_cell(lam), weight_cell(mu), weight_cell(nu), fmt_g12(norm),
                        det ? "1" : "0", in_support ? "1" : "0"});
    }
    Doc d;
    d.str("space", sp.name)
        .num("candidates", static_cast<long long>(candidates.size()))
        .num("support_size", static_cast<long long>(support.size()))
        .num("detected", detected)
        .num("max_outside", max_outside)
        .boolean("all_detected_inside", all_inside)
        .num("degree", static_cast<long long>(deg));
    emit(opt, cfg,
         {"lambda_coords", "mu_coords", "nu_coords", "proj_l2", "detected", "in_support"},
         rows, d);
}

// --- kernel ----------------------------------------------------------------------

void run_kernel_scan(const TableOpt& opt, const std::string& space, long long N,
                     long long t_samples, long long profile) {
    SpaceDescriptor sp = resolve_space(space);
    RunConfig cfg = base_config("kernel scan");
    cfg.add("space", sp.name);
    cfg.add("N", N);
    cfg.add("t_samples", t_samples);
    cfg.add("profile", profile);

    KernelScanResult res = kernel_bound_scan(sp, N, t_samples, profile);
    cfg.add("resolved_t_samples", res.t_samples);
    cfg.add("resolved_profile", res.profile);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(res.rows.size());
    for (const KernelScanRow& r : res.rows)
        rows.push_back({rat_str(r.t_frac), fmt_ll(r.a), fmt_ll(r.q), fmt_ll(r.L),
                        fmt_g12(r.sup_mod), fmt_g12(r.rhs), fmt_g12(r.ratio)});
    Doc d;
    d.str("space", sp.name)
        .num("N", N)
        .num("C_of_N", res.c_of_n)
        .rat("argmax_t", res.argmax_t)
        .num("argmax_a", res.argmax_a)
        .num("argmax_q", res.argmax_q)
        .num("rows", res.rows_emitted)
        .num("t_samples", res.t_samples)
        .num("profile", res.profile);
    emit(opt, cfg, {"t", "a", "q", "L", "sup_mod", "rhs", "ratio"}, rows, d);
}

// --- farey -----------------------------------------------------------------------

void run_farey_dissect(const TableOpt& opt, long long order) {
    RunConfig cfg = base_config("farey dissect");
    cfg.add("order", order);
    std::vector<Frac> f = farey_sequence(order);
    const std::size_t m = f.size();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m; ++i) {
        // mediant with each neighbour; 0/1 and 1/1 wrap around the circle
        const Frac& prev = i > 0 ? f[i - 1] : f[m - 2];
        const Frac& next = i + 1 < m ? f[i + 1] : f[1];
        const Rat self = Rat(f[i].a) / Rat(f[i].q);
        Rat left = self - Rat(f[i].a + prev.a - (i > 0 ? 0 : prev.q)) /
                              Rat(f[i].q + prev.q);
        Rat right = Rat(f[i].a + next.a + (i + 1 < m ? 0 : next.q)) /
                        Rat(f[i].q + next.q) -
                    self;
        rows.push_back({fmt_ll(f[i].a), fmt_ll(f[i].q),
                        rat_num(left).str(), rat_den(left).str(),
                        rat_num(right).str(), rat_den(right).str()});
    }
    Doc d;
    d.num("order", order).num("fractions", static_cast<long long>(m));
    emit(opt, cfg, {"a", "q", "left_num", "left_den", "right_num", "right_den"}, rows, d);
}

void run_farey_spectrum(const TableOpt& opt, long long N, long long Q, long long L,
                        long long n_max, const std::string& period_s) {
    const Rat per = arg_rat(period_s, "--period");
    RunConfig cfg = base_config("farey spectrum");
    cfg.add("N", N);
    cfg.add("Q", Q);
    cfg.add("L", L);
    cfg.add("period", per);

    const long long full = 64 * N * N;
    if (n_max <= 0) n_max = std::min<long long>(4096, full);
    n_max = std::min(n_max, full);
    cfg.add("n_max", n_max);

    std::vector<double> series = indicator_fourier_series(N, Q, L, n_max);
    IndicatorSup sup = indicator_fourier_sup(N, Q, L, per);
    const double bound = static_cast<double>(Q) * static_cast<double>(Q) /
                         (static_cast<double>(N) * static_cast<double>(L));
    std::vector<std::vector<std::string>> rows;
    rows.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        rows.push_back({fmt_ll(static_cast<long long>(i) + 1), fmt_g12(series[i]),
                        fmt_g12(bound)});
    Doc d;
    d.num("N", N)
        .num("Q", Q)
        .num("L", L)
        .num("n_max", n_max)
        .num("sup_full_range", sup.sup_mod) // sup over the full n <= 64 N^2
        .rat("l1_mass", sup.l1_mass)
        .num("bound", bound);
    emit(opt, cfg, {"n", "coeff_mod", "bound"}, rows, d);
}

// --- count -----------------------------------------------------------------------

void run_count_reps(const TableOpt& opt, const std::string& form, long long max_n) {
    QuadForm Q = load_form(form);
    RunConfig cfg = base_config("count reps");
    cfg.add("form", form);
    cfg.add("rank", static_cast<long long>(Q.r));
    cfg.add("max_n", max_n);
    std::vector<long long> r = rep_counts_upto(Q, max_n);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(r.size());
    long long total = 0;
    for (std::size_t n = 0; n < r.size(); ++n) {
        rows.push_back({fmt_ll(static_cast<long long>(n)), fmt_ll(r[n])});
        total += r[n];
    }
    Doc d;
    d.str("form", form).num("max_n", max_n).num("ball_total", total);
    emit(opt, cfg, {"n", "count"}, rows, d);
}

void run_count_fit(const std::string& form, long long max_n, double theory) {
    QuadForm Q = load_form(form);
    if (!(theory == theory)) theory = 0.5 * Q.r - 1.0; // NaN sentinel -> default
    ExponentFit f = rep_exponent_fit(Q, max_n, theory);
    Doc d;
    d.str("form", form)
        .num("max_n", max_n)
        .num("slope", f.slope)
        .num("residual", f.residual)
        .num("theory_exponent", f.theory);
    std::cout << d.render() << "\n";
}

void run_count_theta(const std::string& form, long long n, long long a, long long q,
                     const std::string& delta_s) {
    QuadForm Q = load_form(form);
    const Rat delta = arg_rat(delta_s, "--delta");
    ThetaMajorArc t = theta_major_arc_check(Q, n, a, q, delta);
    Doc d;
    d.str("form", form)
        .num("n", n)
        .num("a", a)
        .num("q", q)
        .rat("delta", delta)
        .num("value_re", t.value.real())
        .num("value_im", t.value.imag())
        .num("value_abs", std::abs(t.value))
        .num("bound", t.bound)
        .num("ratio", t.ratio);
    std::cout << d.render() << "\n";
}

void run_count_pairs(const TableOpt& opt, const std::string& space,
                     const std::string& center_s, const std::string& side_s,
                     const std::string& n2_s, const std::string& n_s) {
    SpaceDescriptor sp = resolve_space(space);
    Weight center = arg_weight(center_s, "--center");
    const Rat side = arg_rat(side_s, "--side");
    const Rat N2 = arg_rat(n2_s, "--N2");
    RunConfig cfg = base_config("count pairs");
    cfg.add("space", sp.name);
    cfg.add("center", weight_cell(center));
    cfg.add("side", side);
    cfg.add("N2", N2);

    if (!n_s.empty()) {
        const Rat n = arg_rat(n_s, "--n");
        long long c = joint_pair_count(sp, center, side, N2, n);
        Doc d;
        d.str("space", sp.name).rat("n", n).num("count", c);
        std::cout << d.render() << "\n";
        return;
    }
    std::map<long long, long long> hist = joint_pair_histogram(sp, center, side, N2);
    std::vector<std::vector<std::string>> rows;
    long long total = 0, max_count = 0;
    for (const auto& [key, count] : hist) {
        rows.push_back({rat_str(Rat(key) / sp.period), fmt_ll(count)});
        total += count;
        max_count = std::max(max_count, count);
    }
    Doc d;
    d.str("space", sp.name)
        .num("bins", static_cast<long long>(rows.size()))
        .num("pairs_total", total)
        .num("max_count", max_count);
    emit(opt, cfg, {"n", "count"}, rows, d);
}

// --- stri ------------------------------------------------------------------------

void run_stri_scan(const TableOpt& opt, const std::string& space, double p,
                   const std::string& n_list_s, int trials, std::uint64_t seed,
                   long long t_nodes, long long space_res) {
    SpaceDescriptor sp = resolve_space(space);
    std::vector<long long> Ns = arg_ll_list(n_list_s, "--N");
    RunConfig cfg = base_config("stri scan");
    cfg.add("space", sp.name);
    cfg.add("p", p);
    cfg.add("N_list", n_list_s);
    cfg.add("trials", trials);
    cfg.add("seed", static_cast<long long>(seed));
    cfg.add("t_nodes", t_nodes);
    cfg.add("space_res", space_res);

    std::vector<std::vector<std::string>> rows;
    std::vector<double> lx, ly;
    double max_ratio = 0.0, min_ratio = std::numeric_limits<double>::infinity();
    bool admissible = true;
    double ref_exponent = 0.0;
    for (long long N : Ns) {
        LpScanResult r = spacetime_lp_scan(sp, N, p, trials, seed, t_nodes, space_res);
        admissible = r.admissible;
        ref_exponent = r.ref_exponent;
        const double refpow = std::pow(static_cast<double>(N), r.ref_exponent);
        for (const LpScanRow& row : r.rows)
            rows.push_back({fmt_ll(N), fmt_ll(row.trial), fmt_g12(row.norm),
                            fmt_g12(refpow), fmt_g12(row.ratio)});
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(r.max_ratio));
        max_ratio = std::max(max_ratio, r.max_ratio);
        min_ratio = std::min(min_ratio, r.max_ratio);
    }
    Fit fit = ols_fit(lx, ly);
    Doc d;
    d.str("space", sp.name)
        .num("p", p)
        .num("ref_exponent", ref_exponent)
        .boolean("admissible", admissible)
        .num("slope", fit.slope)
        .num("residual", fit.residual)
        .num("max_ratio", max_ratio)
        .num("max_over_min", max_ratio / min_ratio);
    if (!admissible)
        d.str("warning", "p below the admissible range for this space; scan still ran");
    emit(opt, cfg, {"N", "trial", "norm", "ref_power", "ratio"}, rows, d);
}

void run_stri_bilinear(const TableOpt& opt, const std::string& space, long long n1,
                       const std::string& n2_list_s, int trials, std::uint64_t seed,
                       long long mc_points) {
    SpaceDescriptor sp = resolve_space(space);
    std::vector<long long> N2s = arg_ll_list(n2_list_s, "--N2-list");
    RunConfig cfg = base_config("stri bilinear");
    cfg.add("space", sp.name);
    cfg.add("N1", n1);
    cfg.add("N2_list", n2_list_s);
    cfg.add("trials", trials);
    cfg.add("seed", static_cast<long long>(seed));
    cfg.add("mc_points", mc_points);

    // the scaling statement targets products of rank-one factors of dim >= 3
    bool shape_ok = true;
    for (const SpaceFactor& f : sp.factors)
        if (f.rank != 1 || f.dim < 3) shape_ok = false;

    const double ref_exp = 0.5 * sp.dim - 1.0;
    std::vector<std::vector<std::string>> rows;
    std::vector<double> lx, ly;
    bool any_sampled = false;
    for (long long n2 : N2s) {
        BilinearScanResult r = bilinear_l2_scan(sp, n1, n2, trials, seed, mc_points);
        const double refpow = std::pow(static_cast<double>(n2), ref_exp);
        double max_norm = 0.0;
        for (const BilinearRow& row : r.rows) {
            rows.push_back({fmt_ll(n1), fmt_ll(n2), fmt_ll(row.trial), fmt_g12(row.norm),
                            fmt_g12(refpow), fmt_g12(row.norm / refpow),
                            fmt_g12(row.stderr_), row.exact ? "1" : "0"});
            max_norm = std::max(max_norm, row.norm);
            any_sampled = any_sampled || !row.exact;
        }
        lx.push_back(std::log(static_cast<double>(n2)));
        ly.push_back(std::log(max_norm));
    }
    Fit fit = ols_fit(lx, ly);
    Doc d;
    d.str("space", sp.name)
        .num("N1", n1)
        .num("ref_exponent", ref_exp)
        .num("slope", fit.slope)
        .num("residual", fit.residual)
        .boolean("sampled", any_sampled)
        .boolean("shape_warning", !shape_ok);
    emit(opt, cfg, {"N1", "N2", "trial", "norm", "ref_power", "ratio", "stderr", "exact"},
         rows, d);
}

// --- eigen -----------------------------------------------------------------------

void run_eigen_scan(const TableOpt& opt, const std::string& space, double p,
                    const std::string& shells_s, int trials, std::uint64_t seed,
                    long long mc_points) {
    SpaceDescriptor sp = resolve_space(space);
    std::vector<Rat> shells = arg_rat_list(shells_s, "--shells");
    RunConfig cfg = base_config("eigen scan");
    cfg.add("space", sp.name);
    cfg.add("p", p);
    cfg.add("shells", shells_s);
    cfg.add("trials", trials);
    cfg.add("seed", static_cast<long long>(seed));
    cfg.add("mc_points", mc_points);

    std::vector<std::vector<std::string>> rows;
    std::vector<double> lx, ly;
    std::string skipped;
    double ref_exponent = 0.0;
    for (const Rat& shell : shells) {
        ShellLpResult r = eigenfunction_lp_scan(sp, shell, p, trials, seed, mc_points);
        ref_exponent = r.ref_exponent;
        if (r.empty_shell) {
            if (!skipped.empty()) skipped += ",";
            skipped += rat_str(shell);
            continue;
        }
        const double N = std::sqrt(rat_to_double(shell));
        const double refpow = std::pow(std::max(N, 1.0), r.ref_exponent);
        double max_norm = 0.0;
        for (const ShellLpRow& row : r.rows) {
            rows.push_back({rat_str(shell), fmt_g12(N), fmt_ll(row.trial),
                            fmt_g12(row.norm), fmt_g12(refpow), fmt_g12(row.ratio),
                            fmt_g12(row.stderr_)});
            max_norm = std::max(max_norm, row.norm);
        }
        if (N > 0.0) {
            lx.push_back(std::log(N));
            ly.push_back(std::log(max_norm));
        }
    }
    Fit fit = ols_fit(lx, ly);
    Doc d;
    d.str("space", sp.name)
        .num("p", p)
        .num("ref_exponent", ref_exponent)
        .num("slope", fit.slope) // of log max norm vs log N over non-empty shells
        .num("residual", fit.residual)
        .str("skipped_shells", skipped);
    emit(opt, cfg, {"shell", "N", "trial", "norm", "ref_power", "ratio", "stderr"}, rows, d);
}

} // namespace

// ============================================================================

int main(int argc, char** argv) {
    CLI::App app{"explicit objects behind scale-invariant dispersive estimates on "
                 "compact symmetric spaces"};
    app.require_subcommand(1);
    app.add_option("--threads", g_threads,
                   "worker cap (scans in this build are single-threaded)")
        ->envname("SYMSTRI_THREADS")
        ->check(CLI::PositiveNumber);

    std::function<void()> action;

    // space ---------------------------------------------------------------
    auto* sp_cmd = app.add_subcommand("space", "catalog browsing");
    sp_cmd->require_subcommand(1);
    {
        auto* list = sp_cmd->add_subcommand("list", "tabulate the named catalog spaces");
        auto opt = std::make_shared<TableOpt>();
        opt->attach(list);
        list->callback([opt, &action] { action = [opt] { run_space_list(*opt); }; });
    }
    {
        auto* info = sp_cmd->add_subcommand("info", "echo one space descriptor");
        auto space = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        info->add_option("--space", *space, "catalog name or descriptor file")->required();
        info->add_flag("--json", *as_json, "print the full descriptor as JSON");
        info->callback([space, as_json, &action] {
            action = [space, as_json] { run_space_info(*space, *as_json); };
        });
    }

    // spherical -------------------------------------------------------------
    auto* sph_cmd = app.add_subcommand("spherical", "zonal spherical functions");
    sph_cmd->require_subcommand(1);
    {
        auto* eval = sph_cmd->add_subcommand(
            "eval", "evaluate phi_lambda (or phi_lambda phi_mu) on a polar grid");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto lam = std::make_shared<std::string>();
        auto mu = std::make_shared<std::string>();
        auto thetas = std::make_shared<long long>(9);
        eval->add_option("--space", *space)->required();
        eval->add_option("--lambda", *lam, "weight coordinates, comma-separated")->required();
        eval->add_option("--mu", *mu, "second weight: evaluate the product");
        eval->add_option("--thetas", *thetas, "grid points on [0, pi] (default 9)");
        opt->attach(eval);
        eval->callback([=, &action] {
            action = [=] { run_spherical_eval(*opt, *space, *lam, *mu, *thetas); };
        });
    }
    {
        auto* check = sph_cmd->add_subcommand(
            "check", "dual-route check: recurrence vs the trapezoid integral on S2");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>("S2");
        auto n_max = std::make_shared<long long>(40);
        auto thetas = std::make_shared<long long>(256);
        auto qp = std::make_shared<long long>(0);
        check->add_option("--space", *space, "must be S2 (default)");
        check->add_option("--n-max", *n_max, "largest degree (default 40)");
        check->add_option("--thetas", *thetas, "grid points on [0, pi/2] (default 256)");
        check->add_option("--quad-points", *qp, "integral nodes (default 4(n+1), exact)");
        opt->attach(check);
        check->callback([=, &action] {
            action = [=] { run_spherical_check(*opt, *space, *n_max, *thetas, *qp); };
        });
    }

    // support ---------------------------------------------------------------
    auto* sup_cmd = app.add_subcommand("support", "product spectral support");
    sup_cmd->require_subcommand(1);
    {
        auto* check = sup_cmd->add_subcommand(
            "check", "project phi_lambda phi_mu onto every nearby eigenspace");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto lam = std::make_shared<std::string>();
        auto mu = std::make_shared<std::string>();
        auto degree = std::make_shared<int>(0);
        auto threshold = std::make_shared<double>(1e-8);
        auto seed = std::make_shared<std::uint64_t>(42);
        check->add_option("--space", *space)->required();
        check->add_option("--lambda", *lam)->required();
        check->add_option("--mu", *mu)->required();
        check->add_option("--degree", *degree, "quadrature degree (default 3 deg + 4)");
        check->add_option("--threshold", *threshold, "detection threshold (default 1e-8)");
        check->add_option("--seed", *seed, "seed for the random centers (default 42)");
        opt->attach(check);
        check->callback([=, &action] {
            action = [=] {
                run_support_check(*opt, *space, *lam, *mu, *degree, *threshold, *seed);
            };
        });
    }

    // kernel ----------------------------------------------------------------
    auto* ker_cmd = app.add_subcommand("kernel", "band-filtered evolution kernels");
    ker_cmd->require_subcommand(1);
    {
        auto* scan = ker_cmd->add_subcommand(
            "scan", "sup |kernel| against the dispersive bound over every arc cell");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto N = std::make_shared<long long>(0);
        auto ts = std::make_shared<long long>(0);
        auto prof = std::make_shared<long long>(0);
        scan->add_option("--space", *space)->required();
        scan->add_option("--N", *N, "band frequency (>= 2)")->required();
        scan->add_option("--t-samples", *ts, "time samples (default 8 N^2 period)");
        scan->add_option("--profile", *prof, "spatial profile resolution (default 8N)");
        opt->attach(scan);
        scan->callback([=, &action] {
            action = [=] { run_kernel_scan(*opt, *space, *N, *ts, *prof); };
        });
    }

    // farey -----------------------------------------------------------------
    auto* far_cmd = app.add_subcommand("farey", "exact Farey dissections");
    far_cmd->require_subcommand(1);
    {
        auto* dissect = far_cmd->add_subcommand("dissect", "mediant half-lengths of F_n");
        auto opt = std::make_shared<TableOpt>();
        auto order = std::make_shared<long long>(0);
        dissect->add_option("--order", *order, "Farey order n >= 1")->required();
        opt->attach(dissect);
        dissect->callback(
            [=, &action] { action = [=] { run_farey_dissect(*opt, *order); }; });
    }
    {
        auto* spec = far_cmd->add_subcommand(
            "spectrum", "Fourier coefficients of one (Q, L) cell-union indicator");
        auto opt = std::make_shared<TableOpt>();
        auto N = std::make_shared<long long>(0);
        auto Q = std::make_shared<long long>(0);
        auto L = std::make_shared<long long>(0);
        auto n_max = std::make_shared<long long>(0);
        auto period = std::make_shared<std::string>("1");
        spec->add_option("--N", *N, "dissection level")->required();
        spec->add_option("--Q", *Q, "dyadic denominator class")->required();
        spec->add_option("--L", *L, "dyadic distance level")->required();
        spec->add_option("--n-max", *n_max, "rows to emit (default min(4096, 64 N^2))");
        spec->add_option("--period", *period, "period multiplier for the mass (p/q)");
        opt->attach(spec);
        spec->callback([=, &action] {
            action = [=] { run_farey_spectrum(*opt, *N, *Q, *L, *n_max, *period); };
        });
    }

    // count -----------------------------------------------------------------
    auto* cnt_cmd = app.add_subcommand("count", "quadratic-form representation counts");
    cnt_cmd->require_subcommand(1);
    {
        auto* reps = cnt_cmd->add_subcommand("reps", "representation numbers r_Q(n)");
        auto opt = std::make_shared<TableOpt>();
        auto form = std::make_shared<std::string>();
        auto max_n = std::make_shared<long long>(0);
        reps->add_option("--form", *form, "I1..I9 or a form file (rank line + matrix rows)")
            ->required();
        reps->add_option("--max-n", *max_n, "largest n")->required();
        opt->attach(reps);
        reps->callback(
            [=, &action] { action = [=] { run_count_reps(*opt, *form, *max_n); }; });
    }
    {
        auto* fit = cnt_cmd->add_subcommand("fit", "running-max growth exponent of r_Q");
        auto form = std::make_shared<std::string>();
        auto max_n = std::make_shared<long long>(0);
        auto theory = std::make_shared<double>(std::numeric_limits<double>::quiet_NaN());
        fit->add_option("--form", *form)->required();
        fit->add_option("--max-n", *max_n)->required();
        fit->add_option("--theory", *theory, "reference exponent (default r/2 - 1)");
        fit->callback(
            [=, &action] { action = [=] { run_count_fit(*form, *max_n, *theory); }; });
    }
    {
        auto* theta = cnt_cmd->add_subcommand(
            "theta", "smoothed theta block at a rational point vs the major-arc bound");
        auto form = std::make_shared<std::string>();
        auto n = std::make_shared<long long>(0);
        auto a = std::make_shared<long long>(0);
        auto q = std::make_shared<long long>(0);
        auto delta = std::make_shared<std::string>("0");
        theta->add_option("--form", *form)->required();
        theta->add_option("--n", *n, "center of the bump window")->required();
        theta->add_option("--a", *a, "numerator of the rational point")->required();
        theta->add_option("--q", *q, "denominator, 1 <= q < sqrt(n)")->required();
        theta->add_option("--delta", *delta, "offset from a/q as p/q (default 0)");
        theta->callback([=, &action] {
            action = [=] { run_count_theta(*form, *n, *a, *q, *delta); };
        });
    }
    {
        auto* pairs = cnt_cmd->add_subcommand(
            "pairs", "joint spectral pair counts: cube x dyadic band");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto center = std::make_shared<std::string>();
        auto side = std::make_shared<std::string>();
        auto n2 = std::make_shared<std::string>();
        auto n = std::make_shared<std::string>();
        pairs->add_option("--space", *space)->required();
        pairs->add_option("--center", *center, "cube center weight, comma-separated")
            ->required();
        pairs->add_option("--side", *side, "cube side (p/q)")->required();
        pairs->add_option("--N2", *n2, "band frequency of the second factor (p/q)")
            ->required();
        pairs->add_option("--n", *n, "single total spectrum to count (p/q)");
        opt->attach(pairs);
        pairs->callback([=, &action] {
            action = [=] { run_count_pairs(*opt, *space, *center, *side, *n2, *n); };
        });
    }

    // stri ------------------------------------------------------------------
    auto* stri_cmd = app.add_subcommand("stri", "space-time norm scans");
    stri_cmd->require_subcommand(1);
    {
        auto* scan = stri_cmd->add_subcommand("scan", "L^p scaling across a band list");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto p = std::make_shared<double>(0.0);
        auto n_list = std::make_shared<std::string>();
        auto trials = std::make_shared<int>(5);
        auto seed = std::make_shared<std::uint64_t>(42);
        auto t_nodes = std::make_shared<long long>(0);
        auto res = std::make_shared<long long>(0);
        scan->add_option("--space", *space)->required();
        scan->add_option("--p", *p, "Lebesgue exponent")->required();
        scan->add_option("--N", *n_list, "comma list of band frequencies")->required();
        scan->add_option("--trials", *trials, "states per N, trial 0 the probe (default 5)");
        scan->add_option("--seed", *seed, "random stream seed (default 42)");
        scan->add_option("--t-nodes", *t_nodes, "time nodes (default 32 N^2 period)");
        scan->add_option("--space-res", *res, "spatial resolution (default 8N)");
        opt->attach(scan);
        scan->callback([=, &action] {
            action = [=] {
                run_stri_scan(*opt, *space, *p, *n_list, *trials, *seed, *t_nodes, *res);
            };
        });
    }
    {
        auto* bil = stri_cmd->add_subcommand(
            "bilinear", "bilinear L^2 of two band evolutions across an N2 list");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto n1 = std::make_shared<long long>(0);
        auto n2_list = std::make_shared<std::string>();
        auto trials = std::make_shared<int>(3);
        auto seed = std::make_shared<std::uint64_t>(42);
        auto mc = std::make_shared<long long>(0);
        bil->add_option("--space", *space)->required();
        bil->add_option("--N1", *n1, "high band frequency")->required();
        bil->add_option("--N2-list", *n2_list, "comma list of low band frequencies")
            ->required();
        bil->add_option("--trials", *trials, "pairs per N2, trial 0 the probes (default 3)");
        bil->add_option("--seed", *seed, "random stream seed (default 42)");
        bil->add_option("--mc-points", *mc,
                        "sample points when dim >= 5 (default 200000)");
        opt->attach(bil);
        bil->callback([=, &action] {
            action = [=] {
                run_stri_bilinear(*opt, *space, *n1, *n2_list, *trials, *seed, *mc);
            };
        });
    }

    // eigen -----------------------------------------------------------------
    auto* eig_cmd = app.add_subcommand("eigen", "exact-shell eigenfunction scans");
    eig_cmd->require_subcommand(1);
    {
        auto* scan = eig_cmd->add_subcommand("scan", "spatial L^p across spectral shells");
        auto opt = std::make_shared<TableOpt>();
        auto space = std::make_shared<std::string>();
        auto p = std::make_shared<double>(0.0);
        auto shells = std::make_shared<std::string>();
        auto trials = std::make_shared<int>(3);
        auto seed = std::make_shared<std::uint64_t>(42);
        auto mc = std::make_shared<long long>(0);
        scan->add_option("--space", *space)->required();
        scan->add_option("--p", *p, "Lebesgue exponent")->required();
        scan->add_option("--shells", *shells, "comma list of shell spectra (p/q)")
            ->required();
        scan->add_option("--trials", *trials, "states per shell (default 3)");
        scan->add_option("--seed", *seed, "random stream seed (default 42)");
        scan->add_option("--mc-points", *mc, "sample points (default 100000)");
        opt->attach(scan);
        scan->callback([=, &action] {
            action = [=] {
                run_eigen_scan(*opt, *space, *p, *shells, *trials, *seed, *mc);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        if (action) action();
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ResolutionError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const CatalogError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
