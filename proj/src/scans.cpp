#include "symstri/scans.hpp"

#include "symstri/farey.hpp"
#include "symstri/quadrature.hpp"
#include "symstri/zonal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>

namespace symstri {
namespace {

long long period_int(const SpaceDescriptor& sp) {
    return rat_num(sp.period).convert_to<long long>();
}

long long to_ll(const BigInt& b) { return b.convert_to<long long>(); }

// --- phase grouping -----------------------------------------------------------

struct PhaseGroups {
    std::vector<long long> m;               // distinct phase integers, ascending
    std::vector<std::vector<int>> members;  // mode indices per group
};

PhaseGroups group_by_phase(const std::vector<long long>& phase) {
    std::map<long long, std::vector<int>> bucket;
    for (std::size_t i = 0; i < phase.size(); ++i)
        bucket[phase[i]].push_back(static_cast<int>(i));
    PhaseGroups g;
    for (auto& [m, v] : bucket) {
        g.m.push_back(m);
        g.members.push_back(std::move(v));
    }
    return g;
}

/**
 * Phase angles of every group at t = a/q + sgn*off: the centre part is
 * reduced exactly in integers ((m a) mod q), only the bounded offset term
 * m*off enters through doubles, so the same inputs give the same bits on
 * every run.  (m a fits easily: m <= 4 N^2 period and a < q < N.)
 */
void phases_at(const std::vector<long long>& m, long long a, long long q, int sgn, double off,
               std::vector<double>& c, std::vector<double>& s) {
    c.resize(m.size());
    s.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        long long r = (m[i] * a) % q;
        double ang = -2.0 * M_PI *
                     (static_cast<double>(r) / static_cast<double>(q) +
                      sgn * static_cast<double>(m[i]) * off);
        c[i] = std::cos(ang);
        s[i] = std::sin(ang);
    }
}

// --- sup-over-x evaluators ------------------------------------------------------

class SupEvaluator {
  public:
    virtual ~SupEvaluator() = default;
    /** sup_x |K_N(t, x)| at t = a/q + sgn*off. */
    virtual double sup(long long a, long long q, int sgn, double off) = 0;
};

constexpr long long kGridCap = 20000000; // hard memory guard on grids/matrices

/** Pure tori: scatter the band coefficients and take one FFT per sample. */
class TorusFftEvaluator : public SupEvaluator {
  public:
    TorusFftEvaluator(const SpaceDescriptor& sp, const KernelModes& km, long long profile) {
        g_ = profile;
        rank_ = sp.rank;
        total_ = 1;
        for (int i = 0; i < rank_; ++i) {
            total_ *= g_;
            if (total_ > kGridCap)
                throw ResolutionError("kernel scan spatial grid " + std::to_string(g_) + "^" +
                                      std::to_string(rank_) + " exceeds the cap of " +
                                      std::to_string(kGridCap) + " points");
        }
        groups_ = group_by_phase(km.phase);
        scatter_.resize(groups_.m.size());
        for (std::size_t gi = 0; gi < groups_.members.size(); ++gi) {
            for (int mi : groups_.members[gi]) {
                long long idx = 0;
                for (int d = 0; d < rank_; ++d) {
                    long long r = km.modes[mi][d] % g_;
                    if (r < 0) r += g_;
                    idx = idx * g_ + r;
                }
                scatter_[gi].push_back({static_cast<int>(idx), km.coeff[mi]});
                touched_.push_back(static_cast<int>(idx));
            }
        }
        in_ = fftw_alloc_complex(static_cast<std::size_t>(total_));
        out_ = fftw_alloc_complex(static_cast<std::size_t>(total_));
        std::memset(in_, 0, sizeof(fftw_complex) * static_cast<std::size_t>(total_));
        std::vector<int> nn(static_cast<std::size_t>(rank_), static_cast<int>(g_));
        // FFTW_ESTIMATE: the plan choice is a deterministic function of the
        // shape, so repeated runs produce byte-identical tables.
        plan_ = fftw_plan_dft(rank_, nn.data(), in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~TorusFftEvaluator() override {
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }

    double sup(long long a, long long q, int sgn, double off) override {
        phases_at(groups_.m, a, q, sgn, off, c_, s_);
        for (std::size_t gi = 0; gi < scatter_.size(); ++gi)
            for (const auto& [idx, coeff] : scatter_[gi]) {
                in_[idx][0] += coeff * c_[gi];
                in_[idx][1] += coeff * s_[gi];
            }
        fftw_execute(plan_);
        for (int idx : touched_) in_[idx][0] = in_[idx][1] = 0.0;
        double best = 0.0;
        for (long long i = 0; i < total_; ++i) {
            double v = out_[i][0] * out_[i][0] + out_[i][1] * out_[i][1];
            if (v > best) best = v;
        }
        return std::sqrt(best);
    }

  private:
    long long g_ = 0, total_ = 0;
    int rank_ = 0;
    PhaseGroups groups_;
    std::vector<std::vector<std::pair<int, double>>> scatter_;
    std::vector<int> touched_;
    std::vector<double> c_, s_;
    fftw_complex* in_ = nullptr;
    fftw_complex* out_ = nullptr;
    fftw_plan plan_{};
};

/** One sphere-like factor: the kernel is zonal, sup over a polar grid. */
class ZonalGridEvaluator : public SupEvaluator {
  public:
    ZonalGridEvaluator(const SpaceDescriptor& sp, const KernelModes& km, long long profile) {
        grid_ = profile;
        const int d = sp.factors[0].dim;
        long long nmax = 0;
        for (const auto& w : km.modes) nmax = std::max(nmax, w[0]);
        m_ = km.phase; // on one factor every mode has its own eigenvalue
        B_.assign(km.modes.size() * static_cast<std::size_t>(grid_), 0.0);
        for (long long j = 0; j < grid_; ++j) {
            double theta = M_PI * static_cast<double>(j) / static_cast<double>(grid_ - 1);
            std::vector<double> col = ultraspherical_column(d, nmax, std::cos(theta));
            for (std::size_t i = 0; i < km.modes.size(); ++i)
                B_[i * static_cast<std::size_t>(grid_) + static_cast<std::size_t>(j)] =
                    km.coeff[i] * col[static_cast<std::size_t>(km.modes[i][0])];
        }
        re_.resize(static_cast<std::size_t>(grid_));
        im_.resize(static_cast<std::size_t>(grid_));
    }

    double sup(long long a, long long q, int sgn, double off) override {
        phases_at(m_, a, q, sgn, off, c_, s_);
        std::fill(re_.begin(), re_.end(), 0.0);
        std::fill(im_.begin(), im_.end(), 0.0);
        for (std::size_t g = 0; g < m_.size(); ++g) {
            const double* row = &B_[g * static_cast<std::size_t>(grid_)];
            const double cg = c_[g], sg = s_[g];
            for (long long j = 0; j < grid_; ++j) {
                re_[static_cast<std::size_t>(j)] += cg * row[j];
                im_[static_cast<std::size_t>(j)] += sg * row[j];
            }
        }
        double best = 0.0;
        for (long long j = 0; j < grid_; ++j) {
            std::size_t k = static_cast<std::size_t>(j);
            double v = re_[k] * re_[k] + im_[k] * im_[k];
            if (v > best) best = v;
        }
        return std::sqrt(best);
    }

  private:
    long long grid_ = 0;
    std::vector<long long> m_;
    std::vector<double> B_, re_, im_, c_, s_;
};

/** General products: per-group complex value rows over a product angle grid. */
class ProductGridEvaluator : public SupEvaluator {
  public:
    ProductGridEvaluator(const SpaceDescriptor& sp, const KernelModes& km, long long profile) {
        // One axis per sphere-like factor (polar angle) and per torus
        // coordinate (circle angle).
        struct Axis {
            bool torus;
            int factor;
            int coord; // coordinate index within the factor (torus only)
            int dim;   // sphere-like factor dimension
        };
        std::vector<Axis> axes;
        for (std::size_t f = 0; f < sp.factors.size(); ++f) {
            if (sp.factors[f].kind == FactorKind::Torus) {
                for (int c = 0; c < sp.factors[f].rank; ++c)
                    axes.push_back({true, static_cast<int>(f), c, 1});
            } else {
                axes.push_back({false, static_cast<int>(f), 0, sp.factors[f].dim});
            }
        }
        total_ = 1;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            total_ *= profile;
            if (total_ > kGridCap)
                throw ResolutionError("kernel scan product grid exceeds the cap of " +
                                      std::to_string(kGridCap) + " points");
        }
        groups_ = group_by_phase(km.phase);
        const long long ng = static_cast<long long>(groups_.m.size());
        if (ng * total_ > kGridCap)
            throw ResolutionError(
                "kernel scan value matrix (" + std::to_string(ng) + " phase groups x " +
                std::to_string(total_) + " grid points) exceeds the cap of " +
                std::to_string(kGridCap) + " entries; reduce profile or N");
        V_.assign(static_cast<std::size_t>(ng * total_), {0.0, 0.0});
        acc_.resize(static_cast<std::size_t>(total_));

        // per sphere-like axis: table[j][n] of zonal values on the angle grid
        std::vector<std::vector<std::vector<double>>> sphere_tab(axes.size());
        for (std::size_t ax = 0; ax < axes.size(); ++ax) {
            if (axes[ax].torus) continue;
            long long nmax = 0;
            const int off = sp.factor_offset[static_cast<std::size_t>(axes[ax].factor)];
            for (const auto& w : km.modes) nmax = std::max(nmax, w[off]);
            sphere_tab[ax].resize(static_cast<std::size_t>(profile));
            for (long long j = 0; j < profile; ++j) {
                double theta = M_PI * static_cast<double>(j) / static_cast<double>(profile - 1);
                sphere_tab[ax][static_cast<std::size_t>(j)] =
                    ultraspherical_column(axes[ax].dim, nmax, std::cos(theta));
            }
        }

        std::vector<std::complex<double>> buf, nxt, vals(static_cast<std::size_t>(profile));
        for (std::size_t gi = 0; gi < groups_.members.size(); ++gi) {
            std::complex<double>* row = &V_[gi * static_cast<std::size_t>(total_)];
            for (int mi : groups_.members[gi]) {
                buf.assign(1, {km.coeff[mi], 0.0});
                for (std::size_t ax = 0; ax < axes.size(); ++ax) {
                    const int off = sp.factor_offset[static_cast<std::size_t>(axes[ax].factor)];
                    if (axes[ax].torus) {
                        const long long xi = km.modes[mi][off + axes[ax].coord];
                        for (long long j = 0; j < profile; ++j) {
                            double ang = 2.0 * M_PI * static_cast<double>(xi) *
                                         static_cast<double>(j) / static_cast<double>(profile);
                            vals[static_cast<std::size_t>(j)] = {std::cos(ang), std::sin(ang)};
                        }
                    } else {
                        const long long n = km.modes[mi][off];
                        for (long long j = 0; j < profile; ++j)
                            vals[static_cast<std::size_t>(j)] = {
                                sphere_tab[ax][static_cast<std::size_t>(j)]
                                             [static_cast<std::size_t>(n)],
                                0.0};
                    }
                    nxt.resize(buf.size() * static_cast<std::size_t>(profile));
                    for (std::size_t i = 0; i < buf.size(); ++i)
                        for (long long j = 0; j < profile; ++j)
                            nxt[i * static_cast<std::size_t>(profile) +
                                static_cast<std::size_t>(j)] =
                                buf[i] * vals[static_cast<std::size_t>(j)];
                    buf.swap(nxt);
                }
                for (long long i = 0; i < total_; ++i)
                    row[i] += buf[static_cast<std::size_t>(i)];
            }
        }
    }

    double sup(long long a, long long q, int sgn, double off) override {
        phases_at(groups_.m, a, q, sgn, off, c_, s_);
        std::fill(acc_.begin(), acc_.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t g = 0; g < groups_.m.size(); ++g) {
            const std::complex<double> ph(c_[g], s_[g]);
            const std::complex<double>* row = &V_[g * static_cast<std::size_t>(total_)];
            for (long long i = 0; i < total_; ++i) acc_[static_cast<std::size_t>(i)] += ph * row[i];
        }
        double best = 0.0;
        for (long long i = 0; i < total_; ++i) {
            double v = std::norm(acc_[static_cast<std::size_t>(i)]);
            if (v > best) best = v;
        }
        return std::sqrt(best);
    }

  private:
    long long total_ = 0;
    PhaseGroups groups_;
    std::vector<std::complex<double>> V_, acc_;
    std::vector<double> c_, s_;
};

std::unique_ptr<SupEvaluator> make_sup_evaluator(const SpaceDescriptor& sp,
                                                 const KernelModes& km, long long profile) {
    bool all_torus = true;
    for (const auto& f : sp.factors) all_torus = all_torus && f.kind == FactorKind::Torus;
    if (all_torus) return std::make_unique<TorusFftEvaluator>(sp, km, profile);
    if (sp.factors.size() == 1) return std::make_unique<ZonalGridEvaluator>(sp, km, profile);
    return std::make_unique<ProductGridEvaluator>(sp, km, profile);
}

// --- even-p fast power ----------------------------------------------------------

struct PowHalfP {
    bool even_int;
    long long half;
    double p;

    explicit PowHalfP(double pp) : p(pp) {
        double r = std::floor(pp + 0.5);
        even_int = std::abs(pp - r) < 1e-12 && static_cast<long long>(r) % 2 == 0;
        half = even_int ? static_cast<long long>(r) / 2 : 0;
    }

    /** abs2^(p/2) — |u|^p from |u|^2. */
    double operator()(double abs2) const {
        if (!even_int) return std::pow(abs2, 0.5 * p);
        double r = 1.0, b = abs2;
        long long e = half;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
};

// --- band-state phase groups and value matrices ----------------------------------

struct AtomGroups {
    std::vector<long long> m;              // distinct phase integers, ascending
    std::vector<std::vector<int>> members; // atom indices
};

AtomGroups group_atoms(const SpaceDescriptor& sp, const BandState& st) {
    if (st.atoms.empty()) throw DomainError("band state has no atoms");
    std::map<long long, std::vector<int>> bucket;
    for (std::size_t i = 0; i < st.atoms.size(); ++i) {
        long long m = to_ll(rat_num(sp.period * spec_norm_sq(sp, st.atoms[i].lam)));
        bucket[m].push_back(static_cast<int>(i));
    }
    AtomGroups g;
    for (auto& [m, v] : bucket) {
        g.m.push_back(m);
        g.members.push_back(std::move(v));
    }
    return g;
}

/** Per-group values of the state at one point (atoms collapsed by phase). */
void eval_groups_at(const SpaceDescriptor& sp, const BandState& st, const AtomGroups& g,
                    const std::vector<long long>& dlam, const PointOnM& x,
                    std::vector<std::complex<double>>& out) {
    out.assign(g.m.size(), {0.0, 0.0});
    for (std::size_t gi = 0; gi < g.members.size(); ++gi)
        for (int ai : g.members[gi]) {
            const BandAtom& at = st.atoms[static_cast<std::size_t>(ai)];
            out[gi] += at.coeff * static_cast<double>(dlam[static_cast<std::size_t>(ai)]) *
                       zonal_value(sp, at.lam, zonal_between(sp, x, at.center));
        }
}

std::vector<long long> atom_dims(const SpaceDescriptor& sp, const BandState& st) {
    std::vector<long long> d(st.atoms.size());
    for (std::size_t i = 0; i < st.atoms.size(); ++i) d[i] = dim_weight(sp, st.atoms[i].lam);
    return d;
}

/** Value matrix V[group][point] of a state over a quadrature rule. */
struct GroupValueMatrix {
    AtomGroups groups;
    std::size_t npts = 0;
    std::vector<std::complex<double>> V; // groups x npts, row-major
};

GroupValueMatrix build_gvm(const SpaceDescriptor& sp, const BandState& st,
                           const QuadratureRule& rule) {
    GroupValueMatrix gvm;
    gvm.groups = group_atoms(sp, st);
    gvm.npts = rule.points.size();
    const long long entries =
        static_cast<long long>(gvm.groups.m.size()) * static_cast<long long>(gvm.npts);
    if (entries > kGridCap)
        throw ResolutionError("state value matrix (" + std::to_string(gvm.groups.m.size()) +
                              " x " + std::to_string(gvm.npts) + ") exceeds the cap of " +
                              std::to_string(kGridCap) + " entries");
    gvm.V.assign(static_cast<std::size_t>(entries), {0.0, 0.0});
    std::vector<long long> dlam = atom_dims(sp, st);
    for (std::size_t gi = 0; gi < gvm.groups.members.size(); ++gi) {
        std::complex<double>* row = &gvm.V[gi * gvm.npts];
        for (int ai : gvm.groups.members[gi]) {
            const BandAtom& at = st.atoms[static_cast<std::size_t>(ai)];
            const double d = static_cast<double>(dlam[static_cast<std::size_t>(ai)]);
            for (std::size_t i = 0; i < gvm.npts; ++i)
                row[i] += at.coeff * d *
                          zonal_value(sp, at.lam, zonal_between(sp, rule.points[i], at.center));
        }
    }
    return gvm;
}

/** Exact trapezoid phase on the time circle: e^{-2 pi i (m j mod T)/T}. */
inline std::complex<double> time_phase(long long m, long long j, long long T) {
    long long r = (m % T) * (j % T) % T;
    double ang = -2.0 * M_PI * static_cast<double>(r) / static_cast<double>(T);
    return {std::cos(ang), std::sin(ang)};
}

bool all_torus(const SpaceDescriptor& sp) {
    for (const auto& f : sp.factors)
        if (f.kind != FactorKind::Torus) return false;
    return true;
}

} // namespace

// --- kernel_bound_scan -----------------------------------------------------------

KernelScanResult kernel_bound_scan(const SpaceDescriptor& sp, long long N, long long t_samples,
                                   long long profile) {
    if (N < 2) throw DomainError("kernel_bound_scan needs N >= 2 (arcs require q < N)");
    const long long per = period_int(sp);
    const long long min_t = 8 * N * N * per;
    const long long min_p = 8 * N;
    if (t_samples <= 0) t_samples = min_t;
    if (profile <= 0) profile = min_p;
    if (t_samples < min_t || profile < min_p)
        throw ResolutionError("kernel scan below the resolution floor: needs t_samples >= " +
                              std::to_string(min_t) + " (got " + std::to_string(t_samples) +
                              ") and profile >= " + std::to_string(min_p) + " (got " +
                              std::to_string(profile) + ")");

    KernelModes km = kernel_modes(sp, Rat(N));
    if (km.modes.empty())
        throw DomainError("kernel_bound_scan: empty spectral window at N = " + std::to_string(N));
    std::unique_ptr<SupEvaluator> eval = make_sup_evaluator(sp, km, profile);

    KernelScanResult res;
    res.t_samples = t_samples;
    res.profile = profile;

    for (const Arc& arc : farey_arcs(N)) {
        if (arc.center.q >= N) continue;
        const ArcRefinement ref = arc_refine(arc, N);
        const long long a = arc.center.a, q = arc.center.q;
        const Rat centre = Rat(a) / Rat(q);
        for (int side = 0; side < 2; ++side) {
            const int sgn = side == 0 ? -1 : +1;
            const auto& cells = side == 0 ? ref.left : ref.right;
            for (const ArcCell& cell : cells) {
                const Rat len = cell.hi - cell.lo;
                long long k = std::max<long long>(17, to_ll(rat_ceil(Rat(t_samples) * len)));
                if (k % 2 == 0) ++k;
                const Rat step = len / Rat(k - 1);
                for (long long i = 0; i < k; ++i) {
                    const Rat off = cell.lo + Rat(i) * step;
                    const double offd = rat_to_double(off);
                    KernelScanRow row;
                    row.t_frac = rat_frac(centre + sgn * off);
                    row.a = a;
                    row.q = q;
                    row.L = cell.L;
                    row.dist = offd;
                    row.sup_mod = eval->sup(a, q, sgn, offd);
                    row.rhs = dispersive_rhs(sp, N, q, off);
                    row.ratio = row.sup_mod / row.rhs;
                    if (row.ratio > res.c_of_n) {
                        res.c_of_n = row.ratio;
                        res.argmax_t = row.t_frac;
                        res.argmax_a = a;
                        res.argmax_q = q;
                    }
                    res.rows.push_back(std::move(row));
                }
            }
        }
    }
    res.rows_emitted = static_cast<long long>(res.rows.size());
    return res;
}

ParsevalCheck kernel_parseval_check(const SpaceDescriptor& sp, long long N, const Rat& t_frac,
                                    int degree) {
    if (N < 1) throw DomainError("kernel_parseval_check needs N >= 1");
    if (degree <= 0) degree = static_cast<int>(4 * N);
    KernelModes km = kernel_modes(sp, Rat(N));
    QuadratureRule rule = product_quadrature(sp, degree);
    const PointOnM id = identity_point(sp);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        std::complex<double> v =
            kernel_value(sp, km, t_frac, zonal_between(sp, rule.points[i], id));
        acc += static_cast<long double>(rule.weights[i]) * std::norm(v);
    }
    ParsevalCheck out;
    out.quadrature_value = static_cast<double>(acc) / sp.volume;
    out.mode_sum = kernel_parseval_sum(km);
    out.rel_err = std::abs(out.quadrature_value - out.mode_sum) /
                  std::max(out.mode_sum, 1e-300);
    return out;
}

// --- spacetime L^p ---------------------------------------------------------------

double spacetime_lp_norm(const SpaceDescriptor& sp, const BandState& st, long long N, double p,
                         long long t_nodes, long long space_res) {
    if (N < 1) throw DomainError("spacetime_lp_norm needs N >= 1");
    if (p < 1.0) throw DomainError("spacetime_lp_norm needs p >= 1");
    const long long per = period_int(sp);
    if (t_nodes <= 0) t_nodes = 32 * N * N * per;
    if (space_res <= 0) space_res = 8 * N;
    if (t_nodes < 2 || space_res < 2)
        throw DomainError("spacetime_lp_norm needs t_nodes >= 2 and space_res >= 2");
    const double bigT = 2.0 * M_PI * static_cast<double>(per);
    const PowHalfP powp(p);
    const long long T = t_nodes;

    if (all_torus(sp)) {
        std::map<Weight, std::complex<double>> A = torus_mode_coefficients(sp, st);
        const long long g = space_res;
        long long total = 1;
        for (int d = 0; d < sp.rank; ++d) {
            total *= g;
            if (total > kGridCap)
                throw ResolutionError("spacetime grid " + std::to_string(g) + "^" +
                                      std::to_string(sp.rank) + " exceeds the cap of " +
                                      std::to_string(kGridCap) + " points");
        }
        struct Entry {
            int idx;
            long long m;
            std::complex<double> coeff;
        };
        std::vector<Entry> entries;
        entries.reserve(A.size());
        for (const auto& [xi, c] : A) {
            long long idx = 0;
            for (int d = 0; d < sp.rank; ++d) {
                long long r = xi[d] % g;
                if (r < 0) r += g;
                idx = idx * g + r;
            }
            long long m = to_ll(rat_num(sp.period * spec_norm_sq_lattice(sp, xi)));
            entries.push_back({static_cast<int>(idx), m, c});
        }
        fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(total));
        fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(total));
        std::memset(in, 0, sizeof(fftw_complex) * static_cast<std::size_t>(total));
        std::vector<int> nn(static_cast<std::size_t>(sp.rank), static_cast<int>(g));
        fftw_plan plan = fftw_plan_dft(sp.rank, nn.data(), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        long double acc = 0.0L;
        for (long long j = 0; j < T; ++j) {
            for (const Entry& e : entries) {
                std::complex<double> v = e.coeff * time_phase(e.m, j, T);
                in[e.idx][0] += v.real();
                in[e.idx][1] += v.imag();
            }
            fftw_execute(plan);
            for (const Entry& e : entries) in[e.idx][0] = in[e.idx][1] = 0.0;
            long double psum = 0.0L;
            for (long long i = 0; i < total; ++i)
                psum += powp(out[i][0] * out[i][0] + out[i][1] * out[i][1]);
            acc += psum;
        }
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
        const double mean_x_t =
            static_cast<double>(acc / static_cast<long double>(T) /
                                static_cast<long double>(total));
        return std::pow(bigT * sp.volume * mean_x_t, 1.0 / p);
    }

    QuadratureRule rule = product_quadrature(sp, static_cast<int>(2 * space_res));
    GroupValueMatrix gvm = build_gvm(sp, st, rule);
    const std::size_t G = gvm.groups.m.size(), P = gvm.npts;
    std::vector<std::complex<double>> u(P);
    long double acc = 0.0L;
    for (long long j = 0; j < T; ++j) {
        std::fill(u.begin(), u.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t gi = 0; gi < G; ++gi) {
            const std::complex<double> ph = time_phase(gvm.groups.m[gi], j, T);
            const std::complex<double>* row = &gvm.V[gi * P];
            for (std::size_t i = 0; i < P; ++i) u[i] += ph * row[i];
        }
        long double psum = 0.0L;
        for (std::size_t i = 0; i < P; ++i)
            psum += static_cast<long double>(rule.weights[i]) * powp(std::norm(u[i]));
        acc += psum;
    }
    return std::pow(bigT * static_cast<double>(acc / static_cast<long double>(T)), 1.0 / p);
}

LpScanResult spacetime_lp_scan(const SpaceDescriptor& sp, long long N, double p, int trials,
                               std::uint64_t seed, long long t_nodes, long long space_res) {
    if (trials < 1) throw DomainError("spacetime_lp_scan needs trials >= 1");
    if (N < 1) throw DomainError("spacetime_lp_scan needs N >= 1");
    if (p < 1.0) throw DomainError("spacetime_lp_scan needs p >= 1");
    const long long per = period_int(sp);
    const long long min_t = 32 * N * N * per;
    const long long min_r = 8 * N;
    if (t_nodes <= 0) t_nodes = min_t;
    if (space_res <= 0) space_res = min_r;
    if (t_nodes < min_t || space_res < min_r)
        throw ResolutionError("spacetime scan below the resolution floor: needs t_nodes >= " +
                              std::to_string(min_t) + " (got " + std::to_string(t_nodes) +
                              ") and space_res >= " + std::to_string(min_r) + " (got " +
                              std::to_string(space_res) + ")");
    LpScanResult res;
    res.t_nodes = t_nodes;
    res.space_res = space_res;
    res.ref_exponent = 0.5 * sp.dim - (sp.dim + 2.0) / p;
    res.admissible = p + 1e-12 >= 2.0 * (sp.dim + 2.0) / sp.dim;
    const double refpow = std::pow(static_cast<double>(std::max<long long>(N, 1)),
                                   res.ref_exponent);
    for (int t = 0; t < trials; ++t) {
        BandState st;
        if (t == 0) {
            st = coherent_probe_state(sp, Rat(N), identity_point(sp));
        } else {
            RngStream rng(seed, static_cast<std::uint64_t>(t));
            st = random_band_state(sp, Rat(N), 0, rng);
        }
        LpScanRow row;
        row.trial = t;
        row.probe = t == 0;
        row.norm = spacetime_lp_norm(sp, st, N, p, t_nodes, space_res);
        row.ratio = row.norm / refpow;
        res.max_ratio = std::max(res.max_ratio, row.ratio);
        res.rows.push_back(row);
    }
    return res;
}

// --- bilinear L^2 ----------------------------------------------------------------

namespace {

/** Sum over pair phases: S(x) = Sum_n |Sum_{m1+m2=n} U_{m1}(x) V_{m2}(x)|^2. */
struct PairAccumulator {
    long long minn = 0;
    std::vector<std::complex<double>> acc;
    std::vector<long long> touched; // distinct pair sums, ascending

    PairAccumulator(const AtomGroups& g1, const AtomGroups& g2) {
        std::map<long long, bool> sums;
        for (long long m1 : g1.m)
            for (long long m2 : g2.m) sums[m1 + m2] = true;
        minn = sums.begin()->first;
        const long long span = sums.rbegin()->first - minn + 1;
        if (span > 4000000)
            throw ResolutionError("bilinear pair-phase span " + std::to_string(span) +
                                  " exceeds the cap of 4000000");
        acc.assign(static_cast<std::size_t>(span), {0.0, 0.0});
        for (const auto& [n, _] : sums) touched.push_back(n - minn);
    }

    double value(const std::vector<std::complex<double>>& U,
                 const std::vector<std::complex<double>>& V, const std::vector<long long>& m1,
                 const std::vector<long long>& m2) {
        for (std::size_t i = 0; i < m1.size(); ++i)
            for (std::size_t j = 0; j < m2.size(); ++j)
                acc[static_cast<std::size_t>(m1[i] + m2[j] - minn)] += U[i] * V[j];
        double s = 0.0;
        for (long long t : touched) {
            s += std::norm(acc[static_cast<std::size_t>(t)]);
            acc[static_cast<std::size_t>(t)] = {0.0, 0.0};
        }
        return s;
    }
};

/** Quadrature degree that makes |u1 u2|^2 exact: per coordinate twice the
 *  summed zonal degrees of the two bands. */
int bilinear_exact_degree(const SpaceDescriptor& sp, const BandState& u1, const BandState& u2) {
    long long deg = 0;
    for (int c = 0; c < sp.rank; ++c) {
        long long d1 = 0, d2 = 0;
        for (const auto& at : u1.atoms) d1 = std::max(d1, std::abs(at.lam[c]));
        for (const auto& at : u2.atoms) d2 = std::max(d2, std::abs(at.lam[c]));
        deg = std::max(deg, d1 + d2);
    }
    return static_cast<int>(2 * deg);
}

} // namespace

BilinearValue bilinear_l2_norm(const SpaceDescriptor& sp, const BandState& u1,
                               const BandState& u2, long long mc_points, std::uint64_t seed) {
    AtomGroups g1 = group_atoms(sp, u1), g2 = group_atoms(sp, u2);
    std::vector<long long> d1 = atom_dims(sp, u1), d2 = atom_dims(sp, u2);
    PairAccumulator pair(g1, g2);
    const double bigT = 2.0 * M_PI * static_cast<double>(period_int(sp));

    BilinearValue out;
    if (sp.dim <= 4) {
        QuadratureRule rule = product_quadrature(sp, bilinear_exact_degree(sp, u1, u2));
        if (static_cast<long long>(rule.points.size()) <= kGridCap) {
            std::vector<std::complex<double>> U, V;
            long double acc = 0.0L;
            for (std::size_t i = 0; i < rule.points.size(); ++i) {
                eval_groups_at(sp, u1, g1, d1, rule.points[i], U);
                eval_groups_at(sp, u2, g2, d2, rule.points[i], V);
                acc += static_cast<long double>(rule.weights[i]) * pair.value(U, V, g1.m, g2.m);
            }
            out.norm = std::sqrt(bigT * static_cast<double>(acc));
            out.exact = true;
            out.points = static_cast<long long>(rule.points.size());
            return out;
        }
    }

    const long long M = mc_points <= 0 ? 200000 : mc_points;
    RngStream rng(seed, 0x42494C49ull);
    std::vector<std::complex<double>> U, V;
    long double sum = 0.0L, sumsq = 0.0L;
    for (long long i = 0; i < M; ++i) {
        PointOnM x = random_point(sp, rng);
        eval_groups_at(sp, u1, g1, d1, x, U);
        eval_groups_at(sp, u2, g2, d2, x, V);
        const double s = pair.value(U, V, g1.m, g2.m);
        sum += s;
        sumsq += static_cast<long double>(s) * s;
    }
    const double mean = static_cast<double>(sum / static_cast<long double>(M));
    const double var = std::max(
        0.0, static_cast<double>(sumsq / static_cast<long double>(M)) - mean * mean);
    const double sd = std::sqrt(var * static_cast<double>(M) / std::max<double>(1.0, M - 1.0));
    out.norm = std::sqrt(bigT * sp.volume * mean);
    out.points = M;
    if (out.norm > 0.0)
        out.stderr_ = bigT * sp.volume * sd / std::sqrt(static_cast<double>(M)) / (2.0 * out.norm);
    return out;
}

double bilinear_l2_dense(const SpaceDescriptor& sp, const BandState& u1, const BandState& u2,
                         long long t_nodes, long long space_res) {
    if (t_nodes < 2 || space_res < 2)
        throw DomainError("bilinear_l2_dense needs t_nodes >= 2 and space_res >= 2");
    QuadratureRule rule = product_quadrature(sp, static_cast<int>(2 * space_res));
    GroupValueMatrix m1 = build_gvm(sp, u1, rule), m2 = build_gvm(sp, u2, rule);
    const std::size_t P = rule.points.size();
    const double bigT = 2.0 * M_PI * static_cast<double>(period_int(sp));
    std::vector<std::complex<double>> a(P), b(P);
    long double acc = 0.0L;
    for (long long j = 0; j < t_nodes; ++j) {
        std::fill(a.begin(), a.end(), std::complex<double>(0.0, 0.0));
        std::fill(b.begin(), b.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t gi = 0; gi < m1.groups.m.size(); ++gi) {
            const std::complex<double> ph = time_phase(m1.groups.m[gi], j, t_nodes);
            const std::complex<double>* row = &m1.V[gi * P];
            for (std::size_t i = 0; i < P; ++i) a[i] += ph * row[i];
        }
        for (std::size_t gi = 0; gi < m2.groups.m.size(); ++gi) {
            const std::complex<double> ph = time_phase(m2.groups.m[gi], j, t_nodes);
            const std::complex<double>* row = &m2.V[gi * P];
            for (std::size_t i = 0; i < P; ++i) b[i] += ph * row[i];
        }
        long double psum = 0.0L;
        for (std::size_t i = 0; i < P; ++i)
            psum += static_cast<long double>(rule.weights[i]) * std::norm(a[i] * b[i]);
        acc += psum;
    }
    return std::sqrt(bigT * static_cast<double>(acc / static_cast<long double>(t_nodes)));
}

BilinearScanResult bilinear_l2_scan(const SpaceDescriptor& sp, long long n1, long long n2,
                                    int trials, std::uint64_t seed, long long mc_points) {
    if (trials < 1) throw DomainError("bilinear_l2_scan needs trials >= 1");
    if (n1 < 1 || n2 < 1) throw DomainError("bilinear_l2_scan needs N1, N2 >= 1");
    BilinearScanResult res;
    for (int t = 0; t < trials; ++t) {
        BandState a, b;
        if (t == 0) {
            const PointOnM id = identity_point(sp);
            a = coherent_probe_state(sp, Rat(n1), id);
            b = coherent_probe_state(sp, Rat(n2), id);
        } else {
            RngStream r1(seed, 2 * static_cast<std::uint64_t>(t));
            RngStream r2(seed, 2 * static_cast<std::uint64_t>(t) + 1);
            a = random_band_state(sp, Rat(n1), 0, r1);
            b = random_band_state(sp, Rat(n2), 0, r2);
        }
        BilinearValue v = bilinear_l2_norm(sp, a, b, mc_points,
                                           splitmix64(seed ^ (0xB111ull + t)));
        BilinearRow row;
        row.trial = t;
        row.probe = t == 0;
        row.norm = v.norm;
        row.stderr_ = v.stderr_;
        row.exact = v.exact;
        res.rows.push_back(row);
        res.max_norm = std::max(res.max_norm, v.norm);
        res.points = v.points;
    }
    return res;
}

// --- eigenfunction L^p -------------------------------------------------------------

namespace {

/**
 * Same atom-by-atom sum as band_state_eval (bit-identical order and values),
 * with the per-atom dimension hoisted out of the point loop and the zonal
 * offset reused across consecutive atoms sharing a center — shell states
 * put every mode at one center, so the point loop drops from one
 * zonal_between per atom to one per point.
 */
class FlatStateEval {
    const SpaceDescriptor& sp_;
    const BandState& st_;
    std::vector<double> dims_;

  public:
    FlatStateEval(const SpaceDescriptor& sp, const BandState& st) : sp_(sp), st_(st) {
        dims_.reserve(st.atoms.size());
        for (const auto& a : st.atoms)
            dims_.push_back(static_cast<double>(dim_weight(sp, a.lam)));
    }

    std::complex<double> operator()(const PointOnM& x) const {
        std::complex<double> acc(0.0, 0.0);
        ZonalPoint z;
        const PointOnM* cached = nullptr;
        for (std::size_t i = 0; i < st_.atoms.size(); ++i) {
            const auto& a = st_.atoms[i];
            if (cached == nullptr || !(a.center.f == cached->f)) {
                z = zonal_between(sp_, x, a.center);
                cached = &a.center;
            }
            acc += a.coeff * dims_[i] * zonal_value(sp_, a.lam, z);
        }
        return acc;
    }
};

} // namespace

SpatialLp spatial_lp_mc(const SpaceDescriptor& sp, const BandState& st, double p,
                        long long points, std::uint64_t seed) {
    if (p < 1.0) throw DomainError("spatial_lp_mc needs p >= 1");
    const long long M = points <= 0 ? 100000 : points;
    RngStream rng(seed, 0xE16Eull);
    const PowHalfP powp(p);
    const FlatStateEval eval(sp, st);
    long double sum = 0.0L, sumsq = 0.0L;
    for (long long i = 0; i < M; ++i) {
        PointOnM x = random_point(sp, rng);
        const double v = powp(std::norm(eval(x)));
        sum += v;
        sumsq += static_cast<long double>(v) * v;
    }
    const double mean = static_cast<double>(sum / static_cast<long double>(M));
    const double var = std::max(
        0.0, static_cast<double>(sumsq / static_cast<long double>(M)) - mean * mean);
    const double sd = std::sqrt(var * static_cast<double>(M) / std::max<double>(1.0, M - 1.0));
    SpatialLp out;
    const double est = sp.volume * mean;
    out.norm = std::pow(est, 1.0 / p);
    if (est > 0.0)
        out.stderr_ = (sp.volume * sd / std::sqrt(static_cast<double>(M))) *
                      std::pow(est, 1.0 / p - 1.0) / p;
    return out;
}

double spatial_lp_quadrature(const SpaceDescriptor& sp, const BandState& st, double p,
                             int degree) {
    if (p < 1.0) throw DomainError("spatial_lp_quadrature needs p >= 1");
    QuadratureRule rule = product_quadrature(sp, degree);
    const PowHalfP powp(p);
    const FlatStateEval eval(sp, st);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < rule.points.size(); ++i)
        acc += static_cast<long double>(rule.weights[i]) *
               powp(std::norm(eval(rule.points[i])));
    return std::pow(static_cast<double>(acc), 1.0 / p);
}

ShellLpResult eigenfunction_lp_scan(const SpaceDescriptor& sp, const Rat& shell_n, double p,
                                    int trials, std::uint64_t seed, long long mc_points) {
    if (trials < 1) throw DomainError("eigenfunction_lp_scan needs trials >= 1");
    ShellLpResult res;
    res.ref_exponent = 0.5 * (sp.dim - 2.0) - sp.dim / p;
    if (shell_weights(sp, shell_n).empty()) {
        res.empty_shell = true;
        return res;
    }
    const double N = std::sqrt(std::max(0.0, rat_to_double(shell_n)));
    const double refpow = std::pow(std::max(N, 1.0), res.ref_exponent);
    for (int t = 0; t < trials; ++t) {
        BandState st;
        if (t == 0) {
            st = coherent_shell_probe(sp, shell_n);
        } else {
            RngStream rng(seed, static_cast<std::uint64_t>(t));
            st = random_shell_state(sp, shell_n, rng);
        }
        SpatialLp v = spatial_lp_mc(sp, st, p, mc_points,
                                    splitmix64(seed ^ (0xE16E00ull + t)));
        ShellLpRow row;
        row.trial = t;
        row.probe = t == 0;
        row.norm = v.norm;
        row.stderr_ = v.stderr_;
        row.ratio = v.norm / refpow;
        res.max_ratio = std::max(res.max_ratio, row.ratio);
        res.rows.push_back(row);
    }
    return res;
}

} // namespace symstri
