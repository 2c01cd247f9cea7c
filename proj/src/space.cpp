// ============================================================================
// Space catalog: construction, exact weight-lattice arithmetic, enumeration.
//
// Enumeration strategy.  Every query (band, ball, shell, rho0-ball) reduces
// to walking integer vectors inside an ellipsoid
//     (lambda + shift)^T G (lambda + shift) <= C
// For diagonal integer gram data (every built-in space) the walk runs in
// plain 64-bit integers coordinate by coordinate, since the form separates.
// For general rational gram matrices the walk uses the exact LDL^T
// decomposition  Q(y) = sum_i D_i (y_i + sum_{j>i} U_ij y_j)^2  with
// rational D, U: coordinate ranges come from double estimates that are then
// tightened by exact rational comparisons, so no point is ever missed.
// ============================================================================

#include "symstri/space.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace symstri {

namespace {

// --- small rational linear algebra ------------------------------------------

struct RatLDL {
    std::vector<Rat> D;                  // positive diagonal
    std::vector<std::vector<Rat>> U;     // unit upper part, U[i][j] for j > i
};

RatLDL ldl_decompose(const std::vector<std::vector<Rat>>& G) {
    const int r = static_cast<int>(G.size());
    std::vector<std::vector<Rat>> A = G;
    RatLDL out;
    out.D.assign(r, Rat(0));
    out.U.assign(r, std::vector<Rat>(r, Rat(0)));
    for (int i = 0; i < r; ++i) {
        out.D[i] = A[i][i];
        if (out.D[i] <= 0)
            throw DomainError("gram matrix is not positive definite");
        for (int j = i + 1; j < r; ++j) out.U[i][j] = A[i][j] / out.D[i];
        for (int j = i + 1; j < r; ++j)
            for (int k = i + 1; k < r; ++k)
                A[j][k] -= out.D[i] * out.U[i][j] * out.U[i][k];
    }
    return out;
}

Rat rat_det(const std::vector<std::vector<Rat>>& G) {
    RatLDL l = ldl_decompose(G);
    Rat det = 1;
    for (const auto& d : l.D) det *= d;
    return det;
}

/** Solve G x = v exactly (G SPD). */
std::vector<Rat> rat_solve(const std::vector<std::vector<Rat>>& G, std::vector<Rat> v) {
    const int r = static_cast<int>(G.size());
    std::vector<std::vector<Rat>> A = G;
    for (int i = 0; i < r; ++i) {
        // partial pivot (G is SPD so A[i][i] != 0 after elimination, but stay safe)
        int piv = i;
        while (piv < r && A[piv][i] == 0) ++piv;
        if (piv == r) throw DomainError("singular gram matrix");
        std::swap(A[piv], A[i]);
        std::swap(v[piv], v[i]);
        for (int j = i + 1; j < r; ++j) {
            if (A[j][i] == 0) continue;
            Rat f = A[j][i] / A[i][i];
            for (int k = i; k < r; ++k) A[j][k] -= f * A[i][k];
            v[j] -= f * v[i];
        }
    }
    std::vector<Rat> x(r, Rat(0));
    for (int i = r - 1; i >= 0; --i) {
        Rat s = v[i];
        for (int k = i + 1; k < r; ++k) s -= A[i][k] * x[k];
        x[i] = s / A[i][i];
    }
    return x;
}

// --- factor constructors -----------------------------------------------------

double sphere_volume(int d) {
    // vol(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
    return 2.0 * std::pow(M_PI, (d + 1) / 2.0) / std::tgamma((d + 1) / 2.0);
}

SpaceFactor torus_factor(int r, std::vector<std::vector<Rat>> gram, std::string label) {
    SpaceFactor f;
    f.kind = FactorKind::Torus;
    f.rank = r;
    f.dim = r;
    if (gram.empty()) {
        gram.assign(r, std::vector<Rat>(r, Rat(0)));
        for (int i = 0; i < r; ++i) gram[i][i] = 1;
    }
    if (static_cast<int>(gram.size()) != r)
        throw CatalogError("torus gram size does not match rank");
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != r)
            throw CatalogError("torus gram is not square");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (gram[i][j] != gram[j][i])
                throw CatalogError("torus gram is not symmetric");
    Rat det = rat_det(gram); // also validates positive definiteness
    f.gram = std::move(gram);
    f.spec_linear.assign(r, Rat(0));
    f.label = std::move(label);
    // Metric dual to the spectral form: g = G^{-1}, vol = (2 pi)^r / sqrt(det G).
    f.volume = std::pow(2.0 * M_PI, r) / std::sqrt(rat_to_double(det));
    return f;
}

SpaceFactor sphere_factor(int d) {
    SpaceFactor f;
    f.kind = FactorKind::Sphere;
    f.rank = 1;
    f.dim = d;
    f.gram = {{Rat(1)}};
    f.spec_linear = {Rat(d - 1)};
    f.label = "S" + std::to_string(d);
    // d_n = 2/(d-1)! * (n + (d-1)/2) * prod_{j=1}^{d-2} (n + j)
    Rat fact = 1;
    for (int j = 2; j <= d - 1; ++j) fact *= j;
    f.local_dim_scale = Rat(2) / fact;
    LinearForm half;
    half.coeffs = {Rat(1)};
    half.constant = Rat(d - 1, 2);
    f.local_dim_factors.push_back(half);
    for (int j = 1; j <= d - 2; ++j) {
        LinearForm lf;
        lf.coeffs = {Rat(1)};
        lf.constant = Rat(j);
        f.local_dim_factors.push_back(lf);
    }
    f.volume = sphere_volume(d);
    return f;
}

SpaceFactor su2_factor() {
    SpaceFactor f;
    f.kind = FactorKind::Group;
    f.rank = 1;
    f.dim = 3;
    f.gram = {{Rat(1)}};
    f.spec_linear = {Rat(2)};
    f.label = "SU2";
    f.local_dim_scale = 1;
    for (int k = 0; k < 2; ++k) {
        LinearForm lf;
        lf.coeffs = {Rat(1)};
        lf.constant = 1;
        f.local_dim_factors.push_back(lf);
    }
    f.volume = sphere_volume(3); // bi-invariant metric normalized to the unit S^3
    return f;
}

} // namespace

// --- assembly -----------------------------------------------------------------

SpaceDescriptor make_space(const std::vector<SpaceFactor>& factors, const std::string& name) {
    if (factors.empty()) throw CatalogError("a space needs at least one factor");
    SpaceDescriptor sp;
    sp.name = name;
    sp.factors = factors;
    for (const auto& f : factors) {
        sp.factor_offset.push_back(sp.rank);
        sp.rank += f.rank;
        sp.dim += f.dim;
    }
    sp.gram.assign(sp.rank, std::vector<Rat>(sp.rank, Rat(0)));
    sp.spec_linear.assign(sp.rank, Rat(0));
    sp.rho0.assign(sp.rank, Rat(0));
    sp.coord_free.assign(sp.rank, false);
    sp.volume = 1.0;
    std::vector<Rat> all_entries;
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        const auto& f = factors[fi];
        const int off = sp.factor_offset[fi];
        for (int i = 0; i < f.rank; ++i) {
            for (int j = 0; j < f.rank; ++j) {
                sp.gram[off + i][off + j] = f.gram[i][j];
                all_entries.push_back(f.gram[i][j]);
            }
            sp.spec_linear[off + i] = f.spec_linear[i];
            all_entries.push_back(f.spec_linear[i]);
            sp.rho0[off + i] = (f.kind == FactorKind::Torus) ? Rat(0) : Rat(1);
            sp.coord_free[off + i] = (f.kind == FactorKind::Torus);
        }
        sp.dim_scale *= f.local_dim_scale;
        for (const auto& lf : f.local_dim_factors) {
            LinearForm padded;
            padded.coeffs.assign(sp.rank, Rat(0));
            for (int i = 0; i < f.rank; ++i) padded.coeffs[off + i] = lf.coeffs[i];
            padded.constant = lf.constant;
            sp.dim_factors.push_back(padded);
        }
        sp.volume *= f.volume;
    }
    sp.rho0_gram_shift.assign(sp.rank, Rat(0));
    for (int i = 0; i < sp.rank; ++i) {
        Rat s = 0;
        for (int j = 0; j < sp.rank; ++j) s += sp.gram[i][j] * sp.rho0[j];
        sp.rho0_gram_shift[i] = 2 * s;
    }
    sp.period = Rat(lcm_denominators(all_entries));
    return sp;
}

SpaceDescriptor make_torus(int r) {
    if (r < 1) throw CatalogError("torus rank must be >= 1");
    return make_space({torus_factor(r, {}, "T" + std::to_string(r))}, "T" + std::to_string(r));
}

SpaceDescriptor make_torus_with_gram(int r, const std::vector<std::vector<Rat>>& gram,
                                     const std::string& name) {
    return make_space({torus_factor(r, gram, name)}, name);
}

SpaceDescriptor make_sphere(int d) {
    if (d < 2) throw CatalogError("sphere dimension must be >= 2");
    return make_space({sphere_factor(d)}, "S" + std::to_string(d));
}

SpaceDescriptor make_su2() { return make_space({su2_factor()}, "SU2"); }

SpaceDescriptor product_space(const SpaceDescriptor& a, const SpaceDescriptor& b) {
    std::vector<SpaceFactor> fs = a.factors;
    fs.insert(fs.end(), b.factors.begin(), b.factors.end());
    return make_space(fs, a.name + "x" + b.name);
}

SpaceDescriptor catalog_get(const std::string& name) {
    // split on "×" (UTF-8), "x", or "*"
    std::vector<std::string> tokens;
    std::string cur;
    for (std::size_t i = 0; i < name.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        if (c == 0xC3 && i + 1 < name.size() &&
            static_cast<unsigned char>(name[i + 1]) == 0x97) {
            tokens.push_back(cur);
            cur.clear();
            ++i;
        } else if (name[i] == 'x' || name[i] == '*') {
            tokens.push_back(cur);
            cur.clear();
        } else if (name[i] != ' ') {
            cur.push_back(name[i]);
        }
    }
    tokens.push_back(cur);

    std::vector<SpaceFactor> fs;
    for (const auto& tok : tokens) {
        if (tok.empty())
            throw CatalogError("empty space token in '" + name + "'");
        if (tok == "SU2") {
            fs.push_back(su2_factor());
            continue;
        }
        auto is_number = [](const std::string& s) {
            if (s.empty()) return false;
            for (char c : s)
                if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            return true;
        };
        if (tok[0] == 'T' && is_number(tok.substr(1))) {
            int r = std::stoi(tok.substr(1));
            if (r >= 1) {
                fs.push_back(torus_factor(r, {}, tok));
                continue;
            }
        }
        if (tok[0] == 'S' && is_number(tok.substr(1))) {
            int d = std::stoi(tok.substr(1));
            if (d >= 2) {
                fs.push_back(sphere_factor(d));
                continue;
            }
            throw CatalogError("unknown space token '" + tok + "' (spheres need dim >= 2)");
        }
        throw CatalogError("unknown space token '" + tok + "'");
    }
    std::string canonical;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) canonical += "x";
        canonical += fs[i].label;
    }
    return make_space(fs, canonical);
}

// --- descriptor files ----------------------------------------------------------

namespace {
using nlohmann::json;

json rat_to_json(const Rat& r) { return json(rat_str(r)); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw CatalogError("descriptor: expected an integer or a 'p/q' string");
}

std::vector<std::vector<Rat>> gram_from_json(const json& j) {
    std::vector<std::vector<Rat>> g;
    for (const auto& row : j) {
        std::vector<Rat> r;
        for (const auto& e : row) r.push_back(rat_from_json(e));
        g.push_back(std::move(r));
    }
    return g;
}
} // namespace

SpaceDescriptor space_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw CatalogError(std::string("descriptor parse failure: ") + e.what());
    }
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
        throw CatalogError("descriptor needs a non-empty 'factors' array");
    std::vector<SpaceFactor> fs;
    for (const auto& fj : j["factors"]) {
        std::string kind = fj.value("kind", "");
        if (kind == "torus") {
            int r = fj.value("rank", 0);
            if (r < 1) throw CatalogError("torus factor needs rank >= 1");
            std::vector<std::vector<Rat>> gram;
            if (fj.contains("gram")) gram = gram_from_json(fj["gram"]);
            fs.push_back(torus_factor(r, gram, "T" + std::to_string(r)));
        } else if (kind == "sphere") {
            int d = fj.value("dim", 0);
            if (d < 2) throw CatalogError("sphere factor needs dim >= 2");
            fs.push_back(sphere_factor(d));
        } else if (kind == "group_su2") {
            fs.push_back(su2_factor());
        } else {
            throw CatalogError("descriptor factor kind must be torus | sphere | group_su2");
        }
    }
    std::string name = j.value("name", "");
    if (name.empty()) {
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i) name += "x";
            name += fs[i].label;
        }
    }
    return make_space(fs, name);
}

SpaceDescriptor space_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open descriptor file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return space_from_json_text(ss.str());
}

std::string space_to_json(const SpaceDescriptor& sp) {
    json j;
    j["name"] = sp.name;
    j["rank"] = sp.rank;
    j["dim"] = sp.dim;
    json factors = json::array();
    for (const auto& f : sp.factors) {
        json fj;
        switch (f.kind) {
            case FactorKind::Torus: {
                fj["kind"] = "torus";
                fj["rank"] = f.rank;
                json g = json::array();
                for (const auto& row : f.gram) {
                    json r = json::array();
                    for (const auto& e : row) r.push_back(rat_to_json(e));
                    g.push_back(r);
                }
                fj["gram"] = g;
                break;
            }
            case FactorKind::Sphere:
                fj["kind"] = "sphere";
                fj["dim"] = f.dim;
                break;
            case FactorKind::Group:
                fj["kind"] = "group_su2";
                break;
        }
        factors.push_back(fj);
    }
    j["factors"] = factors;
    json g = json::array();
    for (const auto& row : sp.gram) {
        json r = json::array();
        for (const auto& e : row) r.push_back(rat_to_json(e));
        g.push_back(r);
    }
    j["gram"] = g;
    json b = json::array();
    for (const auto& e : sp.spec_linear) b.push_back(rat_to_json(e));
    j["spec_linear"] = b;
    json shift = json::array();
    for (const auto& e : sp.rho0_gram_shift) shift.push_back(rat_to_json(e));
    j["rho0_gram_shift"] = shift;
    json df;
    df["scale"] = rat_str(sp.dim_scale);
    json forms = json::array();
    for (const auto& lf : sp.dim_factors) {
        json fj;
        json cs = json::array();
        for (const auto& c : lf.coeffs) cs.push_back(rat_to_json(c));
        fj["coeffs"] = cs;
        fj["constant"] = rat_to_json(lf.constant);
        forms.push_back(fj);
    }
    df["forms"] = forms;
    j["dim_factors"] = df;
    j["period"] = rat_to_json(sp.period);
    return j.dump(2);
}

SpaceDescriptor resolve_space(const std::string& name_or_path) {
    try {
        return catalog_get(name_or_path);
    } catch (const CatalogError&) {
        std::ifstream probe(name_or_path);
        if (probe.good()) return space_from_json_file(name_or_path);
        throw;
    }
}

// --- weight arithmetic ----------------------------------------------------------

bool weight_valid(const SpaceDescriptor& sp, const Weight& w) {
    if (static_cast<int>(w.size()) != sp.rank) return false;
    for (int i = 0; i < sp.rank; ++i)
        if (!sp.coord_free[i] && w[i] < 0) return false;
    return true;
}

void require_valid_weight(const SpaceDescriptor& sp, const Weight& w) {
    if (static_cast<int>(w.size()) != sp.rank)
        throw DomainError("weight has " + std::to_string(w.size()) + " coordinates, space '" +
                          sp.name + "' has rank " + std::to_string(sp.rank));
    for (int i = 0; i < sp.rank; ++i)
        if (!sp.coord_free[i] && w[i] < 0)
            throw DomainError("weight coordinate " + std::to_string(i) +
                              " is negative on a sphere/group factor of '" + sp.name + "'");
}

long long dim_weight(const SpaceDescriptor& sp, const Weight& w) {
    require_valid_weight(sp, w);
    Rat v = sp.dim_scale;
    for (const auto& lf : sp.dim_factors) v *= lf.eval(w);
    if (!rat_is_integer(v) || v <= 0)
        throw DomainError("dimension polynomial did not evaluate to a positive integer");
    return rat_num(v).template convert_to<long long>();
}

Rat spec_norm_sq_lattice(const SpaceDescriptor& sp, const Weight& w) {
    Rat v = 0;
    for (int i = 0; i < sp.rank; ++i) {
        if (w[i] == 0) continue;
        for (int j = 0; j < sp.rank; ++j)
            if (w[j] != 0) v += sp.gram[i][j] * w[i] * w[j];
        v += sp.spec_linear[i] * w[i];
    }
    return v;
}

Rat spec_norm_sq(const SpaceDescriptor& sp, const Weight& w) {
    require_valid_weight(sp, w);
    return spec_norm_sq_lattice(sp, w);
}

Rat rho0_norm_sq(const SpaceDescriptor& sp, const Weight& xi) {
    Rat v = 0;
    for (int i = 0; i < sp.rank; ++i) {
        Rat yi = Rat(xi[i]) + sp.rho0[i];
        for (int j = 0; j < sp.rank; ++j) {
            Rat yj = Rat(xi[j]) + sp.rho0[j];
            v += sp.gram[i][j] * yi * yj;
        }
    }
    return v;
}

Rat period(const SpaceDescriptor& sp) { return sp.period; }

// --- enumeration -----------------------------------------------------------------

namespace {

enum class WalkMode { Ball, Shell };

bool gram_is_integer_diagonal(const SpaceDescriptor& sp) {
    for (int i = 0; i < sp.rank; ++i) {
        if (!rat_is_integer(sp.gram[i][i])) return false;
        if (!rat_is_integer(sp.spec_linear[i])) return false;
        for (int j = 0; j < sp.rank; ++j)
            if (j != i && sp.gram[i][j] != 0) return false;
    }
    return true;
}

/**
 * Separable integer walk: per-coordinate value A_i x^2 + B_i x + K_i, total
 * <= C (Ball) or == C (Shell).  clip_nonneg marks coordinates clamped to
 * x >= 0.  The caller must arrange the data so every admissible coordinate
 * contributes >= 0 (true for both uses here: the spec form on clipped
 * coordinates, and the completed square A(x+s)^2 written out with K = A s^2);
 * that is what makes the rem < 0 pruning sound.
 */
void walk_int_diagonal(const std::vector<long long>& A, const std::vector<long long>& B,
                       const std::vector<long long>& K, long long C,
                       const std::vector<bool>& clip_nonneg, WalkMode mode,
                       const std::function<void(const Weight&)>& emit) {
    const int r = static_cast<int>(A.size());
    Weight cur(r, 0);
    std::function<void(int, long long)> rec = [&](int i, long long rem) {
        if (rem < 0) return;
        auto q = [&](long long x) { return A[i] * x * x + B[i] * x + K[i]; };
        if (i == 0 && mode == WalkMode::Shell) {
            // Solve A x^2 + B x + K == rem over the integers.
            // x = (-B ± sqrt(B^2 + 4 A (rem - K))) / (2A)
            long long disc = B[i] * B[i] + 4 * A[i] * (rem - K[i]);
            if (disc < 0) return;
            long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(disc))));
            while (s > 0 && s * s > disc) --s;
            while ((s + 1) * (s + 1) <= disc) ++s;
            if (s * s != disc) return;
            for (long long sign : {+1LL, -1LL}) {
                long long num = -B[i] + sign * s;
                if (num % (2 * A[i]) != 0) continue;
                long long x = num / (2 * A[i]);
                if (clip_nonneg[i] && x < 0) continue;
                if (sign < 0 && s == 0) continue; // avoid duplicate root
                cur[i] = x;
                emit(cur);
            }
            return;
        }
        // Range of x with q(x) <= rem: around the vertex -B/(2A).
        double vtx = -static_cast<double>(B[i]) / (2.0 * static_cast<double>(A[i]));
        double rad = std::sqrt(std::max(0.0, (static_cast<double>(rem - K[i]) +
                                              static_cast<double>(B[i]) * B[i] /
                                                  (4.0 * static_cast<double>(A[i]))) /
                                                 static_cast<double>(A[i])));
        long long lo = static_cast<long long>(std::floor(vtx - rad)) - 2;
        long long hi = static_cast<long long>(std::ceil(vtx + rad)) + 2;
        while (lo <= hi && q(lo) > rem) ++lo;
        while (hi >= lo && q(hi) > rem) --hi;
        if (clip_nonneg[i] && lo < 0) lo = 0;
        for (long long x = lo; x <= hi; ++x) {
            long long rest = rem - q(x);
            if (rest < 0) continue;
            cur[i] = x;
            if (i == 0) {
                emit(cur);
            } else {
                rec(i - 1, rest);
            }
        }
    };
    rec(r - 1, C);
}

/**
 * General rational walk over (x + shift)^T G (x + shift) <= C via LDL^T.
 * Shell mode requires exact equality.
 */
void walk_rat_general(const std::vector<std::vector<Rat>>& G, const std::vector<Rat>& shift,
                      const Rat& C, const std::vector<bool>& clip_nonneg, WalkMode mode,
                      const std::function<void(const Weight&)>& emit) {
    const int r = static_cast<int>(G.size());
    RatLDL l = ldl_decompose(G);
    Weight cur(r, 0);
    std::vector<Rat> y(r, Rat(0)); // y_j = x_j + shift_j for fixed coordinates
    std::function<void(int, Rat)> rec = [&](int i, Rat rem) {
        if (rem < 0) return;
        Rat t = shift[i];
        for (int j = i + 1; j < r; ++j) t += l.U[i][j] * y[j];
        Rat B = rem / l.D[i]; // (x_i + t)^2 <= B
        double c_d = rat_to_double(t);
        double s_d = std::sqrt(std::max(0.0, rat_to_double(B)));
        long long lo = static_cast<long long>(std::floor(-c_d - s_d)) - 2;
        long long hi = static_cast<long long>(std::ceil(-c_d + s_d)) + 2;
        auto val = [&](long long x) {
            Rat u = Rat(x) + t;
            return u * u;
        };
        while (lo <= hi && val(lo) > B) ++lo;
        while (hi >= lo && val(hi) > B) --hi;
        if (clip_nonneg[i] && lo < 0) lo = 0;
        for (long long x = lo; x <= hi; ++x) {
            Rat contrib = l.D[i] * val(x);
            Rat rest = rem - contrib;
            if (rest < 0) continue;
            cur[i] = x;
            y[i] = Rat(x) + shift[i];
            if (i == 0) {
                if (mode == WalkMode::Shell && rest != 0) continue;
                emit(cur);
            } else {
                rec(i - 1, rest);
            }
        }
    };
    rec(r - 1, C);
}

/**
 * Enumerate lattice points with the SPEC form bounded:
 * lo_sq (<= or <) lambda^T G lambda + b.lambda (< or <=) hi_sq.
 * dominant == true clips sphere/group coordinates at 0.
 */
std::vector<Weight> enumerate_spec(const SpaceDescriptor& sp, const Rat& lo_sq, const Rat& hi_sq,
                                   bool lo_strict, bool hi_strict, bool dominant,
                                   bool shell_exact) {
    std::vector<Weight> out;
    std::vector<bool> clip(sp.rank, false);
    if (dominant)
        for (int i = 0; i < sp.rank; ++i) clip[i] = !sp.coord_free[i];

    auto passes = [&](const Rat& s) {
        if (lo_strict ? !(s > lo_sq) : !(s >= lo_sq)) return false;
        if (hi_strict ? !(s < hi_sq) : !(s <= hi_sq)) return false;
        return true;
    };

    if (gram_is_integer_diagonal(sp)) {
        std::vector<long long> A(sp.rank), B(sp.rank), K(sp.rank, 0);
        for (int i = 0; i < sp.rank; ++i) {
            A[i] = rat_num(sp.gram[i][i]).template convert_to<long long>();
            B[i] = rat_num(sp.spec_linear[i]).template convert_to<long long>();
        }
        if (shell_exact) {
            if (!rat_is_integer(hi_sq)) return out; // integral form: non-integer shell empty
            long long n = rat_num(hi_sq).template convert_to<long long>();
            if (n < 0) return out;
            walk_int_diagonal(A, B, K, n, clip, WalkMode::Shell,
                              [&](const Weight& w) { out.push_back(w); });
        } else {
            long long C = rat_floor(hi_sq).template convert_to<long long>();
            if (C < 0) return out;
            walk_int_diagonal(A, B, K, C, clip, WalkMode::Ball, [&](const Weight& w) {
                long long s = 0;
                for (int i = 0; i < sp.rank; ++i) s += A[i] * w[i] * w[i] + B[i] * w[i];
                if (passes(Rat(s))) out.push_back(w);
            });
        }
    } else {
        // Complete the square: spec(x) = (x+h)^T G (x+h) - h^T G h, h = G^{-1} b / 2.
        std::vector<Rat> halfb(sp.rank);
        for (int i = 0; i < sp.rank; ++i) halfb[i] = sp.spec_linear[i] / 2;
        std::vector<Rat> h = rat_solve(sp.gram, halfb);
        Rat hGh = 0;
        for (int i = 0; i < sp.rank; ++i)
            for (int j = 0; j < sp.rank; ++j) hGh += sp.gram[i][j] * h[i] * h[j];
        Rat C = hi_sq + hGh;
        if (C < 0) return out;
        WalkMode mode = shell_exact ? WalkMode::Shell : WalkMode::Ball;
        walk_rat_general(sp.gram, h, C, clip, mode, [&](const Weight& w) {
            Rat s = spec_norm_sq_lattice(sp, w);
            if (shell_exact ? (s == hi_sq) : passes(s)) out.push_back(w);
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<Weight> weights_spec_between(const SpaceDescriptor& sp, const Rat& lo_sq,
                                         const Rat& hi_sq, bool lo_strict, bool hi_strict) {
    return enumerate_spec(sp, lo_sq, hi_sq, lo_strict, hi_strict, /*dominant=*/true,
                          /*shell=*/false);
}

std::vector<Weight> weights_in_band(const SpaceDescriptor& sp, const Rat& N) {
    if (N < 1) throw DomainError("weights_in_band needs N >= 1");
    return weights_spec_between(sp, N * N, 4 * N * N, false, true);
}

std::vector<Weight> weights_in_ball(const SpaceDescriptor& sp, const Rat& R) {
    return weights_spec_between(sp, Rat(0), R * R, false, true);
}

std::vector<Weight> shell_weights(const SpaceDescriptor& sp, const Rat& n) {
    if (n < 0) return {};
    return enumerate_spec(sp, n, n, false, false, /*dominant=*/true, /*shell=*/true);
}

std::vector<Weight> lattice_ball_rho0(const SpaceDescriptor& sp, const Rat& R2) {
    std::vector<Weight> out;
    if (R2 < 0) return out;
    std::vector<bool> clip(sp.rank, false); // free lattice: no dominance clipping
    if (gram_is_integer_diagonal(sp)) {
        // (x + rho0)^T G (x + rho0) expanded per coordinate as
        // g x^2 + 2 g s x + g s^2 with rho0 entries s in {0,1}.
        std::vector<long long> A(sp.rank), B(sp.rank), K(sp.rank);
        for (int i = 0; i < sp.rank; ++i) {
            long long g = rat_num(sp.gram[i][i]).template convert_to<long long>();
            long long s = rat_num(sp.rho0[i]).template convert_to<long long>();
            A[i] = g;
            B[i] = 2 * g * s;
            K[i] = g * s * s;
        }
        long long C = rat_floor(R2).template convert_to<long long>();
        if (C < 0) return out;
        walk_int_diagonal(A, B, K, C, clip, WalkMode::Ball, [&](const Weight& w) {
            if (rho0_norm_sq(sp, w) <= R2) out.push_back(w);
        });
    } else {
        walk_rat_general(sp.gram, sp.rho0, R2, clip, WalkMode::Ball, [&](const Weight& w) {
            if (rho0_norm_sq(sp, w) <= R2) out.push_back(w);
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- geometry --------------------------------------------------------------------

ZonalPoint identity_zonal(const SpaceDescriptor& sp) {
    ZonalPoint z;
    for (const auto& f : sp.factors) {
        if (f.kind == FactorKind::Torus)
            z.f.emplace_back(f.rank, 0.0);
        else
            z.f.push_back({0.0});
    }
    return z;
}

PointOnM identity_point(const SpaceDescriptor& sp) {
    PointOnM p;
    for (const auto& f : sp.factors) {
        if (f.kind == FactorKind::Torus) {
            p.f.emplace_back(f.rank, 0.0);
        } else {
            std::vector<double> v(f.dim + 1, 0.0);
            v[0] = 1.0;
            p.f.push_back(std::move(v));
        }
    }
    return p;
}

PointOnM random_point(const SpaceDescriptor& sp, RngStream& rng) {
    PointOnM p;
    for (const auto& f : sp.factors) {
        if (f.kind == FactorKind::Torus) {
            std::vector<double> v(f.rank);
            for (auto& x : v) x = 2.0 * M_PI * rng.uniform01();
            p.f.push_back(std::move(v));
        } else {
            std::vector<double> v(f.dim + 1);
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (auto& x : v) {
                    x = rng.gaussian();
                    norm2 += x * x;
                }
            } while (norm2 < 1e-12);
            double inv = 1.0 / std::sqrt(norm2);
            for (auto& x : v) x *= inv;
            p.f.push_back(std::move(v));
        }
    }
    return p;
}

ZonalPoint zonal_between(const SpaceDescriptor& sp, const PointOnM& x, const PointOnM& y) {
    ZonalPoint z;
    for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
        const auto& f = sp.factors[fi];
        if (f.kind == FactorKind::Torus) {
            std::vector<double> d(f.rank);
            for (int i = 0; i < f.rank; ++i) {
                double v = std::fmod(x.f[fi][i] - y.f[fi][i], 2.0 * M_PI);
                if (v < 0) v += 2.0 * M_PI;
                d[i] = v;
            }
            z.f.push_back(std::move(d));
        } else {
            double dot = 0.0;
            for (int i = 0; i <= f.dim; ++i) dot += x.f[fi][i] * y.f[fi][i];
            dot = std::max(-1.0, std::min(1.0, dot));
            z.f.push_back({std::acos(dot)});
        }
    }
    return z;
}

void validate_zonal(const SpaceDescriptor& sp, const ZonalPoint& z) {
    if (z.f.size() != sp.factors.size())
        throw DomainError("zonal point factor count does not match space '" + sp.name + "'");
    for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
        const auto& f = sp.factors[fi];
        if (f.kind == FactorKind::Torus) {
            if (static_cast<int>(z.f[fi].size()) != f.rank)
                throw DomainError("torus zonal coordinates have the wrong length");
        } else {
            if (z.f[fi].size() != 1)
                throw DomainError("sphere-like factors take a single polar angle");
            double th = z.f[fi][0];
            if (th < -1e-12 || th > M_PI + 1e-12)
                throw DomainError("polar angle must lie in [0, pi]");
        }
    }
}

} // namespace symstri
