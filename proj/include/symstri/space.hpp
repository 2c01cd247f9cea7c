#pragma once
// ============================================================================
// Catalog of compact globally symmetric spaces.
//
// A space is a finite product of factors:
//   - rational torus T^r : weight lattice Z^r, spectral form xi^T G xi with a
//     rational symmetric positive-definite gram G (identity by default),
//     every coordinate ranges over all of Z, d_xi = 1;
//   - round sphere S^d (d >= 2): single dominant coordinate n >= 0,
//     spectral form n(n + d - 1), dimension
//       d_n = (2n + d - 1) (n + d - 2)! / (n! (d-1)!)
//     stored pre-factored as scale 2/(d-1)! times the linear forms
//       (n + (d-1)/2), (n + 1), ..., (n + d - 2);
//   - the group SU(2) (as a symmetric space U x U / diag U): one coordinate
//     n >= 0, spectral form n(n + 2) (the unit round S^3 spectrum),
//     d_n = (n + 1)^2 stored as the two linear factors (n + 1)(n + 1).
//
// Products concatenate coordinates; gram matrices are block diagonal,
// spectral forms and dimensions add/multiply, and the time period
// T/(2 pi) is the lcm of the denominators of all gram and linear data, so
// that every phase e^{-i t |lambda|^2_rho} is T-periodic and the linear
// phases 2(w_j, lambda + 2 rho) are integral multiples of 1/period as well.
//
// All data in this module is exact rational; floating point appears only in
// the geometric helpers (points, distances, volumes) used downstream.
// ============================================================================

#include "symstri/errors.hpp"
#include "symstri/rational.hpp"
#include "symstri/rng.hpp"

#include <string>
#include <vector>

namespace symstri {

/** Weight-lattice coordinates in the fundamental-weight basis. */
using Weight = std::vector<long long>;

enum class FactorKind { Torus, Sphere, Group };

/** A linear form c . lambda + c0 over the full coordinate vector. */
struct LinearForm {
    std::vector<Rat> coeffs;
    Rat constant = 0;

    Rat eval(const Weight& w) const {
        Rat v = constant;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) v += coeffs[i] * w[static_cast<long long>(i)];
        return v;
    }
};

struct SpaceFactor {
    FactorKind kind = FactorKind::Torus;
    int rank = 1;  // number of weight coordinates
    int dim  = 1;  // manifold dimension
    std::vector<std::vector<Rat>> gram;  // rank x rank, SPD
    std::vector<Rat> spec_linear;        // rank entries
    std::string label;

    // dimension polynomial data local to this factor (empty for tori)
    Rat local_dim_scale = 1;
    std::vector<LinearForm> local_dim_factors;  // coeffs of length `rank`
    double volume = 0.0;
};

struct SpaceDescriptor {
    std::string name;
    int rank = 0;
    int dim  = 0;
    std::vector<SpaceFactor> factors;
    std::vector<int> factor_offset;  // first coordinate index of each factor

    // Aggregates over the full coordinate vector.
    std::vector<std::vector<Rat>> gram;  // block diagonal, rank x rank
    std::vector<Rat> spec_linear;        // b with |lambda|^2_rho = l^T G l + b.l
    std::vector<Rat> rho0;               // 1 on sphere/group coords, 0 on torus coords
    std::vector<Rat> rho0_gram_shift;    // 2 G rho0
    Rat dim_scale = 1;
    std::vector<LinearForm> dim_factors; // d - r forms, zero-padded coeffs
    Rat period = 1;                      // T / (2 pi)
    std::vector<bool> coord_free;        // true where the coordinate ranges over Z
    double volume = 0.0;                 // geometric volume of M
};

// --- catalog -----------------------------------------------------------------

/** "T{r}", "S{d}" (d >= 2), "SU2", or products joined with "×", "x", or "*". */
SpaceDescriptor catalog_get(const std::string& name);

SpaceDescriptor make_torus(int r);
SpaceDescriptor make_torus_with_gram(int r, const std::vector<std::vector<Rat>>& gram,
                                     const std::string& name);
SpaceDescriptor make_sphere(int d);
SpaceDescriptor make_su2();
SpaceDescriptor product_space(const SpaceDescriptor& a, const SpaceDescriptor& b);
SpaceDescriptor make_space(const std::vector<SpaceFactor>& factors, const std::string& name);

// --- descriptor files --------------------------------------------------------

SpaceDescriptor space_from_json_text(const std::string& text);
SpaceDescriptor space_from_json_file(const std::string& path);
std::string space_to_json(const SpaceDescriptor& sp);

/** Catalog name, or a path to a descriptor file if the name lookup fails. */
SpaceDescriptor resolve_space(const std::string& name_or_path);

// --- weights -----------------------------------------------------------------

/** Per-coordinate domain check: torus coords are free, others must be >= 0. */
bool weight_valid(const SpaceDescriptor& sp, const Weight& w);
void require_valid_weight(const SpaceDescriptor& sp, const Weight& w);

/** Exact d_lambda (throws DomainError on invalid weights). */
long long dim_weight(const SpaceDescriptor& sp, const Weight& w);

/** Exact |lambda|^2_rho = lambda^T G lambda + b . lambda (validated). */
Rat spec_norm_sq(const SpaceDescriptor& sp, const Weight& w);

/** Same quadratic form on an arbitrary lattice vector (no domain check). */
Rat spec_norm_sq_lattice(const SpaceDescriptor& sp, const Weight& w);

/** Exact (xi + rho0)^T G (xi + rho0) for any lattice vector xi. */
Rat rho0_norm_sq(const SpaceDescriptor& sp, const Weight& xi);

/** The stored T/(2 pi). */
Rat period(const SpaceDescriptor& sp);

/** Valid weights with lo_sq (<=|<) spec < | <= hi_sq; lex-ordered. */
std::vector<Weight> weights_spec_between(const SpaceDescriptor& sp, const Rat& lo_sq,
                                         const Rat& hi_sq, bool lo_strict, bool hi_strict);

/** Valid weights with N <= |lambda|_rho < 2N; lex-ordered, complete. */
std::vector<Weight> weights_in_band(const SpaceDescriptor& sp, const Rat& N);

/** Valid weights with |lambda|_rho < R. */
std::vector<Weight> weights_in_ball(const SpaceDescriptor& sp, const Rat& R);

/** Valid weights with spec_norm_sq == n exactly. */
std::vector<Weight> shell_weights(const SpaceDescriptor& sp, const Rat& n);

/** Free lattice vectors xi with |xi + rho0|^2_G <= R2 (no dominance filter). */
std::vector<Weight> lattice_ball_rho0(const SpaceDescriptor& sp, const Rat& R2);

// --- geometry (floating point) ----------------------------------------------

/**
 * Zonal coordinates of a point relative to identity: per factor, tori carry
 * an angle vector in [0, 2 pi)^r and sphere-like factors a polar angle
 * theta in [0, pi].
 */
struct ZonalPoint {
    std::vector<std::vector<double>> f;
};

/**
 * A point on M: tori as angle vectors, S^d as unit vectors in R^{d+1},
 * SU(2) as unit quaternions (unit vectors in R^4).
 */
struct PointOnM {
    std::vector<std::vector<double>> f;
};

ZonalPoint identity_zonal(const SpaceDescriptor& sp);
PointOnM identity_point(const SpaceDescriptor& sp);
PointOnM random_point(const SpaceDescriptor& sp, RngStream& rng);

/** Zonal coordinates of the "difference" of x and y (arguments to phi). */
ZonalPoint zonal_between(const SpaceDescriptor& sp, const PointOnM& x, const PointOnM& y);

void validate_zonal(const SpaceDescriptor& sp, const ZonalPoint& z);

} // namespace symstri
