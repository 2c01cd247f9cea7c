// ============================================================================
// Space catalog checks.  Every frozen number in here was produced by an
// independent route: harmonic-polynomial counts for sphere dimensions, a
// finite-difference Laplace-Beltrami quotient for the spectral form, and
// exhaustive box scans for every lattice enumeration.
// ============================================================================
#include <doctest.h>

#include "symstri/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <vector>

using namespace symstri;

namespace {

// dim of spherical harmonics of degree n on S^d: C(n+d, d) - C(n+d-2, d)
long long harmonic_count(int d, int n) {
    auto binom = [](long long a, long long b) {
        if (b < 0 || b > a) return 0LL;
        long long v = 1;
        for (long long i = 1; i <= b; ++i) v = v * (a - b + i) / i;
        return v;
    };
    return binom(n + d, d) - binom(n + d - 2, d);
}

std::vector<Weight> box_spec_oracle(const SpaceDescriptor& sp, long long box, const Rat& lo,
                                    const Rat& hi, bool hi_strict = true) {
    std::vector<Weight> out;
    Weight w(sp.rank, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == sp.rank) {
            Rat s = spec_norm_sq_lattice(sp, w);
            if (s >= lo && (hi_strict ? s < hi : s <= hi)) out.push_back(w);
            return;
        }
        long long start = sp.coord_free[i] ? -box : 0;
        for (long long v = start; v <= box; ++v) {
            w[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

Rat dim_poly_value(const SpaceDescriptor& sp, const Weight& w) {
    Rat v = sp.dim_scale;
    for (const auto& lf : sp.dim_factors) v *= lf.eval(w);
    return v;
}

} // namespace

TEST_CASE("catalog names resolve and unknown tokens are reported") {
    CHECK(catalog_get("T2").rank == 2);
    CHECK(catalog_get("T2").dim == 2);
    CHECK(catalog_get("S2").dim == 2);
    CHECK(catalog_get("S5").dim == 5);
    CHECK(catalog_get("SU2").dim == 3);
    CHECK(catalog_get("SU2").rank == 1);

    SpaceDescriptor p1 = catalog_get("T1xS2");
    CHECK(p1.rank == 2);
    CHECK(p1.dim == 3);
    SpaceDescriptor p2 = catalog_get("T1×S2"); // UTF-8 times sign
    CHECK(p2.rank == 2);
    CHECK(p2.dim == 3);
    SpaceDescriptor p3 = catalog_get("S2*SU2");
    CHECK(p3.rank == 2);
    CHECK(p3.dim == 5);
    SpaceDescriptor p4 = catalog_get("S3 x S3");
    CHECK(p4.dim == 6);

    CHECK_THROWS_AS(catalog_get("Q5"), CatalogError);
    CHECK_THROWS_AS(catalog_get("S1"), CatalogError);
    CHECK_THROWS_AS(catalog_get("T0"), CatalogError);
    CHECK_THROWS_AS(catalog_get(""), CatalogError);
    CHECK_THROWS_AS(catalog_get("T2x"), CatalogError);
    try {
        catalog_get("T2xQ9");
        CHECK(false);
    } catch (const CatalogError& e) {
        CHECK(std::string(e.what()).find("Q9") != std::string::npos);
    }
}

TEST_CASE("sphere dimensions match the harmonic-polynomial count") {
    for (int d = 2; d <= 6; ++d) {
        SpaceDescriptor sp = make_sphere(d);
        for (int n = 0; n <= 25; ++n) {
            CHECK(dim_weight(sp, {n}) == harmonic_count(d, n));
        }
    }
    // frozen spot values
    CHECK(dim_weight(make_sphere(2), {2}) == 5);
    CHECK(dim_weight(make_sphere(4), {1}) == 5);
    CHECK(dim_weight(make_sphere(5), {2}) == 20);
}

TEST_CASE("SU(2) dimensions and spectrum") {
    SpaceDescriptor sp = make_su2();
    for (int n = 0; n <= 20; ++n) {
        CHECK(dim_weight(sp, {n}) == (n + 1) * (n + 1));
        CHECK(spec_norm_sq(sp, {n}) == Rat(n * (n + 2)));
    }
    CHECK(dim_weight(sp, {3}) == 16);
}

TEST_CASE("torus dimensions are all 1 and the spectral form is the gram form") {
    SpaceDescriptor t2 = make_torus(2);
    CHECK(dim_weight(t2, {3, 4}) == 1);
    CHECK(dim_weight(t2, {-7, 2}) == 1);
    CHECK(spec_norm_sq(t2, {3, 4}) == Rat(25));
    CHECK(spec_norm_sq(t2, {-3, 4}) == Rat(25));
    CHECK(spec_norm_sq(t2, {0, 0}) == Rat(0));

    SpaceDescriptor t = make_torus_with_gram(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1, 3)}}, "T2/3");
    CHECK(spec_norm_sq(t, {0, 1}) == Rat(1, 3));
    CHECK(spec_norm_sq(t, {2, 3}) == Rat(7));
}

TEST_CASE("sphere spectral form agrees with a numeric Laplace-Beltrami quotient") {
    // On S^2, the zonal eigenfunction of degree 1 is cos(theta); apply the
    // polar Laplacian f'' + cot(theta) f' numerically and read the eigenvalue.
    SpaceDescriptor s2 = make_sphere(2);
    CHECK(spec_norm_sq(s2, {1}) == Rat(2));
    const double h = 1e-3, th = 1.0;
    auto f = [](double x) { return std::cos(x); };
    double lap = (f(th + h) - 2.0 * f(th) + f(th - h)) / (h * h) +
                 (f(th + h) - f(th - h)) / (2.0 * h) / std::tan(th);
    double eig = -lap / f(th);
    CHECK(std::abs(eig - 2.0) < 1e-4);

    for (int n = 0; n <= 50; ++n) CHECK(spec_norm_sq(s2, {n}) == Rat(n * (n + 1)));
}

TEST_CASE("product spaces concatenate coordinates") {
    SpaceDescriptor p = catalog_get("T1xS2");
    CHECK(spec_norm_sq(p, {2, 1}) == Rat(6));
    CHECK(dim_weight(p, {2, 1}) == 3);
    CHECK(p.coord_free[0]);
    CHECK(!p.coord_free[1]);
    CHECK(p.rho0[0] == Rat(0));
    CHECK(p.rho0[1] == Rat(1));

    SpaceDescriptor q = catalog_get("S3xS3");
    for (int m = 0; m <= 10; ++m)
        for (int n = 0; n <= 10; ++n)
            CHECK(dim_weight(q, {m, n}) == (long long)(m + 1) * (m + 1) * (n + 1) * (n + 1));

    SpaceDescriptor r = product_space(make_sphere(2), make_su2());
    CHECK(r.rank == 2);
    CHECK(spec_norm_sq(r, {1, 1}) == Rat(2 + 3));
}

TEST_CASE("weight validation") {
    SpaceDescriptor s2 = make_sphere(2);
    CHECK_THROWS_AS(spec_norm_sq(s2, {-1}), DomainError);
    CHECK_THROWS_AS(dim_weight(s2, {1, 2}), DomainError);
    CHECK(weight_valid(s2, {0}));
    CHECK(!weight_valid(s2, {-2}));
    SpaceDescriptor t1 = make_torus(1);
    CHECK(weight_valid(t1, {-5}));
}

TEST_CASE("periods") {
    CHECK(period(catalog_get("T2")) == Rat(1));
    CHECK(period(catalog_get("S2")) == Rat(1));
    CHECK(period(catalog_get("SU2")) == Rat(1));
    SpaceDescriptor t = make_torus_with_gram(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1, 3)}}, "T2/3");
    CHECK(period(t) == Rat(3));
    CHECK(period(product_space(t, make_sphere(2))) == Rat(3));
    SpaceDescriptor half = make_torus_with_gram(1, {{Rat(1, 2)}}, "T1/2");
    CHECK(period(product_space(half, t)) == Rat(6));

    // period * spec and period * (2 (G l)_j + 2 b_j) are integers: the phase
    // data of every mode is sampled exactly on a grid of spacing 1/period.
    for (const auto& sp :
         {catalog_get("T2"), catalog_get("S4"), catalog_get("SU2xS2"), product_space(t, make_su2())}) {
        CHECK(rat_is_integer(sp.period));
        CHECK(sp.period >= 1);
        for (long long a = 0; a <= 30; a += 5) {
            for (long long b = 0; b <= 30; b += 7) {
                Weight w(sp.rank, 0);
                w[0] = a;
                if (sp.rank > 1) w[sp.rank - 1] = b;
                CHECK(rat_is_integer(sp.period * spec_norm_sq(sp, w)));
                for (int j = 0; j < sp.rank; ++j) {
                    Rat grad = 2 * sp.spec_linear[j];
                    for (int k = 0; k < sp.rank; ++k) grad += 2 * sp.gram[j][k] * w[k];
                    CHECK(rat_is_integer(sp.period * grad));
                }
            }
        }
    }
}

TEST_CASE("band enumeration matches exhaustive box scans") {
    SpaceDescriptor t1 = make_torus(1);
    CHECK(weights_in_band(t1, 2) == std::vector<Weight>{{-3}, {-2}, {2}, {3}});

    SpaceDescriptor s2 = make_sphere(2);
    CHECK(weights_in_band(s2, 2) == std::vector<Weight>{{2}, {3}});

    SpaceDescriptor t2 = make_torus(2);
    auto band = weights_in_band(t2, 2);
    CHECK(band.size() == 36); // shells 4,5,8,9,10,13 of Z^2
    CHECK(band == box_spec_oracle(t2, 10, 4, 16));

    for (int N : {1, 2, 3, 5, 8}) {
        CHECK(weights_in_band(t2, N) == box_spec_oracle(t2, 4 * N + 4, Rat(N * N), Rat(4 * N * N)));
    }

    SpaceDescriptor t = make_torus_with_gram(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1, 3)}}, "T2/3");
    for (int N : {1, 2, 4}) {
        CHECK(weights_in_band(t, N) == box_spec_oracle(t, 8 * N + 4, Rat(N * N), Rat(4 * N * N)));
    }

    SpaceDescriptor mix = catalog_get("S2xSU2");
    for (int N : {1, 2, 3}) {
        CHECK(weights_in_band(mix, N) == box_spec_oracle(mix, 4 * N + 4, Rat(N * N), Rat(4 * N * N)));
    }

    // non-diagonal rational gram
    SpaceDescriptor skew =
        make_torus_with_gram(2, {{Rat(2), Rat(1, 2)}, {Rat(1, 2), Rat(1)}}, "Tskew");
    for (int N : {1, 2, 4}) {
        CHECK(weights_in_band(skew, N) == box_spec_oracle(skew, 8 * N + 8, Rat(N * N), Rat(4 * N * N)));
    }

    CHECK_THROWS_AS(weights_in_band(t2, Rat(1, 2)), DomainError);
}

TEST_CASE("dyadic bands tile the spectrum with no overlap") {
    for (const auto& sp : {catalog_get("T2"), catalog_get("S2")}) {
        std::vector<Weight> all;
        for (int N : {1, 2, 4, 8}) {
            auto b = weights_in_band(sp, N);
            all.insert(all.end(), b.begin(), b.end());
        }
        std::sort(all.begin(), all.end());
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end()); // disjoint
        CHECK(all == weights_spec_between(sp, 1, 256, false, true));
    }
}

TEST_CASE("balls and shells") {
    SpaceDescriptor s2 = make_sphere(2);
    CHECK(weights_in_ball(s2, 3) == std::vector<Weight>{{0}, {1}, {2}});
    CHECK(shell_weights(s2, 6) == std::vector<Weight>{{2}});
    CHECK(shell_weights(s2, 7).empty());

    SpaceDescriptor t2 = make_torus(2);
    auto sh = shell_weights(t2, 25);
    CHECK(sh.size() == 12);
    CHECK(sh == box_spec_oracle(t2, 6, 25, 25, false));
    CHECK(shell_weights(t2, 3).empty());
    CHECK(shell_weights(t2, Rat(1, 2)).empty());

    SpaceDescriptor t = make_torus_with_gram(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1, 3)}}, "T2/3");
    CHECK(shell_weights(t, Rat(4, 3)) == box_spec_oracle(t, 8, Rat(4, 3), Rat(4, 3), false));
    CHECK(!shell_weights(t, Rat(4, 3)).empty()); // (1, 1) etc.
}

TEST_CASE("rho0-shifted free-lattice balls") {
    SpaceDescriptor s2 = make_sphere(2);
    // (xi + 1)^2 <= 6  =>  xi in {-3..1}, no dominance filter on the free walk
    CHECK(lattice_ball_rho0(s2, 6) == std::vector<Weight>{{-3}, {-2}, {-1}, {0}, {1}});

    SpaceDescriptor t2 = make_torus(2);
    // rho0 = 0 on tori: plain ball of radius sqrt(2)
    CHECK(lattice_ball_rho0(t2, 2) ==
          std::vector<Weight>{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}});

    SpaceDescriptor mix = catalog_get("T1xS2");
    auto pts = lattice_ball_rho0(mix, 5);
    // oracle: xi1^2 + (xi2+1)^2 <= 5 over the full integer plane
    std::vector<Weight> oracle;
    for (long long a = -4; a <= 4; ++a)
        for (long long b = -4; b <= 4; ++b)
            if (a * a + (b + 1) * (b + 1) <= 5) oracle.push_back({a, b});
    std::sort(oracle.begin(), oracle.end());
    CHECK(pts == oracle);
    for (const auto& w : pts) CHECK(rho0_norm_sq(mix, w) <= Rat(5));
}

TEST_CASE("dimension polynomial has total degree dim - rank") {
    auto diffs = [](std::vector<Rat> v, int order) {
        for (int o = 0; o < order; ++o) {
            std::vector<Rat> nxt;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) nxt.push_back(v[i + 1] - v[i]);
            v = std::move(nxt);
        }
        return v;
    };
    for (const auto& sp : {catalog_get("S2"), catalog_get("S5"), catalog_get("SU2"),
                           catalog_get("S3xS3"), catalog_get("T1xSU2"), catalog_get("T2")}) {
        const int deg = sp.dim - sp.rank;
        // values along the all-ones direction from (5,...,5)
        std::vector<Rat> vals;
        for (int t = 0; t <= deg + 2; ++t) {
            Weight w(sp.rank, 5 + t);
            vals.push_back(dim_poly_value(sp, w));
            CHECK(dim_poly_value(sp, w) == Rat(dim_weight(sp, w)));
        }
        auto top = diffs(vals, deg + 1); // two entries left, both zero
        for (const auto& v : top) CHECK(v == Rat(0));
        if (deg > 0) {
            auto lead = diffs(vals, deg); // three equal nonzero entries
            CHECK(lead[0] != Rat(0));
            CHECK(lead[0] == lead[1]);
            CHECK(lead[1] == lead[2]);
        }
    }
}

TEST_CASE("every linear factor kills the dimension polynomial at its root") {
    // S4 factors: (n + 3/2)(n + 1)(n + 2) -- the integer roots -1, -2 kill it.
    SpaceDescriptor s4 = catalog_get("S4");
    CHECK(dim_poly_value(s4, {-1}) == Rat(0));
    CHECK(dim_poly_value(s4, {-2}) == Rat(0));
    SpaceDescriptor su2 = catalog_get("SU2");
    CHECK(dim_poly_value(su2, {-1}) == Rat(0));
}

TEST_CASE("descriptor json round-trips") {
    SpaceDescriptor t = make_torus_with_gram(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1, 3)}}, "T2/3");
    SpaceDescriptor sp = product_space(t, catalog_get("S2xSU2"));
    std::string j = space_to_json(sp);
    SpaceDescriptor back = space_from_json_text(j);
    CHECK(back.rank == sp.rank);
    CHECK(back.dim == sp.dim);
    CHECK(back.gram == sp.gram);
    CHECK(back.spec_linear == sp.spec_linear);
    CHECK(back.period == sp.period);
    CHECK(back.dim_scale == sp.dim_scale);
    CHECK(back.name == sp.name);
    for (int n = 0; n <= 6; ++n) {
        Weight w(sp.rank, n);
        CHECK(dim_weight(back, w) == dim_weight(sp, w));
        CHECK(spec_norm_sq(back, w) == spec_norm_sq(sp, w));
    }

    std::string text = R"({
      "name": "custom",
      "factors": [
        {"kind": "torus", "rank": 1, "gram": [["1/4"]]},
        {"kind": "sphere", "dim": 3}
      ]
    })";
    SpaceDescriptor c = space_from_json_text(text);
    CHECK(c.rank == 2);
    CHECK(c.dim == 4);
    CHECK(c.period == Rat(4));
    CHECK(spec_norm_sq(c, {2, 1}) == Rat(1) + Rat(3));

    CHECK_THROWS_AS(space_from_json_text("{}"), CatalogError);
    CHECK_THROWS_AS(space_from_json_text("not json"), CatalogError);
    CHECK_THROWS_AS(space_from_json_text(R"({"factors":[{"kind":"blob"}]})"), CatalogError);

    std::ofstream out("tmp_space_descriptor.json");
    out << text;
    out.close();
    SpaceDescriptor fromfile = resolve_space("tmp_space_descriptor.json");
    CHECK(fromfile.rank == 2);
    CHECK_THROWS_AS(resolve_space("no_such_space_or_file"), CatalogError);
    std::remove("tmp_space_descriptor.json");
}

TEST_CASE("torus gram validation") {
    CHECK_THROWS_AS(make_torus_with_gram(2, {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}, "bad"),
                    DomainError); // indefinite
    CHECK_THROWS_AS(make_torus_with_gram(2, {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}}, "asym"),
                    CatalogError);
    CHECK_THROWS_AS(make_torus_with_gram(2, {{Rat(1)}}, "short"), CatalogError);
}

TEST_CASE("geometry helpers") {
    for (const auto& sp : {catalog_get("T2"), catalog_get("S2"), catalog_get("SU2"),
                           catalog_get("T1xS3")}) {
        ZonalPoint id = identity_zonal(sp);
        validate_zonal(sp, id);
        for (const auto& fz : id.f)
            for (double v : fz) CHECK(v == 0.0);

        RngStream rng(42, 7);
        PointOnM x = random_point(sp, rng);
        PointOnM y = random_point(sp, rng);
        RngStream rng2(42, 7);
        PointOnM x2 = random_point(sp, rng2);
        CHECK(x.f == x2.f); // same seed, same stream, same point

        // unit norms on sphere-like factors
        for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
            if (sp.factors[fi].kind == FactorKind::Torus) continue;
            double n2 = 0;
            for (double v : x.f[fi]) n2 += v * v;
            CHECK(std::abs(n2 - 1.0) < 1e-12);
        }

        ZonalPoint z = zonal_between(sp, x, y);
        validate_zonal(sp, z);
        ZonalPoint self = zonal_between(sp, x, x);
        for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
            if (sp.factors[fi].kind == FactorKind::Torus) continue;
            CHECK(std::abs(self.f[fi][0]) < 1e-6);
        }
        ZonalPoint zid = zonal_between(sp, x, identity_point(sp));
        validate_zonal(sp, zid);
    }
    SpaceDescriptor s2 = catalog_get("S2");
    ZonalPoint bad;
    bad.f = {{1.0, 2.0}};
    CHECK_THROWS_AS(validate_zonal(s2, bad), DomainError);
    ZonalPoint bad2;
    bad2.f = {{4.0}};
    CHECK_THROWS_AS(validate_zonal(s2, bad2), DomainError);
}

TEST_CASE("volumes") {
    CHECK(std::abs(catalog_get("S2").volume - 4.0 * M_PI) < 1e-12);
    CHECK(std::abs(catalog_get("S3").volume - 2.0 * M_PI * M_PI) < 1e-12);
    CHECK(std::abs(catalog_get("SU2").volume - 2.0 * M_PI * M_PI) < 1e-12);
    CHECK(std::abs(catalog_get("T1").volume - 2.0 * M_PI) < 1e-12);
    CHECK(std::abs(catalog_get("T2").volume - 4.0 * M_PI * M_PI) < 1e-12);
    SpaceDescriptor t = make_torus_with_gram(1, {{Rat(1, 4)}}, "T1/4");
    // dual metric: vol = 2 pi / sqrt(1/4) = 4 pi
    CHECK(std::abs(t.volume - 4.0 * M_PI) < 1e-12);
    CHECK(std::abs(catalog_get("T1xS2").volume - 8.0 * M_PI * M_PI) < 1e-10);
}
