#include "symstri/quadrature.hpp"

#include <cmath>

namespace symstri {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw DomainError("gauss_legendre needs n >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

PolarRule polar_rule(int d, int degree) {
    if (d < 2) throw DomainError("polar_rule needs d >= 2");
    if (degree < 0) throw DomainError("polar_rule needs degree >= 0");
    PolarRule out;
    if (d % 2 == 0) {
        // fold the polynomial (1-x^2)^{(d-2)/2} into Gauss-Legendre weights
        const int m = (d - 2) / 2;
        const int n = (degree + d - 1 + 1) / 2; // 2n-1 >= degree + d - 2
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        for (int k = 0; k < n; ++k) {
            out.theta.push_back(std::acos(x[k]));
            out.weight.push_back(w[k] * std::pow(1.0 - x[k] * x[k], m));
        }
    } else {
        // Chebyshev second kind absorbs sqrt(1-x^2); fold the rest
        const int m = (d - 3) / 2;
        const int n = std::max(1, (degree + d - 2 + 1) / 2); // 2n-1 >= degree + d - 3
        for (int k = 1; k <= n; ++k) {
            double ang = k * M_PI / (n + 1);
            double x = std::cos(ang);
            double w = M_PI / (n + 1) * std::sin(ang) * std::sin(ang);
            out.theta.push_back(ang);
            out.weight.push_back(w * std::pow(1.0 - x * x, m));
        }
    }
    return out;
}

namespace {

struct LocalGrid {
    std::vector<std::vector<double>> coords; // per factor-point coordinates
    std::vector<double> weights;             // sum = factor volume
};

/** Points on the unit S^d with weights summing to vol(S^d). */
LocalGrid sphere_grid(int d, int degree) {
    LocalGrid g;
    if (d == 1) {
        int m = std::max(1, degree + 1);
        for (int k = 0; k < m; ++k) {
            double a = 2.0 * M_PI * k / m;
            g.coords.push_back({std::cos(a), std::sin(a)});
            g.weights.push_back(2.0 * M_PI / m);
        }
        return g;
    }
    PolarRule pr = polar_rule(d, degree);
    LocalGrid sub = sphere_grid(d - 1, degree);
    for (std::size_t i = 0; i < pr.theta.size(); ++i) {
        double c = std::cos(pr.theta[i]), s = std::sin(pr.theta[i]);
        for (std::size_t j = 0; j < sub.coords.size(); ++j) {
            std::vector<double> p;
            p.reserve(d + 1);
            p.push_back(c);
            for (double v : sub.coords[j]) p.push_back(s * v);
            g.coords.push_back(std::move(p));
            g.weights.push_back(pr.weight[i] * sub.weights[j]);
        }
    }
    return g;
}

LocalGrid torus_grid(const SpaceFactor& f, int degree) {
    LocalGrid g;
    const int m = std::max(1, degree + 1);
    const int r = f.rank;
    std::vector<int> idx(r, 0);
    const double cellw = f.volume / std::pow(static_cast<double>(m), r);
    while (true) {
        std::vector<double> p(r);
        for (int i = 0; i < r; ++i) p[i] = 2.0 * M_PI * idx[i] / m;
        g.coords.push_back(std::move(p));
        g.weights.push_back(cellw);
        int i = 0;
        while (i < r && ++idx[i] == m) idx[i++] = 0;
        if (i == r) break;
    }
    return g;
}

} // namespace

QuadratureRule product_quadrature(const SpaceDescriptor& sp, int degree) {
    std::vector<LocalGrid> grids;
    double total = 1.0;
    for (const auto& f : sp.factors) {
        grids.push_back(f.kind == FactorKind::Torus ? torus_grid(f, degree)
                                                    : sphere_grid(f.dim, degree));
        total *= static_cast<double>(grids.back().coords.size());
        if (total > 2e7)
            throw ResolutionError("product quadrature would need " + std::to_string(total) +
                                  " points; lower the degree or use sampling");
    }
    QuadratureRule rule;
    std::vector<std::size_t> idx(grids.size(), 0);
    while (true) {
        PointOnM p;
        double w = 1.0;
        for (std::size_t fi = 0; fi < grids.size(); ++fi) {
            p.f.push_back(grids[fi].coords[idx[fi]]);
            w *= grids[fi].weights[idx[fi]];
        }
        rule.points.push_back(std::move(p));
        rule.weights.push_back(w);
        std::size_t i = 0;
        while (i < grids.size() && ++idx[i] == grids[i].coords.size()) idx[i++] = 0;
        if (i == grids.size()) break;
    }
    return rule;
}

} // namespace symstri
