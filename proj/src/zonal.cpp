#include "symstri/zonal.hpp"

#include <cmath>

namespace symstri {

namespace {
void check_ultra_args(int d, long long n, double x) {
    if (d < 2) throw DomainError("ultraspherical family needs d >= 2");
    if (n < 0) throw DomainError("ultraspherical degree must be >= 0");
    if (std::fabs(x) > 1.0 + 1e-9)
        throw DomainError("ultraspherical argument must lie in [-1, 1]");
}

std::complex<double> ipow(std::complex<double> z, long long n) {
    std::complex<double> r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}
} // namespace

std::vector<double> ultraspherical_column(int d, long long nmax, double x) {
    check_ultra_args(d, nmax, x);
    x = std::max(-1.0, std::min(1.0, x));
    std::vector<double> p(static_cast<std::size_t>(nmax) + 1);
    const double nu = (d - 1) / 2.0;
    p[0] = 1.0;
    if (nmax >= 1) p[1] = x;
    for (long long k = 2; k <= nmax; ++k) {
        p[k] = (2.0 * x * (k + nu - 1.0) * p[k - 1] - (k - 1.0) * p[k - 2]) /
               (k + 2.0 * nu - 1.0);
    }
    return p;
}

double ultraspherical_norm(int d, long long n, double x) {
    return ultraspherical_column(d, n, x)[static_cast<std::size_t>(n)];
}

std::complex<double> zonal_value(const SpaceDescriptor& sp, const Weight& lam,
                                 const ZonalPoint& z) {
    require_valid_weight(sp, lam);
    validate_zonal(sp, z);
    std::complex<double> v(1.0, 0.0);
    for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
        const auto& f = sp.factors[fi];
        const int off = sp.factor_offset[fi];
        if (f.kind == FactorKind::Torus) {
            double phase = 0.0;
            for (int i = 0; i < f.rank; ++i)
                phase += static_cast<double>(lam[off + i]) * z.f[fi][i];
            v *= std::complex<double>(std::cos(phase), std::sin(phase));
        } else {
            v *= ultraspherical_norm(f.dim, lam[off], std::cos(z.f[fi][0]));
        }
    }
    return v;
}

LaplaceResult phi_laplace_integral(long long n, double theta, long long quad_points) {
    if (n < 0) throw DomainError("phi_laplace_integral needs n >= 0");
    if (quad_points < 1) throw DomainError("phi_laplace_integral needs quad_points >= 1");
    LaplaceResult out;
    out.precision_warning = quad_points < 4 * (n + 1);
    const double a = std::cos(2.0 * theta);
    const double b = std::sin(2.0 * theta);
    std::complex<double> acc(0.0, 0.0);
    for (long long j = 0; j < quad_points; ++j) {
        double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(quad_points);
        std::complex<double> base(a, b * std::cos(2.0 * t));
        acc += ipow(base, n);
    }
    out.value = acc / static_cast<double>(quad_points);
    return out;
}

} // namespace symstri
