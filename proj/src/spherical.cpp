#include "symstri/spherical.hpp"

#include <algorithm>

namespace symstri {

SampledFunction sample_on_rule(const SpaceDescriptor& sp, const QuadratureRule& rule,
                               const std::function<std::complex<double>(const PointOnM&)>& f) {
    (void)sp;
    SampledFunction out;
    out.grid = rule;
    out.values.reserve(rule.points.size());
    for (const auto& p : rule.points) out.values.push_back(f(p));
    return out;
}

std::complex<double> projector_apply(const SpaceDescriptor& sp, const Weight& lam,
                                     const SampledFunction& f, const PointOnM& x) {
    require_valid_weight(sp, lam);
    if (f.values.size() != f.grid.points.size())
        throw DomainError("sampled function and grid sizes differ");
    const double d_lam = static_cast<double>(dim_weight(sp, lam));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < f.grid.points.size(); ++i) {
        ZonalPoint z = zonal_between(sp, x, f.grid.points[i]);
        acc += f.grid.weights[i] * f.values[i] * zonal_value(sp, lam, z);
    }
    return acc * (d_lam / sp.volume);
}

double projector_l2_sq(const SpaceDescriptor& sp, const Weight& lam, const SampledFunction& f) {
    require_valid_weight(sp, lam);
    if (f.values.size() != f.grid.points.size())
        throw DomainError("sampled function and grid sizes differ");
    const double d_lam = static_cast<double>(dim_weight(sp, lam));
    const std::size_t m = f.grid.points.size();
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            ZonalPoint z = zonal_between(sp, f.grid.points[i], f.grid.points[j]);
            acc += f.grid.weights[i] * f.grid.weights[j] * f.values[i] *
                   std::conj(f.values[j]) * zonal_value(sp, lam, z);
        }
    }
    return std::max(0.0, acc.real()) * (d_lam / sp.volume);
}

std::vector<Weight> product_support(const SpaceDescriptor& sp, const Weight& lam,
                                    const Weight& mu) {
    require_valid_weight(sp, lam);
    require_valid_weight(sp, mu);
    const Rat radius_sq = rho0_norm_sq(sp, mu);
    std::vector<Weight> out;
    for (const auto& xi : lattice_ball_rho0(sp, radius_sq)) {
        Weight nu(sp.rank);
        for (int i = 0; i < sp.rank; ++i) nu[i] = lam[i] + xi[i];
        if (weight_valid(sp, nu)) out.push_back(std::move(nu));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace symstri
