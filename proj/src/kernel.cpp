#include "symstri/kernel.hpp"

#include "symstri/bump.hpp"

#include <cmath>

namespace symstri {

KernelModes kernel_modes(const SpaceDescriptor& sp, const Rat& N) {
    if (N < 1) throw DomainError("kernel_modes needs N >= 1");
    KernelModes km;
    const Rat N2 = N * N;
    const double Nd = rat_to_double(N);
    for (const auto& lam : weights_spec_between(sp, N2 / 4, 4 * N2, false, false)) {
        const Rat s = spec_norm_sq_lattice(sp, lam);
        const double b = bump_phi(std::sqrt(rat_to_double(s)) / Nd);
        if (b == 0.0) continue; // exact zeros at the window endpoints
        km.modes.push_back(lam);
        km.bump.push_back(b);
        km.dlam.push_back(dim_weight(sp, lam));
        km.coeff.push_back(b * static_cast<double>(km.dlam.back()));
        Rat m = sp.period * s;
        km.phase.push_back(rat_num(m).convert_to<long long>());
        km.spec.push_back(s);
    }
    return km;
}

std::complex<double> kernel_value(const SpaceDescriptor& sp, const KernelModes& km,
                                  const Rat& t_frac, const ZonalPoint& z) {
    validate_zonal(sp, z);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < km.modes.size(); ++i) {
        const double ph = rat_to_double(rat_frac(Rat(km.phase[i]) * t_frac));
        const std::complex<double> e = std::polar(1.0, -2.0 * M_PI * ph);
        acc += km.coeff[i] * e * zonal_value(sp, km.modes[i], z);
    }
    return acc;
}

std::complex<double> kernel_value_time(const SpaceDescriptor& sp, const KernelModes& km,
                                       double t, const ZonalPoint& z) {
    validate_zonal(sp, z);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < km.modes.size(); ++i) {
        const std::complex<double> e = std::polar(1.0, -t * rat_to_double(km.spec[i]));
        acc += km.coeff[i] * e * zonal_value(sp, km.modes[i], z);
    }
    return acc;
}

double kernel_parseval_sum(const KernelModes& km) {
    double s = 0.0;
    for (std::size_t i = 0; i < km.modes.size(); ++i)
        s += km.bump[i] * km.bump[i] * static_cast<double>(km.dlam[i]);
    return s;
}

double dispersive_rhs(const SpaceDescriptor& sp, long long N, long long q, const Rat& dist) {
    if (N < 1) throw DomainError("dispersive_rhs needs N >= 1");
    if (q < 1 || q >= N)
        throw DomainError("dispersive_rhs is a major-arc bound: needs 1 <= q < N");
    if (dist < 0) throw DomainError("dispersive_rhs needs dist >= 0");
    const double Nd = static_cast<double>(N);
    const double denom = std::sqrt(static_cast<double>(q)) *
                         (1.0 + Nd * std::sqrt(rat_to_double(dist)));
    return std::pow(Nd, sp.dim) / std::pow(denom, sp.rank);
}

} // namespace symstri
