#include "symstri/bandstate.hpp"

#include <algorithm>
#include <cmath>

namespace symstri {

std::complex<double> band_state_eval(const SpaceDescriptor& sp, const BandState& st,
                                     const PointOnM& x) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& a : st.atoms) {
        ZonalPoint z = zonal_between(sp, x, a.center);
        acc += a.coeff * static_cast<double>(dim_weight(sp, a.lam)) * zonal_value(sp, a.lam, z);
    }
    return acc;
}

double band_state_l2_sq(const SpaceDescriptor& sp, const BandState& st) {
    // group atoms by mode: cross-mode blocks are orthogonal
    std::map<Weight, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < st.atoms.size(); ++i) blocks[st.atoms[i].lam].push_back(i);
    double total = 0.0;
    for (const auto& [lam, idx] : blocks) {
        const double d = static_cast<double>(dim_weight(sp, lam));
        std::complex<double> block(0.0, 0.0);
        for (std::size_t a : idx) {
            for (std::size_t b : idx) {
                ZonalPoint z = zonal_between(sp, st.atoms[b].center, st.atoms[a].center);
                block += st.atoms[a].coeff * std::conj(st.atoms[b].coeff) *
                         zonal_value(sp, lam, z);
            }
        }
        total += d * block.real();
    }
    return sp.volume * std::max(0.0, total);
}

void band_state_normalize(const SpaceDescriptor& sp, BandState& st) {
    double n2 = band_state_l2_sq(sp, st);
    if (n2 <= 0.0) throw DomainError("cannot normalize the zero band state");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : st.atoms) a.coeff *= inv;
}

BandState random_band_state(const SpaceDescriptor& sp, const Rat& N, long long n_atoms,
                            RngStream& rng) {
    std::vector<Weight> band = weights_in_band(sp, N);
    if (band.empty())
        throw DomainError("random_band_state: the band [N, 2N) holds no modes at N = " +
                          rat_str(N));
    if (n_atoms <= 0) n_atoms = 3 * static_cast<long long>(band.size());
    BandState st;
    st.atoms.reserve(static_cast<std::size_t>(n_atoms));
    for (long long i = 0; i < n_atoms; ++i) {
        BandAtom a;
        a.lam = band[rng.uniform_int(static_cast<long long>(band.size()))];
        a.center = random_point(sp, rng);
        a.coeff = rng.cgaussian();
        st.atoms.push_back(std::move(a));
    }
    band_state_normalize(sp, st);
    return st;
}

BandState coherent_probe_state(const SpaceDescriptor& sp, const Rat& N, const PointOnM& center) {
    std::vector<Weight> band = weights_in_band(sp, N);
    if (band.empty())
        throw DomainError("coherent_probe_state: the band [N, 2N) holds no modes at N = " +
                          rat_str(N));
    double dsum = 0.0;
    for (const auto& lam : band) dsum += static_cast<double>(dim_weight(sp, lam));
    const double c = 1.0 / std::sqrt(sp.volume * dsum);
    BandState st;
    st.atoms.reserve(band.size());
    for (const auto& lam : band) {
        BandAtom a;
        a.lam = lam;
        a.center = center;
        a.coeff = c;
        st.atoms.push_back(std::move(a));
    }
    return st;
}

BandState random_shell_state(const SpaceDescriptor& sp, const Rat& shell_n, RngStream& rng) {
    std::vector<Weight> shell = shell_weights(sp, shell_n);
    if (shell.empty())
        throw DomainError("random_shell_state: the shell spec == " + rat_str(shell_n) +
                          " is empty");
    BandState st;
    st.atoms.reserve(shell.size());
    PointOnM id = identity_point(sp);
    for (const auto& lam : shell) {
        BandAtom a;
        a.lam = lam;
        a.center = id;
        a.coeff = rng.cgaussian();
        st.atoms.push_back(std::move(a));
    }
    band_state_normalize(sp, st);
    return st;
}

BandState coherent_shell_probe(const SpaceDescriptor& sp, const Rat& shell_n) {
    std::vector<Weight> shell = shell_weights(sp, shell_n);
    if (shell.empty())
        throw DomainError("coherent_shell_probe: the shell spec == " + rat_str(shell_n) +
                          " is empty");
    double dsum = 0.0;
    for (const auto& lam : shell) dsum += static_cast<double>(dim_weight(sp, lam));
    const double c = 1.0 / std::sqrt(sp.volume * dsum);
    BandState st;
    st.atoms.reserve(shell.size());
    PointOnM id = identity_point(sp);
    for (const auto& lam : shell) {
        BandAtom a;
        a.lam = lam;
        a.center = id;
        a.coeff = c;
        st.atoms.push_back(std::move(a));
    }
    return st;
}

std::map<Weight, std::complex<double>> torus_mode_coefficients(const SpaceDescriptor& sp,
                                                               const BandState& st) {
    for (const auto& f : sp.factors)
        if (f.kind != FactorKind::Torus)
            throw DomainError("torus_mode_coefficients is defined on pure tori only");
    std::map<Weight, std::complex<double>> A;
    for (const auto& a : st.atoms) {
        double phase = 0.0;
        int off = 0;
        for (std::size_t fi = 0; fi < sp.factors.size(); ++fi) {
            for (int i = 0; i < sp.factors[fi].rank; ++i)
                phase += static_cast<double>(a.lam[off + i]) * a.center.f[fi][i];
            off += sp.factors[fi].rank;
        }
        A[a.lam] += a.coeff * std::polar(1.0, -phase);
    }
    return A;
}

} // namespace symstri
