#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "rdmgeo/banded.hpp"
#include "rdmgeo/common.hpp"

namespace rdmgeo {

/// Collective operators available as Hamiltonian terms. Linear operators are
/// sums of single-site Paulis, squared ones are two-body.
enum class OperatorKind { jx, jy, jz, jx2, jy2, jz2, identity };

inline bool is_two_body(OperatorKind k) {
    return k == OperatorKind::jx2 || k == OperatorKind::jy2 || k == OperatorKind::jz2;
}

/// Per-term scaling keeping energy per particle bounded: 1 for single-particle
/// terms, 1/N for two-body terms.
inline double scaling_factor(OperatorKind k, long n) {
    return is_two_body(k) ? 1.0 / static_cast<double>(n) : 1.0;
}

inline const char* kind_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::jx: return "Jx";
        case OperatorKind::jy: return "Jy";
        case OperatorKind::jz: return "Jz";
        case OperatorKind::jx2: return "Jx2";
        case OperatorKind::jy2: return "Jy2";
        case OperatorKind::jz2: return "Jz2";
        default: return "I";
    }
}

/// Three Hamiltonian terms with coefficients, H = sum_i lambda_i f_i(N) H_i.
struct HamiltonianSpec {
    std::array<OperatorKind, 3> terms;
    std::array<double, 3> lambda;
    long n_particles;
};

/// Named model: term triple plus the conventional parameter names for lambda.
struct ModelPreset {
    Model id;
    std::array<OperatorKind, 3> terms;
    std::array<const char*, 3> param_names;

    HamiltonianSpec spec(long n, const std::array<double, 3>& lambda) const {
        return HamiltonianSpec{terms, lambda, n};
    }
};

/// Collective operator in the symmetric (Dicke) basis ordered by Jz eigenvalue
/// k = -N, -N+2, ..., N. Pauli normalization: each operator is twice the
/// corresponding spin-N/2 angular momentum component.
inline BandedHermitian build_operator(OperatorKind kind, long n) {
    if (n < 1) throw std::invalid_argument("build_operator: need n >= 1");
    const auto dim = static_cast<std::size_t>(n) + 1;
    const double j = 0.5 * static_cast<double>(n);

    // ladder amplitudes c_i = sqrt(j(j+1) - m(m+1)) with m = i - j
    auto ladder = [&](std::size_t i) {
        const double m = static_cast<double>(i) - j;
        return std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    };

    auto linear = [&](OperatorKind k) {
        BandedHermitian op(dim, k == OperatorKind::jx || k == OperatorKind::jy ? 1 : 0);
        switch (k) {
            case OperatorKind::jz:
                for (std::size_t i = 0; i < dim; ++i)
                    op.bands[0][i] = 2.0 * static_cast<double>(i) - static_cast<double>(n);
                break;
            case OperatorKind::identity:
                for (std::size_t i = 0; i < dim; ++i) op.bands[0][i] = 1.0;
                break;
            case OperatorKind::jx:
                for (std::size_t i = 0; i + 1 < dim; ++i) op.bands[1][i] = ladder(i);
                break;
            case OperatorKind::jy:
                // <m|Jy|m+1> = +i c_m
                for (std::size_t i = 0; i + 1 < dim; ++i) op.bands[1][i] = cplx(0.0, ladder(i));
                break;
            default:
                break;
        }
        op.normalize();
        return op;
    };

    // squares are stored pentadiagonal even when off-bands vanish (Jz^2)
    auto widen = [&](BandedHermitian op) {
        const std::size_t target = std::min<std::size_t>(2, dim - 1);
        while (op.bandwidth < target) {
            op.bands.push_back(std::vector<cplx>(dim - op.bandwidth - 1, cplx(0.0)));
            ++op.bandwidth;
        }
        return op;
    };
    switch (kind) {
        case OperatorKind::jx2: return widen(band_square(linear(OperatorKind::jx)));
        case OperatorKind::jy2: return widen(band_square(linear(OperatorKind::jy)));
        case OperatorKind::jz2: return widen(band_square(linear(OperatorKind::jz)));
        default: return linear(kind);
    }
}

/// H = sum_i lambda_i f_i(N) H_i. Bandwidth is the max over all three terms;
/// the result is complex only when a linear Jy term has nonzero coefficient.
inline BandedHermitian assemble_hamiltonian(const HamiltonianSpec& spec) {
    if (spec.n_particles < 1) throw std::invalid_argument("assemble_hamiltonian: need N >= 1");
    std::size_t bw = 0;
    for (auto t : spec.terms) bw = std::max(bw, is_two_body(t) ? std::size_t{2} : (t == OperatorKind::jz || t == OperatorKind::identity ? std::size_t{0} : std::size_t{1}));
    bw = std::min(bw, static_cast<std::size_t>(spec.n_particles));
    BandedHermitian h(static_cast<std::size_t>(spec.n_particles) + 1, bw);
    for (int i = 0; i < 3; ++i) {
        const double c = spec.lambda[static_cast<std::size_t>(i)] * scaling_factor(spec.terms[static_cast<std::size_t>(i)], spec.n_particles);
        if (c == 0.0) continue;
        add_scaled(h, c, build_operator(spec.terms[static_cast<std::size_t>(i)], spec.n_particles));
    }
    h.normalize();
    return h;
}

/// ising: H = (J/N) Jx^2 + Bz Jz + Bx Jx, lambda = (J, Bz, Bx).
/// xy:    H = (J1/N) Jx^2 + (J2/N) Jy^2 + Bz Jz, lambda = (J1, J2, Bz).
inline ModelPreset model_preset(Model m) {
    if (m == Model::ising)
        return ModelPreset{Model::ising,
                           {OperatorKind::jx2, OperatorKind::jz, OperatorKind::jx},
                           {"J", "Bz", "Bx"}};
    return ModelPreset{Model::xy,
                       {OperatorKind::jx2, OperatorKind::jy2, OperatorKind::jz},
                       {"J1", "J2", "Bz"}};
}

inline ModelPreset model_preset(std::string_view name) {
    if (name == "ising") return model_preset(Model::ising);
    if (name == "xy") return model_preset(Model::xy);
    throw std::invalid_argument("unknown model '" + std::string(name) + "'; valid presets: ising, xy");
}

} // namespace rdmgeo
