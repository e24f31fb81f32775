#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "rdmgeo/common.hpp"
#include "rdmgeo/spinops.hpp"

namespace rdmgeo::oracle {

inline constexpr long max_brute_force_n = 12;

namespace detail {

/// Matrix-free action of a collective operator on a full 2^n state vector.
/// Bit i set means site i is |1> with Z|1> = -|1>.
inline void apply_full(OperatorKind kind, long n, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    const auto size = in.size();
    switch (kind) {
        case OperatorKind::identity:
            out = in;
            return;
        case OperatorKind::jz:
            out.resize(size);
            for (Eigen::Index b = 0; b < size; ++b)
                out[b] = static_cast<double>(n - 2 * std::popcount(static_cast<unsigned>(b))) * in[b];
            return;
        case OperatorKind::jx:
            out.setZero(size);
            for (long i = 0; i < n; ++i) {
                const Eigen::Index mask = Eigen::Index{1} << i;
                for (Eigen::Index b = 0; b < size; ++b) out[b ^ mask] += in[b];
            }
            return;
        case OperatorKind::jy:
            out.setZero(size);
            for (long i = 0; i < n; ++i) {
                const Eigen::Index mask = Eigen::Index{1} << i;
                for (Eigen::Index b = 0; b < size; ++b) {
                    const bool down = (b & mask) != 0;
                    out[b ^ mask] += (down ? cplx(0.0, -1.0) : cplx(0.0, 1.0)) * in[b];
                }
            }
            return;
        default: {
            OperatorKind lin = kind == OperatorKind::jx2   ? OperatorKind::jx
                               : kind == OperatorKind::jy2 ? OperatorKind::jy
                                                           : OperatorKind::jz;
            Eigen::VectorXcd tmp;
            apply_full(lin, n, in, tmp);
            apply_full(lin, n, tmp, out);
            return;
        }
    }
}

inline void apply_hamiltonian_full(const HamiltonianSpec& spec, const Eigen::VectorXcd& in,
                                   Eigen::VectorXcd& out) {
    out.setZero(in.size());
    Eigen::VectorXcd term;
    for (int i = 0; i < 3; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double c = spec.lambda[u] * scaling_factor(spec.terms[u], spec.n_particles);
        if (c == 0.0) continue;
        apply_full(spec.terms[u], spec.n_particles, in, term);
        out += c * term;
    }
}

/// Orthonormal Dicke vectors in the full space, index p has Jz eigenvalue
/// k = 2p - n (p = n - popcount).
inline std::vector<Eigen::VectorXcd> dicke_basis(long n) {
    const Eigen::Index size = Eigen::Index{1} << n;
    std::vector<Eigen::VectorXcd> basis(static_cast<std::size_t>(n) + 1);
    std::vector<double> counts(static_cast<std::size_t>(n) + 1, 0.0);
    for (Eigen::Index b = 0; b < size; ++b)
        counts[static_cast<std::size_t>(n) - static_cast<std::size_t>(std::popcount(static_cast<unsigned>(b)))] += 1.0;
    for (std::size_t p = 0; p <= static_cast<std::size_t>(n); ++p) basis[p] = Eigen::VectorXcd::Zero(size);
    for (Eigen::Index b = 0; b < size; ++b) {
        const std::size_t p = static_cast<std::size_t>(n) - static_cast<std::size_t>(std::popcount(static_cast<unsigned>(b)));
        basis[p][b] = 1.0 / std::sqrt(counts[p]);
    }
    return basis;
}

/// Cyclic Jacobi for a dense Hermitian matrix; ascending eigenvalues.
/// Self-contained so the oracle route shares no numerics with the pipeline.
inline void jacobi_hermitian(Eigen::MatrixXcd a, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
    const Eigen::Index n = a.rows();
    vectors = Eigen::MatrixXcd::Identity(n, n);
    const double scale = std::max(1.0, a.norm());
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) < 1e-15 * scale) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const cplx phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;          // applied to column q
                const cplx sm = s * std::conj(phase);
                for (Eigen::Index r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - sm * arq;
                    a(r, q) = sp * arp + c * arq;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - sp * aqr;
                    a(q, r) = sm * apr + c * aqr;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const cplx vrp = vectors(r, p), vrq = vectors(r, q);
                    vectors(r, p) = c * vrp - sm * vrq;
                    vectors(r, q) = sp * vrp + c * vrq;
                }
            }
        }
    }
    values.resize(n);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index l, Eigen::Index r) { return a(l, l).real() < a(r, r).real(); });
    Eigen::MatrixXcd sorted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        values[i] = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
        sorted.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
    }
    vectors = std::move(sorted);
}

} // namespace detail

struct BruteForceResult {
    double e0 = 0.0;
    Vec3 coords = Vec3::Zero();
    int degeneracy = 1;
    std::vector<double> spectrum;        // all N+1 symmetric-sector levels
    double closure_residual = 0.0;       // ||(I-P) H P|| column-wise max
};

/// Ground data from the explicit 2^N construction projected onto the
/// symmetric subspace. Independent of the banded pipeline end to end.
inline BruteForceResult brute_force_ground(const ModelPreset& preset, const std::array<double, 3>& lambda,
                                           long n) {
    if (n < 1) throw std::invalid_argument("brute_force_ground: need n >= 1");
    if (n > max_brute_force_n)
        throw std::invalid_argument("brute_force_ground: n > 12 would need > 4096-dim dense work");
    const HamiltonianSpec spec = preset.spec(n, lambda);
    const auto basis = detail::dicke_basis(n);
    const auto dim = static_cast<Eigen::Index>(n) + 1;

    Eigen::MatrixXcd h_sym(dim, dim);
    double closure = 0.0;
    for (Eigen::Index q = 0; q < dim; ++q) {
        Eigen::VectorXcd w;
        detail::apply_hamiltonian_full(spec, basis[static_cast<std::size_t>(q)], w);
        Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(w.size());
        for (Eigen::Index p = 0; p < dim; ++p) {
            const cplx c = basis[static_cast<std::size_t>(p)].dot(w);
            h_sym(p, q) = c;
            proj += c * basis[static_cast<std::size_t>(p)];
        }
        closure = std::max(closure, (w - proj).norm());
    }

    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
    detail::jacobi_hermitian(h_sym, values, vectors);

    BruteForceResult out;
    out.e0 = values[0];
    out.closure_residual = closure;
    out.spectrum.assign(values.data(), values.data() + values.size());
    const double tol_deg = 1e-8 * std::max(1.0, std::abs(out.e0));
    out.degeneracy = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (values[i] - values[0] <= tol_deg) ++out.degeneracy;

    // lift the ground vector and take expectations with the full-space operators
    Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (Eigen::Index p = 0; p < dim; ++p) ground += vectors(p, 0) * basis[static_cast<std::size_t>(p)];
    Eigen::VectorXcd tmp;
    for (int i = 0; i < 3; ++i) {
        const auto u = static_cast<std::size_t>(i);
        detail::apply_full(spec.terms[u], n, ground, tmp);
        out.coords[i] = scaling_factor(spec.terms[u], n) / static_cast<double>(n) * ground.dot(tmp).real();
    }
    return out;
}

/// E_k = (J/N) k^2 over k = -N, -N+2, ..., N; ascending.
inline std::vector<double> analytic_ising_zero_field(double j, long n) {
    std::vector<double> e;
    for (long k = -n; k <= n; k += 2) e.push_back(j / static_cast<double>(n) * static_cast<double>(k * k));
    std::sort(e.begin(), e.end());
    return e;
}

/// E_k = (J/N)(k + N Bx / 2J)^2 - N Bx^2 / 4J; ascending. Requires J != 0.
inline std::vector<double> analytic_ising_bx(double j, double bx, long n) {
    if (j == 0.0) throw std::invalid_argument("analytic_ising_bx: J must be nonzero");
    std::vector<double> e;
    const double shift = static_cast<double>(n) * bx / (2.0 * j);
    const double offset = static_cast<double>(n) * bx * bx / (4.0 * j);
    for (long k = -n; k <= n; k += 2) {
        const double x = static_cast<double>(k) + shift;
        e.push_back(j / static_cast<double>(n) * x * x - offset);
    }
    std::sort(e.begin(), e.end());
    return e;
}

/// E_k = (J1/N)(N(N+2) - k^2); ascending.
inline std::vector<double> analytic_xy_equal(double j1, long n) {
    std::vector<double> e;
    const double casimir = static_cast<double>(n) * static_cast<double>(n + 2);
    for (long k = -n; k <= n; k += 2)
        e.push_back(j1 / static_cast<double>(n) * (casimir - static_cast<double>(k * k)));
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace rdmgeo::oracle
