#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rdmgeo/banded.hpp"
#include "rdmgeo/common.hpp"

namespace rdmgeo {

/// Largest matrix order solved densely; larger problems go through the
/// block-Lanczos path.
inline constexpr std::size_t dense_cutoff = 2001;

enum class SolveStrategy { automatic, dense, iterative };

struct SolveOptions {
    SolveStrategy strategy = SolveStrategy::automatic;
    double tol_deg = -1.0;          // < 0: 1e-8 * max(1, |E0|)
    std::uint64_t seed = 0x9d2c5680u; // start-block seed for the iterative path
    std::size_t max_krylov = 600;   // Krylov dimension cap (vectors)
    int block = 0;                  // 0: max(4, m + 2)
};

/// Lowest slice of the spectrum with eigenvectors and gap/degeneracy data.
struct GroundSolution {
    Eigen::VectorXd energies;  // ascending, size m
    Eigen::MatrixXcd vectors;  // dim x m, orthonormal
    double gap01 = 0.0;        // E1 - E0 (0 when m < 2)
    double gap12 = 0.0;        // E2 - E1 (0 when m < 3)
    int degeneracy = 1;        // energies within tol_deg of E0
    double tol_deg = 0.0;
};

namespace detail {

inline GroundSolution finalize_solution(Eigen::VectorXd energies, Eigen::MatrixXcd vectors,
                                        double tol_deg_opt) {
    GroundSolution g;
    g.energies = std::move(energies);
    g.vectors = std::move(vectors);
    const auto m = g.energies.size();
    g.gap01 = m >= 2 ? g.energies[1] - g.energies[0] : 0.0;
    g.gap12 = m >= 3 ? g.energies[2] - g.energies[1] : 0.0;
    g.tol_deg = tol_deg_opt > 0.0 ? tol_deg_opt : 1e-8 * std::max(1.0, std::abs(g.energies[0]));
    g.degeneracy = 0;
    for (Eigen::Index i = 0; i < m; ++i)
        if (g.energies[i] - g.energies[0] <= g.tol_deg) ++g.degeneracy;
    return g;
}

template <typename Scalar>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;
    static double random_entry(std::uint64_t& state) { return uniform_pm1(state); }
    static Eigen::MatrixXcd to_complex(const Matrix& m) { return m.cast<cplx>(); }
};

template <>
struct ScalarOps<cplx> {
    using Matrix = Eigen::MatrixXcd;
    using Vector = Eigen::VectorXcd;
    static cplx random_entry(std::uint64_t& state) {
        const double re = uniform_pm1(state);
        return {re, uniform_pm1(state)};
    }
    static Eigen::MatrixXcd to_complex(const Matrix& m) { return m; }
};

/// Block Lanczos with full reorthogonalization. Returns the m lowest Ritz
/// pairs once their residuals drop below tol * scale. Blocks shrink near the
/// end of the space; rank-deficient residual blocks are re-seeded inside the
/// orthogonal complement so degenerate clusters are still resolved.
template <typename Scalar>
GroundSolution lanczos_lowest(const BandedHermitian& h, int m, double tol_residual,
                              const SolveOptions& opts) {
    using Ops = ScalarOps<Scalar>;
    using Matrix = typename Ops::Matrix;
    using Vector = typename Ops::Vector;

    const auto n = static_cast<Eigen::Index>(h.dim);
    const double scale = std::max(h.inf_norm(), 1e-300);
    const Eigen::Index b = std::min<Eigen::Index>(
        n, std::max<Eigen::Index>(opts.block > 0 ? opts.block : 0, std::max(4, m + 2)));
    const Eigen::Index max_dim =
        std::min<Eigen::Index>(n, std::max<Eigen::Index>(static_cast<Eigen::Index>(opts.max_krylov), b));

    std::uint64_t rng = opts.seed;
    Matrix basis(n, max_dim + b);
    Matrix tmat = Matrix::Zero(max_dim + b, max_dim + b);

    auto random_block = [&](Eigen::Index cols) {
        Matrix block(n, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < n; ++r) block(r, c) = Ops::random_entry(rng);
        return block;
    };

    Eigen::Index cur_w = b;
    {
        Matrix start = random_block(cur_w);
        Eigen::HouseholderQR<Matrix> qr(start);
        basis.leftCols(cur_w) = qr.householderQ() * Matrix::Identity(n, cur_w);
    }
    Eigen::Index built = cur_w;
    Matrix prev_b; // B_j, shape (w_j x w_{j-1})
    double best_residual = std::numeric_limits<double>::infinity();

    const int check_interval = std::max<int>(1, static_cast<int>(32 / b));
    int steps_since_check = check_interval; // check on the first opportunity

    for (;;) {
        const Eigen::Index off = built - cur_w;
        const auto q_j = basis.middleCols(off, cur_w);
        Matrix w(n, cur_w);
        {
            Vector col(n), out(n);
            for (Eigen::Index c = 0; c < cur_w; ++c) {
                col = q_j.col(c);
                h.matvec(col, out);
                w.col(c) = out;
            }
        }
        if (off > 0) {
            const Eigen::Index pw = prev_b.cols();
            w.noalias() -= basis.middleCols(off - pw, pw) * prev_b.adjoint();
        }
        Matrix a_j = q_j.adjoint() * w;
        a_j = ((a_j + a_j.adjoint()) * 0.5).eval();
        w.noalias() -= q_j * a_j;
        for (int pass = 0; pass < 2; ++pass) {
            Matrix coeff = basis.leftCols(built).adjoint() * w;
            w.noalias() -= basis.leftCols(built) * coeff;
        }
        tmat.block(off, off, cur_w, cur_w) = a_j;

        const Eigen::Index room = std::min<Eigen::Index>(b, std::min(n, max_dim) - built);
        const bool last_chance = room == 0;
        if (built >= m && (++steps_since_check >= check_interval || last_chance)) {
            steps_since_check = 0;
            Eigen::SelfAdjointEigenSolver<Matrix> es(tmat.topLeftCorner(built, built));
            double worst = 0.0;
            for (int k = 0; k < m; ++k) {
                const auto s = es.eigenvectors().col(k).tail(cur_w);
                worst = std::max(worst, (w * s).norm());
            }
            best_residual = std::min(best_residual, worst);
            const bool converged = worst <= tol_residual * scale || built >= n;
            if (converged || last_chance) {
                if (!converged)
                    throw solver_error("lanczos: Krylov budget exhausted before convergence",
                                       best_residual / scale);
                Eigen::VectorXd energies = es.eigenvalues().head(m);
                Matrix vectors(n, m);
                for (int k = 0; k < m; ++k) {
                    vectors.col(k) = basis.leftCols(built) * es.eigenvectors().col(k);
                    vectors.col(k) /= vectors.col(k).norm();
                }
                return finalize_solution(std::move(energies), Ops::to_complex(vectors), opts.tol_deg);
            }
        }
        if (last_chance)
            throw solver_error("lanczos: Krylov budget exhausted before convergence",
                               best_residual / scale);

        // next block from a column-pivoted QR; pad dead directions with fresh
        // vectors from the orthogonal complement
        Eigen::ColPivHouseholderQR<Matrix> qr(w);
        Matrix q_full = qr.householderQ() * Matrix::Identity(n, cur_w);
        Matrix r_pivoted = Matrix::Zero(cur_w, cur_w);
        r_pivoted = qr.matrixR().topRows(cur_w).template triangularView<Eigen::Upper>();
        Eigen::Index rank = 0; // pivoted diagonal is non-increasing in magnitude
        while (rank < std::min(room, cur_w) && std::abs(r_pivoted(rank, rank)) > 1e-13 * scale) ++rank;
        Matrix r_full = r_pivoted * qr.colsPermutation().transpose(); // W = Q_thin * r_full

        const Eigen::Index w_next = room; // pad up to `room`
        Matrix q_next(n, w_next);
        Matrix b_next = Matrix::Zero(w_next, cur_w);
        q_next.leftCols(rank) = q_full.leftCols(rank);
        b_next.topRows(rank) = r_full.topRows(rank);
        for (Eigen::Index c = rank; c < w_next; ++c) {
            Vector fresh(n);
            double nrm = 0.0;
            for (int attempt = 0; attempt < 3 && nrm < 1e-8; ++attempt) {
                fresh = random_block(1).col(0);
                for (int pass = 0; pass < 2; ++pass) {
                    fresh -= basis.leftCols(built) * (basis.leftCols(built).adjoint() * fresh).eval();
                    if (c > 0) fresh -= q_next.leftCols(c) * (q_next.leftCols(c).adjoint() * fresh).eval();
                }
                nrm = fresh.norm();
            }
            if (nrm < 1e-8) { // complement exhausted; shrink the block
                q_next.conservativeResize(Eigen::NoChange, c);
                b_next.conservativeResize(c, Eigen::NoChange);
                break;
            }
            q_next.col(c) = fresh / nrm;
        }
        if (q_next.cols() == 0)
            throw solver_error("lanczos: search space exhausted", best_residual / scale);

        tmat.block(built, off, q_next.cols(), cur_w) = b_next;
        tmat.block(off, built, cur_w, q_next.cols()) = b_next.adjoint();
        basis.middleCols(built, q_next.cols()) = q_next;
        built += q_next.cols();
        prev_b = std::move(b_next);
        cur_w = prev_b.rows();
    }
}

} // namespace detail

/// m lowest eigenpairs. Dense solve for dim <= dense_cutoff, block Lanczos
/// with full reorthogonalization above; override with opts.strategy.
inline GroundSolution lowest_eigenpairs(const BandedHermitian& h, int m, double tol_residual = 1e-9,
                                        const SolveOptions& opts = {}) {
    if (m < 1 || static_cast<std::size_t>(m) > h.dim)
        throw std::invalid_argument("lowest_eigenpairs: need 1 <= m <= dim");
    if (!(tol_residual > 0.0) || tol_residual > 1e-4)
        throw std::invalid_argument("lowest_eigenpairs: tol_residual must lie in (0, 1e-4]");

    SolveStrategy strat = opts.strategy;
    if (strat == SolveStrategy::automatic)
        strat = h.dim <= dense_cutoff ? SolveStrategy::dense : SolveStrategy::iterative;

    GroundSolution g;
    if (strat == SolveStrategy::dense) {
        if (h.is_real) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense_real());
            g = detail::finalize_solution(es.eigenvalues().head(m),
                                          es.eigenvectors().leftCols(m).cast<cplx>(), opts.tol_deg);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
            g = detail::finalize_solution(es.eigenvalues().head(m), es.eigenvectors().leftCols(m),
                                          opts.tol_deg);
        }
    } else {
        g = h.is_real ? detail::lanczos_lowest<double>(h, m, tol_residual, opts)
                      : detail::lanczos_lowest<cplx>(h, m, tol_residual, opts);
    }

    // residual contract, checked for every returned pair
    const double scale = std::max(1.0, h.inf_norm());
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXcd v = g.vectors.col(k);
        worst = std::max(worst, (h.apply(v) - g.energies[k] * v).norm());
    }
    if (worst > std::max(tol_residual, 1e-11) * scale)
        throw solver_error("lowest_eigenpairs: residual above tolerance", worst / scale);
    return g;
}

/// All eigenvalues, ascending. Dense path only.
inline Eigen::VectorXd spectrum_full(const BandedHermitian& h) {
    if (h.dim > dense_cutoff)
        throw std::invalid_argument("spectrum_full: dim above dense cutoff; use lowest_eigenpairs");
    if (h.is_real) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense_real(), Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

} // namespace rdmgeo
