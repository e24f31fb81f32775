#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rdmgeo/common.hpp"

namespace rdmgeo {

/// Hermitian matrix stored by diagonals. bands[d] holds the d-th
/// superdiagonal, entry (i, i+d) at index i; subdiagonals are implied by
/// conjugation. The main diagonal is kept exactly real.
struct BandedHermitian {
    std::size_t dim = 0;
    std::size_t bandwidth = 0;
    bool is_real = true;
    std::vector<std::vector<cplx>> bands; // bands[d].size() == dim - d

    BandedHermitian() = default;
    BandedHermitian(std::size_t n, std::size_t bw) : dim(n), bandwidth(bw) {
        bands.resize(bw + 1);
        for (std::size_t d = 0; d <= bw; ++d) bands[d].assign(n - d, cplx(0.0, 0.0));
    }

    cplx entry(std::size_t i, std::size_t j) const {
        if (i <= j) {
            std::size_t d = j - i;
            return d <= bandwidth ? bands[d][i] : cplx(0.0);
        }
        std::size_t d = i - j;
        return d <= bandwidth ? std::conj(bands[d][j]) : cplx(0.0);
    }

    /// Zeroes main-diagonal imaginary parts and refreshes the realness flag.
    void normalize() {
        for (auto& v : bands[0]) v.imag(0.0);
        is_real = true;
        for (const auto& band : bands)
            for (const auto& v : band)
                if (v.imag() != 0.0) { is_real = false; return; }
    }

    /// Max absolute row sum; upper bound on the spectral radius.
    double inf_norm() const {
        double best = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double s = std::abs(bands[0][i]);
            for (std::size_t d = 1; d <= bandwidth; ++d) {
                if (i + d < dim) s += std::abs(bands[d][i]);
                if (i >= d) s += std::abs(bands[d][i - d]);
            }
            best = std::max(best, s);
        }
        return best;
    }

    double max_abs_entry() const {
        double best = 0.0;
        for (const auto& band : bands)
            for (const auto& v : band) best = std::max(best, std::abs(v));
        return best;
    }

    /// y = H x (complex input).
    void matvec(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
        const auto n = static_cast<Eigen::Index>(dim);
        y.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            cplx acc = bands[0][static_cast<std::size_t>(i)].real() * x[i];
            for (std::size_t d = 1; d <= bandwidth; ++d) {
                const auto di = static_cast<Eigen::Index>(d);
                if (i + di < n) acc += bands[d][static_cast<std::size_t>(i)] * x[i + di];
                if (i >= di) acc += std::conj(bands[d][static_cast<std::size_t>(i - di)]) * x[i - di];
            }
            y[i] = acc;
        }
    }

    /// y = H x (real input; requires is_real).
    void matvec(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        const auto n = static_cast<Eigen::Index>(dim);
        y.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double acc = bands[0][static_cast<std::size_t>(i)].real() * x[i];
            for (std::size_t d = 1; d <= bandwidth; ++d) {
                const auto di = static_cast<Eigen::Index>(d);
                if (i + di < n) acc += bands[d][static_cast<std::size_t>(i)].real() * x[i + di];
                if (i >= di) acc += bands[d][static_cast<std::size_t>(i - di)].real() * x[i - di];
            }
            y[i] = acc;
        }
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const {
        Eigen::VectorXcd y;
        matvec(x, y);
        return y;
    }

    /// <v|H|v>; real by Hermiticity.
    double expectation(const Eigen::VectorXcd& v) const {
        Eigen::VectorXcd y;
        matvec(v, y);
        return v.dot(y).real();
    }

    Eigen::MatrixXcd to_dense() const {
        const auto n = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = std::max<Eigen::Index>(0, i - static_cast<Eigen::Index>(bandwidth));
                 j <= std::min(n - 1, i + static_cast<Eigen::Index>(bandwidth)); ++j)
                m(i, j) = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return m;
    }

    /// Dense real view; requires is_real.
    Eigen::MatrixXd to_dense_real() const {
        const auto n = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = std::max<Eigen::Index>(0, i - static_cast<Eigen::Index>(bandwidth));
                 j <= std::min(n - 1, i + static_cast<Eigen::Index>(bandwidth)); ++j)
                m(i, j) = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).real();
        return m;
    }
};

/// acc += c * h, widening acc's bandwidth as needed. c real keeps Hermiticity.
inline void add_scaled(BandedHermitian& acc, double c, const BandedHermitian& h) {
    if (h.bandwidth > acc.bandwidth) {
        acc.bands.resize(h.bandwidth + 1);
        for (std::size_t d = acc.bandwidth + 1; d <= h.bandwidth; ++d)
            acc.bands[d].assign(acc.dim - d, cplx(0.0));
        acc.bandwidth = h.bandwidth;
    }
    for (std::size_t d = 0; d <= h.bandwidth; ++d)
        for (std::size_t i = 0; i < h.bands[d].size(); ++i) acc.bands[d][i] += c * h.bands[d][i];
}

/// H^2 for Hermitian banded H; result bandwidth doubles.
inline BandedHermitian band_square(const BandedHermitian& h) {
    const std::size_t n = h.dim;
    const std::size_t bw = h.bandwidth;
    BandedHermitian out(n, std::min(2 * bw, n > 0 ? n - 1 : 0));
    for (std::size_t d = 0; d <= out.bandwidth; ++d) {
        for (std::size_t i = 0; i + d < n; ++i) {
            const std::size_t j = i + d;
            const std::size_t lo = std::max(i >= bw ? i - bw : 0, j >= bw ? j - bw : 0);
            const std::size_t hi = std::min({n - 1, i + bw, j + bw});
            cplx acc(0.0);
            for (std::size_t l = lo; l <= hi; ++l) acc += h.entry(i, l) * h.entry(l, j);
            out.bands[d][i] = acc;
        }
    }
    out.normalize();
    return out;
}

} // namespace rdmgeo
