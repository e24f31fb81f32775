#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rdmgeo/eigensolve.hpp"
#include "rdmgeo/geometry.hpp"
#include "rdmgeo/spinops.hpp"
#include "rdmgeo/threads.hpp"

namespace rdmgeo::sweep {

struct DirectionGrid {
    enum class Scheme { fibonacci, latlong, great_circle };
    Scheme scheme = Scheme::fibonacci;
    Plane plane = Plane::xy; // great-circle grids only
    std::vector<Vec3> directions;
};

inline DirectionGrid fibonacci_grid(std::size_t count) {
    if (count == 0) throw std::invalid_argument("fibonacci_grid: count must be positive");
    DirectionGrid g;
    g.scheme = DirectionGrid::Scheme::fibonacci;
    g.directions = fibonacci_sphere(count);
    return g;
}

/// Latitude rings away from the poles so directions stay pairwise distinct.
inline DirectionGrid latlong_grid(std::size_t count) {
    if (count == 0) throw std::invalid_argument("latlong_grid: count must be positive");
    DirectionGrid g;
    g.scheme = DirectionGrid::Scheme::latlong;
    const auto rows = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(count) / 2.0))));
    const auto cols = (count + rows - 1) / rows;
    for (std::size_t r = 0; r < rows; ++r) {
        const double theta = M_PI * (static_cast<double>(r) + 0.5) / static_cast<double>(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            const double phi = 2.0 * M_PI * static_cast<double>(c) / static_cast<double>(cols);
            g.directions.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                      std::cos(theta));
        }
    }
    return g;
}

/// Unit circle of directions inside a coordinate plane.
inline DirectionGrid great_circle_grid(Plane plane, std::size_t count) {
    if (count == 0) throw std::invalid_argument("great_circle_grid: count must be positive");
    DirectionGrid g;
    g.scheme = DirectionGrid::Scheme::great_circle;
    g.plane = plane;
    const auto [u, v] = plane_axes(plane);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
        Vec3 d = Vec3::Zero();
        d[u] = std::cos(a);
        d[v] = std::sin(a);
        g.directions.push_back(d);
    }
    return g;
}

/// Keeps directions with sign * d[axis] >= 0 (e.g. the Bz <= 0 half-sphere).
inline DirectionGrid restrict_halfspace(DirectionGrid g, int axis, int sign) {
    if (axis < 0 || axis > 2 || sign == 0)
        throw std::invalid_argument("restrict_halfspace: axis in 0..2, sign nonzero");
    std::vector<Vec3> kept;
    for (const auto& d : g.directions)
        if (static_cast<double>(sign) * d[axis] >= 0.0) kept.push_back(d);
    g.directions = std::move(kept);
    return g;
}

/// Exposed boundary point of the projected convex set in direction lambda.
struct BoundaryPoint {
    Vec3 lambda = Vec3::Zero();
    long n_particles = 0;
    Vec3 coords = Vec3::Zero();        // centroid of the exposed face
    double energy_per_particle = 0.0;  // E0 / N, the support offset
    double gap01 = 0.0;
    double gap12 = 0.0;
    int degeneracy = 1;
    std::vector<Vec3> face_vertices;   // singleton when nondegenerate
};

struct SweepOptions {
    int m_min = 3;             // eigenpair floor per solve
    double tol_residual = 1e-9;
    double tol_deg = -1.0;     // auto
    int secondary_count = 64;  // face-sampling directions under degeneracy
    unsigned threads = 0;      // 0: RDMGEO_THREADS or hardware concurrency
};

/// (f_i(N)/N) <state|H_i|state> for the three terms of the template.
inline Vec3 observable_coords(const ModelPreset& preset, long n, const Eigen::VectorXcd& state) {
    if (state.size() != n + 1)
        throw std::invalid_argument("observable_coords: state dimension must be N+1");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto op = build_operator(preset.terms[u], n);
        out[i] = scaling_factor(preset.terms[u], n) / static_cast<double>(n) * op.expectation(state);
    }
    return out;
}

/// Extreme points of the joint numerical range of the three scaled observables
/// restricted to a degenerate ground space: for sampled directions u, the top
/// eigenvector of u0 A + u1 B + u2 C exposes one face vertex.
inline std::vector<Vec3> resolve_exposed_face(const Eigen::MatrixXcd& ground_vectors,
                                              const ModelPreset& preset, long n, int secondary_count) {
    const auto d = ground_vectors.cols();
    if (d < 2) throw std::invalid_argument("resolve_exposed_face: need a degenerate space (d >= 2)");
    if (d > 64) throw std::invalid_argument("resolve_exposed_face: face dimension above cap 64");
    if (secondary_count < 8) throw std::invalid_argument("resolve_exposed_face: need >= 8 directions");

    std::array<Eigen::MatrixXcd, 3> obs;
    for (int i = 0; i < 3; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto op = build_operator(preset.terms[u], n);
        Eigen::MatrixXcd w(ground_vectors.rows(), d);
        Eigen::VectorXcd col, out;
        for (Eigen::Index c = 0; c < d; ++c) {
            col = ground_vectors.col(c);
            op.matvec(col, out);
            w.col(c) = out;
        }
        Eigen::MatrixXcd a = ground_vectors.adjoint() * w *
                             (scaling_factor(preset.terms[u], n) / static_cast<double>(n));
        obs[u] = ((a + a.adjoint()) * 0.5).eval();
    }

    std::vector<Vec3> found;
    for (const auto& u : fibonacci_sphere(static_cast<std::size_t>(secondary_count))) {
        const Eigen::MatrixXcd m = u[0] * obs[0] + u[1] * obs[1] + u[2] * obs[2];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        const Eigen::VectorXcd top = es.eigenvectors().col(d - 1);
        Vec3 p;
        for (int i = 0; i < 3; ++i)
            p[i] = top.dot(obs[static_cast<std::size_t>(i)] * top).real();
        bool fresh = true;
        for (const auto& q : found)
            if ((p - q).norm() < 1e-7) {
                fresh = false;
                break;
            }
        if (fresh) found.push_back(p);
    }
    return found;
}

/// Solve in direction lambda and resolve the exposed face. The eigenpair count
/// grows until the ground cluster is strictly inside the returned slice.
inline BoundaryPoint boundary_point(const ModelPreset& preset, long n, Vec3 lambda,
                                    const SweepOptions& opts = {}) {
    const double norm = lambda.norm();
    if (norm <= 0.0) throw std::invalid_argument("boundary_point: lambda must be nonzero");
    lambda /= norm;

    const auto h = assemble_hamiltonian(preset.spec(n, {lambda[0], lambda[1], lambda[2]}));
    const auto dim = static_cast<int>(h.dim);
    SolveOptions solve_opts;
    solve_opts.tol_deg = opts.tol_deg;
    int m = std::min(dim, std::max(3, opts.m_min));
    GroundSolution g;
    for (;;) {
        g = lowest_eigenpairs(h, m, opts.tol_residual, solve_opts);
        if (g.degeneracy < m || m == dim) break;
        m = std::min(dim, 2 * m); // ground cluster may extend past the slice
        if (m > 256)
            throw solver_error("boundary_point: ground-space dimension beyond face cap", 0.0);
    }

    BoundaryPoint bp;
    bp.lambda = lambda;
    bp.n_particles = n;
    bp.energy_per_particle = g.energies[0] / static_cast<double>(n);
    bp.gap01 = g.gap01;
    bp.gap12 = g.gap12;
    bp.degeneracy = g.degeneracy;
    if (g.degeneracy == 1) {
        bp.coords = observable_coords(preset, n, g.vectors.col(0));
        bp.face_vertices = {bp.coords};
    } else {
        bp.face_vertices =
            resolve_exposed_face(g.vectors.leftCols(g.degeneracy), preset, n, opts.secondary_count);
        bp.coords = Vec3::Zero();
        for (const auto& v : bp.face_vertices) bp.coords += v;
        bp.coords /= static_cast<double>(bp.face_vertices.size());
    }
    return bp;
}

struct SweepRecord {
    std::optional<BoundaryPoint> point;
    std::string error; // set when the direction failed
};

/// One record per grid direction, in grid order; failures are recorded
/// per-direction instead of aborting the sweep.
inline std::vector<SweepRecord> trace_boundary(const ModelPreset& preset, long n,
                                               const DirectionGrid& grid,
                                               const SweepOptions& opts = {}) {
    if (grid.directions.empty()) throw std::invalid_argument("trace_boundary: empty grid");
    std::vector<SweepRecord> records(grid.directions.size());
    parallel_for(grid.directions.size(), opts.threads, [&](std::size_t i) {
        try {
            records[i].point = boundary_point(preset, n, grid.directions[i], opts);
        } catch (const std::exception& e) {
            records[i].error = e.what();
        }
    });
    return records;
}

inline std::vector<BoundaryPoint> collect_points(const std::vector<SweepRecord>& records) {
    std::vector<BoundaryPoint> out;
    out.reserve(records.size());
    for (const auto& r : records)
        if (r.point) out.push_back(*r.point);
    return out;
}

struct Projection2D {
    Plane plane = Plane::xy;
    std::vector<Vec2> points;
    std::vector<Vec2> hull; // counterclockwise polyline
    bool degenerate = false;
};

inline Projection2D project_2d(const std::vector<BoundaryPoint>& points, Plane plane) {
    if (points.empty()) throw std::invalid_argument("project_2d: empty input");
    Projection2D out;
    out.plane = plane;
    const auto [u, v] = plane_axes(plane);
    out.points.reserve(points.size());
    for (const auto& p : points) out.points.emplace_back(p.coords[u], p.coords[v]);
    auto hull = convex_hull_2d(out.points);
    out.hull = std::move(hull.polyline);
    out.degenerate = hull.degenerate;
    return out;
}

/// Two-qubit reduced density matrix of the permutation-symmetric state,
/// assembled from collective expectations in the Pauli basis.
struct TwoRDM {
    Eigen::Matrix4cd matrix;
};

inline TwoRDM build_two_rdm(long n, const Eigen::VectorXcd& state) {
    if (n < 2) throw std::invalid_argument("build_two_rdm: need N >= 2");
    if (state.size() != n + 1)
        throw std::invalid_argument("build_two_rdm: state dimension must be N+1");
    const double nn = static_cast<double>(n);
    const double pairs = nn * (nn - 1.0);

    std::array<BandedHermitian, 3> ops{build_operator(OperatorKind::jx, n),
                                       build_operator(OperatorKind::jy, n),
                                       build_operator(OperatorKind::jz, n)};
    std::array<Eigen::VectorXcd, 3> applied;
    for (int a = 0; a < 3; ++a) ops[static_cast<std::size_t>(a)].matvec(state, applied[static_cast<std::size_t>(a)]);

    std::array<double, 3> single{};
    Eigen::Matrix3d pair = Eigen::Matrix3d::Zero();
    for (int a = 0; a < 3; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        single[ua] = state.dot(applied[ua]).real() / nn;
        for (int b = a; b < 3; ++b) {
            const auto ub = static_cast<std::size_t>(b);
            // <{Ja,Jb}>/2 = Re <Ja psi|Jb psi>; subtract N tr(AB)/2 = N delta_ab
            const double sym = applied[ua].dot(applied[ub]).real();
            const double val = (sym - (a == b ? nn : 0.0)) / pairs;
            pair(a, b) = val;
            pair(b, a) = val;
        }
    }

    std::array<Eigen::Matrix2cd, 4> pauli;
    pauli[0] = Eigen::Matrix2cd::Identity();
    pauli[1] << 0, 1, 1, 0;
    pauli[2] << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    pauli[3] << 1, 0, 0, -1;
    auto kron = [](const Eigen::Matrix2cd& l, const Eigen::Matrix2cd& r) {
        Eigen::Matrix4cd out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = l(i, j) * r;
        return out;
    };

    TwoRDM rho;
    rho.matrix = 0.25 * kron(pauli[0], pauli[0]);
    for (int a = 0; a < 3; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        rho.matrix += 0.25 * single[ua] * (kron(pauli[ua + 1], pauli[0]) + kron(pauli[0], pauli[ua + 1]));
        for (int b = 0; b < 3; ++b)
            rho.matrix += 0.25 * pair(a, b) * kron(pauli[ua + 1], pauli[static_cast<std::size_t>(b) + 1]);
    }
    return rho;
}

} // namespace rdmgeo::sweep
