#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rdmgeo/geometry.hpp"
#include "rdmgeo/hull3.hpp"

namespace rdmgeo::meanfield {

/// Pure single-qubit state direction (a, b, c) on the unit sphere.
struct BlochVector {
    double a, b, c;

    BlochVector(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        if (std::abs(a * a + b * b + c * c - 1.0) > 1e-12)
            throw std::invalid_argument("BlochVector: requires unit norm");
    }

    static BlochVector from_angles(double theta, double phi) {
        const double s = std::sin(theta);
        return BlochVector(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
    }
};

/// Product-state image in the three projection coordinates:
/// expectations factorize, so quadratic terms become squared components.
inline Vec3 extreme_point(Model model, const BlochVector& alpha) {
    if (model == Model::ising) return {alpha.a * alpha.a, alpha.c, alpha.a};
    return {alpha.a * alpha.a, alpha.b * alpha.b, alpha.c};
}

/// Hull of Fibonacci-sampled product-state images.
inline ConvexBody3 limit_body(Model model, std::size_t sample_count) {
    std::vector<Vec3> pts;
    pts.reserve(sample_count);
    for (const auto& d : fibonacci_sphere(sample_count))
        pts.push_back(extreme_point(model, BlochVector(d.x(), d.y(), d.z())));
    return convex_hull_3d(pts, std::string("mean_field(") + model_name(model) + ")");
}

enum class Membership { on_curved_piece, on_ruled_piece_1, on_ruled_piece_2, interior, exterior };

inline const char* membership_name(Membership m) {
    switch (m) {
        case Membership::on_curved_piece: return "on_curved_piece";
        case Membership::on_ruled_piece_1: return "on_ruled_piece_1";
        case Membership::on_ruled_piece_2: return "on_ruled_piece_2";
        case Membership::interior: return "interior";
        default: return "exterior";
    }
}

/// Classifies a point against the closed-form boundary.
/// ising: piece 1 is the sheet x = z^2, piece 2 the sheet x + y^2 = 1.
/// xy: the curved piece is x + y + z^2 = 1; pieces 1 and 2 are the plane
/// areas at x = 0 and y = 0.
inline Membership boundary_membership(Model model, const Vec3& p, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("boundary_membership: tol must be positive");
    if (model == Model::ising) {
        const double lower = p[0] - p[2] * p[2];      // >= 0 inside
        const double upper = 1.0 - p[1] * p[1] - p[0]; // >= 0 inside
        if (lower < -tol || upper < -tol) return Membership::exterior;
        // rim points satisfy both sheet equations; report the cap sheet
        if (std::abs(upper) <= tol) return Membership::on_ruled_piece_2;
        if (std::abs(lower) <= tol) return Membership::on_ruled_piece_1;
        return Membership::interior;
    }
    const double sheet = 1.0 - p[0] - p[1] - p[2] * p[2]; // >= 0 inside
    if (p[0] < -tol || p[1] < -tol || sheet < -tol) return Membership::exterior;
    if (std::abs(sheet) <= tol) return Membership::on_curved_piece;
    if (std::abs(p[0]) <= tol) return Membership::on_ruled_piece_1;
    if (std::abs(p[1]) <= tol) return Membership::on_ruled_piece_2;
    return Membership::interior;
}

/// Supporting hyperplane at a boundary point, normalized so that
/// normal . v >= rhs for every body point, with equality at the anchor.
struct SupportPlane {
    Vec3 normal;
    double rhs;

    double signed_distance(const Vec3& v) const { return normal.dot(v) - rhs; }
};

inline SupportPlane supporting_plane(Model model, const Vec3& p, double tol = 1e-9) {
    const Membership where = boundary_membership(model, p, tol);
    if (where == Membership::interior || where == Membership::exterior)
        throw std::invalid_argument(std::string("supporting_plane: point is ") + membership_name(where));
    if (model == Model::ising) {
        if (where == Membership::on_ruled_piece_1)
            return {Vec3(1.0, 0.0, -2.0 * p[2]), -p[0]}; // x + x0 - 2 z0 z = 0
        return {Vec3(-1.0, -2.0 * p[1], 0.0), p[0] - 2.0}; // x + x0 + 2 y0 y = 2
    }
    if (where == Membership::on_curved_piece)
        return {Vec3(-1.0, -1.0, -2.0 * p[2]), p[0] + p[1] - 2.0}; // x+x0+y+y0+2 z0 z = 2
    if (where == Membership::on_ruled_piece_1) return {Vec3(1.0, 0.0, 0.0), 0.0};
    return {Vec3(0.0, 1.0, 0.0), 0.0};
}

/// Ruling segment through an anchor, t in [0, 1] spanning the full segment.
/// ising piece 1: (x0, y, z0) with y in [-s, s], s = sqrt(1 - z0^2);
/// ising piece 2: (x0, y0, z) with z in [-s, s], s = sqrt(1 - y0^2);
/// xy curved sheet: (x, 1 - x - z0^2, z0) with x in [0, 1 - z0^2].
inline Vec3 ruling_line(Model model, Membership sheet, const Vec3& anchor, double t,
                        double tol = 1e-9) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("ruling_line: t must lie in [0, 1]");
    const Membership where = boundary_membership(model, anchor, tol);
    if (where != sheet)
        throw std::invalid_argument(std::string("ruling_line: anchor classifies as ") +
                                    membership_name(where) + ", not " + membership_name(sheet));
    if (model == Model::ising) {
        if (sheet == Membership::on_ruled_piece_1) {
            const double span = std::sqrt(std::max(0.0, 1.0 - anchor[2] * anchor[2]));
            return {anchor[0], (2.0 * t - 1.0) * span, anchor[2]};
        }
        if (sheet == Membership::on_ruled_piece_2) {
            const double span = std::sqrt(std::max(0.0, 1.0 - anchor[1] * anchor[1]));
            return {anchor[0], anchor[1], (2.0 * t - 1.0) * span};
        }
        throw std::invalid_argument("ruling_line: ising sheets are ruled pieces 1 and 2");
    }
    if (sheet != Membership::on_curved_piece)
        throw std::invalid_argument("ruling_line: xy rulings live on the curved sheet");
    const double cap = 1.0 - anchor[2] * anchor[2];
    const double x = t * cap;
    return {x, 1.0 - x - anchor[2] * anchor[2], anchor[2]};
}

struct SupportMinimum {
    double value;      // min over product states of lambda . extreme_point
    double theta, phi; // minimizing Bloch angles
    Vec3 point;        // minimizing image
};

/// Hartree energy per particle in the limit: direct minimization over the
/// Bloch sphere by dense grid plus golden-section refinement per angle
/// (gradient-free because ruling directions are exactly flat).
inline SupportMinimum support_minimum(Model model, const Vec3& lambda) {
    auto value = [&](double theta, double phi) {
        return lambda.dot(extreme_point(model, BlochVector::from_angles(theta, phi)));
    };
    double best_theta = 0.0, best_phi = 0.0;
    double best = value(0.0, 0.0);
    const int nt = 64, np = 128;
    for (int it = 0; it <= nt; ++it)
        for (int ip = 0; ip < np; ++ip) {
            const double theta = M_PI * it / nt;
            const double phi = 2.0 * M_PI * ip / np;
            const double v = value(theta, phi);
            if (v < best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto golden = [&](auto f, double lo, double hi) {
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        while (hi - lo > 1e-12) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = f(x2);
            }
        }
        return 0.5 * (lo + hi);
    };
    double dt = M_PI / nt, dp = 2.0 * M_PI / np;
    for (int round = 0; round < 4; ++round) {
        best_theta = golden([&](double th) { return value(th, best_phi); },
                            best_theta - dt, best_theta + dt);
        best_phi = golden([&](double ph) { return value(best_theta, ph); },
                          best_phi - dp, best_phi + dp);
        dt *= 0.35;
        dp *= 0.35;
    }
    SupportMinimum out;
    out.theta = best_theta;
    out.phi = best_phi;
    out.point = extreme_point(model, BlochVector::from_angles(best_theta, best_phi));
    out.value = lambda.dot(out.point);
    return out;
}

/// Exact boundary polyline of the limit body's coordinate-plane projection,
/// counterclockwise and closed.
inline std::vector<Vec2> limit_projection(Model model, Plane plane, std::size_t count = 512) {
    if (count < 8) throw std::invalid_argument("limit_projection: need count >= 8");
    std::vector<Vec2> poly;
    auto parabola_region = [&] {
        // region {0 <= u <= 1 - v^2}: parabola arc; the u = 0 chord closes it
        for (std::size_t i = 0; i <= count; ++i) {
            const double v = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count);
            poly.emplace_back(1.0 - v * v, v);
        }
    };
    switch (model) {
        case Model::ising:
            if (plane == Plane::xy) {
                parabola_region(); // 0 <= x <= 1 - y^2
            } else if (plane == Plane::xz) {
                // z^2 <= x <= 1: parabola from z=+1 down to z=-1; x=1 edge closes it
                for (std::size_t i = 0; i <= count; ++i) {
                    const double z = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(count);
                    poly.emplace_back(z * z, z);
                }
            } else {
                // unit disc y^2 + z^2 <= 1
                for (std::size_t i = 0; i < count; ++i) {
                    const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
                    poly.emplace_back(std::cos(a), std::sin(a));
                }
            }
            break;
        case Model::xy:
            if (plane == Plane::xy) {
                poly = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
            } else {
                parabola_region(); // 0 <= x (or y) <= 1 - z^2
            }
            break;
    }
    return poly;
}

} // namespace rdmgeo::meanfield
