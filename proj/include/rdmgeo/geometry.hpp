#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rdmgeo/common.hpp"

namespace rdmgeo {

/// Near-uniform unit vectors from the Fibonacci lattice; deterministic.
inline std::vector<Vec3> fibonacci_sphere(std::size_t count) {
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<Vec3> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * (static_cast<double>(i) + 0.5)) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return pts;
}

struct Hull2D {
    std::vector<Vec2> polyline; // counterclockwise, closed implicitly
    bool degenerate = false;    // fewer than 3 distinct points or collinear
};

/// Monotone-chain convex hull, counterclockwise output.
inline Hull2D convex_hull_2d(std::vector<Vec2> pts) {
    Hull2D out;
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
                  return a.x() == b.x() && a.y() == b.y();
              }),
              pts.end());
    const std::size_t n = pts.size();
    if (n == 0) {
        out.degenerate = true;
        return out;
    }
    if (n < 3) {
        out.polyline = pts;
        out.degenerate = true;
        return out;
    }
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    out.polyline = std::move(hull);
    out.degenerate = out.polyline.size() < 3;
    return out;
}

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

inline double point_polyline_distance(const Vec2& p, const std::vector<Vec2>& poly, bool closed) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return (p - poly[0]).norm();
    double best = std::numeric_limits<double>::infinity();
    const std::size_t segs = closed ? poly.size() : poly.size() - 1;
    for (std::size_t i = 0; i < segs; ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
    return best;
}

/// Symmetric Hausdorff distance between polylines, evaluated vertex-to-segment
/// in both directions.
inline double hausdorff_polyline(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                                 bool closed = true) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_polyline: empty polyline");
    double worst = 0.0;
    for (const auto& p : a) worst = std::max(worst, point_polyline_distance(p, b, closed));
    for (const auto& p : b) worst = std::max(worst, point_polyline_distance(p, a, closed));
    return worst;
}

} // namespace rdmgeo
