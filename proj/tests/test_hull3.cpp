#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "rdmgeo/geometry.hpp"
#include "rdmgeo/hull3.hpp"

using namespace rdmgeo;
using Catch::Approx;

namespace {

std::vector<Vec3> cube_with_fluff() {
    std::vector<Vec3> pts;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y)
            for (int z = 0; z <= 1; ++z) pts.emplace_back(x, y, z);
    // face centers, edge midpoints, interiors: none of these are extreme
    pts.emplace_back(0.5, 0.5, 0.0);
    pts.emplace_back(0.5, 0.5, 1.0);
    pts.emplace_back(0.5, 0.0, 0.5);
    pts.emplace_back(0.5, 1.0, 0.5);
    pts.emplace_back(0.5, 0.5, 0.5);
    pts.emplace_back(0.25, 0.25, 0.25);
    pts.emplace_back(0.5, 0.0, 0.0);
    pts.emplace_back(0.0, 0.5, 0.0);
    return pts;
}

} // namespace

TEST_CASE("cube hull keeps exactly the 8 corners") {
    auto body = convex_hull_3d(cube_with_fluff(), "cube");
    CHECK(body.vertices.size() == 8);
    for (const auto& v : body.vertices)
        for (int c = 0; c < 3; ++c) CHECK((v[c] == 0.0 || v[c] == 1.0));
    auto report = validate_hull(body);
    CHECK(report.manifold);
    CHECK(report.euler_ok);
    CHECK(report.max_outside <= 1e-9);
}

TEST_CASE("sphere cloud: every point is a hull vertex") {
    auto dirs = fibonacci_sphere(2000);
    auto body = convex_hull_3d(dirs, "sphere");
    CHECK(body.vertices.size() == 2000);
    auto report = validate_hull(body, 7);
    CHECK(report.manifold);
    CHECK(report.euler_ok);
    CHECK(report.max_outside <= 1e-9);
}

TEST_CASE("hull vertices are bit-identical input points (snap-back)") {
    auto dirs = fibonacci_sphere(337);
    auto body = convex_hull_3d(dirs, "snap");
    for (const auto& v : body.vertices) {
        const bool found = std::any_of(dirs.begin(), dirs.end(), [&](const Vec3& p) {
            return p.x() == v.x() && p.y() == v.y() && p.z() == v.z();
        });
        CHECK(found);
    }
}

TEST_CASE("ball interior points never appear as vertices") {
    std::uint64_t rng = 99;
    std::vector<Vec3> pts = fibonacci_sphere(400);
    for (int i = 0; i < 500; ++i) {
        Vec3 p(detail::uniform_pm1(rng), detail::uniform_pm1(rng), detail::uniform_pm1(rng));
        pts.push_back(0.6 * p / std::max(1.0, p.norm() * 2.0)); // safely inside
    }
    auto body = convex_hull_3d(pts, "ball");
    CHECK(body.vertices.size() == 400);
    // no input point escapes the hull
    double worst = 0.0;
    for (std::size_t f = 0; f < body.facets.size(); ++f) {
        const Vec3 nrm = body.facet_normal(f).normalized();
        const double d = nrm.dot(body.vertices[static_cast<std::size_t>(body.facets[f][0])]);
        for (const auto& p : pts) worst = std::max(worst, nrm.dot(p) - d);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("degenerate inputs raise hull_error") {
    CHECK_THROWS_AS(convex_hull_3d({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)}, "tri"), hull_error);
    std::vector<Vec3> plane_pts;
    for (int i = 0; i < 30; ++i)
        plane_pts.emplace_back(0.1 * i, 0.2 * ((i * 7) % 11), 0.0);
    CHECK_THROWS_AS(convex_hull_3d(plane_pts, "coplanar"), hull_error);
    std::vector<Vec3> line_pts;
    for (int i = 0; i < 10; ++i) line_pts.emplace_back(i, 2.0 * i, -i);
    CHECK_THROWS_AS(convex_hull_3d(line_pts, "collinear"), hull_error);
}

TEST_CASE("hull construction is deterministic") {
    auto pts = fibonacci_sphere(500);
    auto a = convex_hull_3d(pts, "a");
    auto b = convex_hull_3d(pts, "b");
    REQUIRE(a.vertices.size() == b.vertices.size());
    REQUIRE(a.facets.size() == b.facets.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i) CHECK(a.vertices[i] == b.vertices[i]);
    for (std::size_t i = 0; i < a.facets.size(); ++i) CHECK(a.facets[i] == b.facets[i]);
}

TEST_CASE("2d monotone chain hull") {
    std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.8}};
    auto hull = convex_hull_2d(pts);
    REQUIRE_FALSE(hull.degenerate);
    REQUIRE(hull.polyline.size() == 4);
    // counterclockwise: positive signed area
    double area = 0.0;
    for (std::size_t i = 0; i < hull.polyline.size(); ++i) {
        const auto& p = hull.polyline[i];
        const auto& q = hull.polyline[(i + 1) % hull.polyline.size()];
        area += p.x() * q.y() - q.x() * p.y();
    }
    CHECK(area > 0.0);

    CHECK(convex_hull_2d({{0, 0}, {1, 1}}).degenerate);
    CHECK(convex_hull_2d({{0, 0}}).degenerate);
}

TEST_CASE("hausdorff distance between polylines") {
    std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(hausdorff_polyline(sq, sq) == 0.0);
    std::vector<Vec2> shifted{{0.1, 0}, {1.1, 0}, {1.1, 1}, {0.1, 1}};
    CHECK(hausdorff_polyline(sq, shifted) == Approx(0.1).margin(1e-12));
}
