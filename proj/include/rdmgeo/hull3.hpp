#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdmgeo/common.hpp"

namespace rdmgeo {

/// Triangulated convex body: vertex cloud plus outward-oriented facets.
struct ConvexBody3 {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> facets;
    std::string provenance;

    Vec3 facet_normal(std::size_t f) const {
        const auto& t = facets[f];
        const Vec3 a = vertices[static_cast<std::size_t>(t[0])];
        return (vertices[static_cast<std::size_t>(t[1])] - a)
            .cross(vertices[static_cast<std::size_t>(t[2])] - a);
    }
};

struct HullOptions {
    // Points within eps of a facet plane count as coplanar and are absorbed,
    // so flat regions stay flat. Construction runs on the exact input
    // coordinates; absorbed points and horizon over-expansion leave dents
    // that scale with eps, so eps sits just above arithmetic noise to keep
    // the 1e-9 facet-sidedness contract for unit-scale bodies. Jitter is off
    // by default; snapping jittered sliver facets back would rotate their
    // planes by jitter/altitude and break that contract.
    double eps_rel = 1e-12;
    double jitter_rel = 0.0;
    std::uint64_t jitter_seed = 0x9e3779b9u;
};

struct HullValidation {
    double max_outside = 0.0; // worst signed distance of a vertex above a facet plane
    bool manifold = true;     // every edge shared by exactly two facets
    bool euler_ok = true;     // V - E + F == 2
};

namespace detail_hull {

struct Facet {
    std::array<int, 3> v;
    std::array<int, 3> nb; // neighbor across edge (v[e], v[(e+1)%3])
    Vec3 n = Vec3::Zero(); // unit outward normal
    double d = 0.0;        // plane offset, n.x = d
    std::vector<int> pts;  // conflict list
    int far_idx = -1;
    double far_dist = 0.0;
    bool dead = false;

    double dist(const Vec3& p) const { return n.dot(p) - d; }
};

} // namespace detail_hull

/// Incremental quickhull with conflict lists. Input points are deduplicated,
/// jittered into general position, and snapped back to their original
/// coordinates on output.
inline ConvexBody3 convex_hull_3d(const std::vector<Vec3>& input, std::string provenance = "",
                                  const HullOptions& opts = {}) {
    using detail_hull::Facet;

    // deduplicate on a fine grid
    std::vector<Vec3> pts;
    {
        std::unordered_map<std::uint64_t, int> seen;
        pts.reserve(input.size());
        Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
        for (const auto& p : input) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        const double extent = input.empty() ? 1.0 : std::max((hi - lo).maxCoeff(), 1e-300);
        const double q = 1e-12 * extent;
        for (const auto& p : input) {
            std::uint64_t h = 1469598103934665603ULL;
            for (int c = 0; c < 3; ++c) {
                const auto cell = static_cast<std::int64_t>(std::llround(p[c] / q));
                h ^= static_cast<std::uint64_t>(cell) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            }
            if (seen.emplace(h, 1).second) pts.push_back(p);
        }
    }
    const std::size_t n = pts.size();
    if (n < 4)
        throw hull_error("convex_hull_3d: need at least 4 distinct points (" + provenance + ")");

    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
    for (const auto& p : pts) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double extent = std::max((hi - lo).norm(), 1e-300);
    const double eps = opts.eps_rel * extent;

    // optionally jittered working copy; `pts` keeps the snap-back coordinates
    std::vector<Vec3> work(pts);
    if (opts.jitter_rel > 0.0) {
        std::uint64_t rng = opts.jitter_seed;
        const double j = opts.jitter_rel * extent;
        for (auto& p : work)
            for (int c = 0; c < 3; ++c) p[c] += j * detail::uniform_pm1(rng);
    }

    // initial simplex from axis extremes
    std::array<int, 4> init{};
    {
        std::vector<int> extremes;
        for (int axis = 0; axis < 3; ++axis) {
            int imin = 0, imax = 0;
            for (int i = 1; i < static_cast<int>(n); ++i) {
                if (work[static_cast<std::size_t>(i)][axis] < work[static_cast<std::size_t>(imin)][axis]) imin = i;
                if (work[static_cast<std::size_t>(i)][axis] > work[static_cast<std::size_t>(imax)][axis]) imax = i;
            }
            extremes.push_back(imin);
            extremes.push_back(imax);
        }
        double best = -1.0;
        for (std::size_t a = 0; a < extremes.size(); ++a)
            for (std::size_t b = a + 1; b < extremes.size(); ++b) {
                const double d2 = (work[static_cast<std::size_t>(extremes[a])] - work[static_cast<std::size_t>(extremes[b])]).squaredNorm();
                if (d2 > best) {
                    best = d2;
                    init[0] = extremes[a];
                    init[1] = extremes[b];
                }
            }
        if (std::sqrt(best) <= 4.0 * eps)
            throw hull_error("convex_hull_3d: degenerate input, all points coincide (" + provenance + ")");
        const Vec3 dir = (work[static_cast<std::size_t>(init[1])] - work[static_cast<std::size_t>(init[0])]).normalized();
        best = -1.0;
        for (int i = 0; i < static_cast<int>(n); ++i) {
            const Vec3 rel = work[static_cast<std::size_t>(i)] - work[static_cast<std::size_t>(init[0])];
            const double d2 = (rel - rel.dot(dir) * dir).squaredNorm();
            if (d2 > best) {
                best = d2;
                init[2] = i;
            }
        }
        if (std::sqrt(best) <= 4.0 * eps)
            throw hull_error("convex_hull_3d: degenerate input, points are collinear (" + provenance + ")");
        const Vec3 nrm = (work[static_cast<std::size_t>(init[1])] - work[static_cast<std::size_t>(init[0])])
                             .cross(work[static_cast<std::size_t>(init[2])] - work[static_cast<std::size_t>(init[0])])
                             .normalized();
        best = -1.0;
        for (int i = 0; i < static_cast<int>(n); ++i) {
            const double d = std::abs(nrm.dot(work[static_cast<std::size_t>(i)] - work[static_cast<std::size_t>(init[0])]));
            if (d > best) {
                best = d;
                init[3] = i;
            }
        }
        if (best <= 4.0 * eps)
            throw hull_error("convex_hull_3d: degenerate input, points are coplanar (" + provenance + ")");
    }

    const Vec3 interior = 0.25 * (work[static_cast<std::size_t>(init[0])] + work[static_cast<std::size_t>(init[1])] +
                                  work[static_cast<std::size_t>(init[2])] + work[static_cast<std::size_t>(init[3])]);

    std::vector<Facet> facets;
    facets.reserve(4 * n);
    auto make_facet = [&](int a, int b, int c) {
        Facet f;
        f.v = {a, b, c};
        Vec3 nrm = (work[static_cast<std::size_t>(b)] - work[static_cast<std::size_t>(a)])
                       .cross(work[static_cast<std::size_t>(c)] - work[static_cast<std::size_t>(a)]);
        const double len = nrm.norm();
        if (len <= 0.0) throw hull_error("convex_hull_3d: zero-area facet encountered");
        nrm /= len;
        double d = nrm.dot(work[static_cast<std::size_t>(a)]);
        if (nrm.dot(interior) - d > 0.0) { // enforce outward orientation
            std::swap(f.v[1], f.v[2]);
            nrm = -nrm;
            d = -d;
        }
        f.n = nrm;
        f.d = d;
        f.nb = {-1, -1, -1};
        facets.push_back(std::move(f));
        return static_cast<int>(facets.size() - 1);
    };

    // link facets sharing an edge; each undirected edge appears exactly twice
    auto link_all = [&](const std::vector<int>& ids) {
        std::map<std::pair<int, int>, std::pair<int, int>> edges; // edge -> (facet, slot)
        for (int id : ids) {
            auto& f = facets[static_cast<std::size_t>(id)];
            for (int e = 0; e < 3; ++e) {
                if (f.nb[static_cast<std::size_t>(e)] >= 0) continue;
                const int a = f.v[static_cast<std::size_t>(e)], b = f.v[static_cast<std::size_t>((e + 1) % 3)];
                const auto key = std::minmax(a, b);
                auto it = edges.find(key);
                if (it == edges.end()) {
                    edges.emplace(key, std::make_pair(id, e));
                } else {
                    auto [oid, oe] = it->second;
                    f.nb[static_cast<std::size_t>(e)] = oid;
                    facets[static_cast<std::size_t>(oid)].nb[static_cast<std::size_t>(oe)] = id;
                    edges.erase(it);
                }
            }
        }
        if (!edges.empty()) throw hull_error("convex_hull_3d: non-manifold facet fan");
    };

    {
        std::vector<int> ids;
        ids.push_back(make_facet(init[0], init[1], init[2]));
        ids.push_back(make_facet(init[0], init[1], init[3]));
        ids.push_back(make_facet(init[0], init[2], init[3]));
        ids.push_back(make_facet(init[1], init[2], init[3]));
        link_all(ids);
    }

    auto assign_point = [&](int pi, const std::vector<int>& candidates) {
        double best = eps;
        int target = -1;
        for (int id : candidates) {
            const auto& f = facets[static_cast<std::size_t>(id)];
            if (f.dead) continue;
            const double d = f.dist(work[static_cast<std::size_t>(pi)]);
            if (d > best) {
                best = d;
                target = id;
            }
        }
        if (target < 0) return;
        auto& f = facets[static_cast<std::size_t>(target)];
        f.pts.push_back(pi);
        if (best > f.far_dist) {
            f.far_dist = best;
            f.far_idx = pi;
        }
    };

    // farthest-first processing keeps true extreme points ahead of any point
    // that ends up on a facet plane of the final hull
    using QueueEntry = std::pair<double, std::pair<int, int>>; // (dist, (facet, point))
    std::priority_queue<QueueEntry> queue_far;
    auto push_conflict = [&](int id) {
        const auto& f = facets[static_cast<std::size_t>(id)];
        if (!f.dead && !f.pts.empty()) queue_far.push({f.far_dist, {id, f.far_idx}});
    };
    {
        std::vector<int> all{0, 1, 2, 3};
        for (int i = 0; i < static_cast<int>(n); ++i) {
            if (i == init[0] || i == init[1] || i == init[2] || i == init[3]) continue;
            assign_point(i, all);
        }
        for (int id : all) push_conflict(id);
    }

    std::vector<int> visible, horizon_f, horizon_e;
    while (!queue_far.empty()) {
        const auto [dist, entry] = queue_far.top();
        queue_far.pop();
        const int fid = entry.first;
        {
            const auto& f = facets[static_cast<std::size_t>(fid)];
            if (f.dead || f.pts.empty() || f.far_idx != entry.second || f.far_dist != dist)
                continue; // stale queue entry
        }
        const int apex = facets[static_cast<std::size_t>(fid)].far_idx;
        const Vec3 p = work[static_cast<std::size_t>(apex)];

        // Visible region via BFS over neighbors. The seed requires dist > eps;
        // expansion swallows facets down to dist > -eps so the horizon ring
        // has the apex strictly behind it. Stopping the walk at coplanar
        // ridges instead would leave folded, non-convex cones behind.
        visible.clear();
        horizon_f.clear();
        horizon_e.clear();
        std::vector<int> queue{fid};
        facets[static_cast<std::size_t>(fid)].dead = true;
        visible.push_back(fid);
        while (!queue.empty()) {
            const int cur = queue.back();
            queue.pop_back();
            for (int e = 0; e < 3; ++e) {
                const int nb = facets[static_cast<std::size_t>(cur)].nb[static_cast<std::size_t>(e)];
                if (facets[static_cast<std::size_t>(nb)].dead) continue;
                if (facets[static_cast<std::size_t>(nb)].dist(p) > -eps) {
                    facets[static_cast<std::size_t>(nb)].dead = true;
                    visible.push_back(nb);
                    queue.push_back(nb);
                } else {
                    horizon_f.push_back(cur);
                    horizon_e.push_back(e);
                }
            }
        }

        // cone of new facets over the horizon
        std::vector<int> created;
        for (std::size_t hidx = 0; hidx < horizon_f.size(); ++hidx) {
            const int hf = horizon_f[hidx];
            const int he = horizon_e[hidx];
            const int a = facets[static_cast<std::size_t>(hf)].v[static_cast<std::size_t>(he)];
            const int b = facets[static_cast<std::size_t>(hf)].v[static_cast<std::size_t>((he + 1) % 3)];
            const int outside = facets[static_cast<std::size_t>(hf)].nb[static_cast<std::size_t>(he)];
            const int nid = make_facet(a, b, apex);
            // stitch across the horizon edge
            auto& out_f = facets[static_cast<std::size_t>(outside)];
            for (int e = 0; e < 3; ++e) {
                const int oa = out_f.v[static_cast<std::size_t>(e)], ob = out_f.v[static_cast<std::size_t>((e + 1) % 3)];
                if (std::minmax(oa, ob) == std::minmax(a, b)) {
                    out_f.nb[static_cast<std::size_t>(e)] = nid;
                    auto& nf = facets[static_cast<std::size_t>(nid)];
                    for (int ne = 0; ne < 3; ++ne)
                        if (std::minmax(nf.v[static_cast<std::size_t>(ne)], nf.v[static_cast<std::size_t>((ne + 1) % 3)]) ==
                            std::minmax(a, b))
                            nf.nb[static_cast<std::size_t>(ne)] = outside;
                    break;
                }
            }
            created.push_back(nid);
        }
        link_all(created); // links the apex-adjacent edges among the cone

        // re-home conflict points of the dead region
        for (int vid : visible) {
            for (int pi : facets[static_cast<std::size_t>(vid)].pts)
                if (pi != apex) assign_point(pi, created);
            facets[static_cast<std::size_t>(vid)].pts.clear();
            facets[static_cast<std::size_t>(vid)].pts.shrink_to_fit();
        }
        for (int id : created) push_conflict(id);
    }

    // compact, snapping vertices back to their original coordinates
    ConvexBody3 body;
    body.provenance = std::move(provenance);
    std::unordered_map<int, int> remap;
    for (const auto& f : facets) {
        if (f.dead) continue;
        std::array<int, 3> tri{};
        for (int e = 0; e < 3; ++e) {
            const int v = f.v[static_cast<std::size_t>(e)];
            auto it = remap.find(v);
            if (it == remap.end()) {
                it = remap.emplace(v, static_cast<int>(body.vertices.size())).first;
                body.vertices.push_back(pts[static_cast<std::size_t>(v)]);
            }
            tri[static_cast<std::size_t>(e)] = it->second;
        }
        body.facets.push_back(tri);
    }
    return body;
}

/// Orientation, manifoldness and Euler checks. `vertex_stride` subsamples the
/// all-vertices-inside test for large bodies.
inline HullValidation validate_hull(const ConvexBody3& body, std::size_t vertex_stride = 1) {
    HullValidation report;
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : body.facets)
        for (int e = 0; e < 3; ++e) {
            const auto key = std::minmax(t[static_cast<std::size_t>(e)], t[static_cast<std::size_t>((e + 1) % 3)]);
            ++edge_count[key];
        }
    for (const auto& [k, c] : edge_count)
        if (c != 2) report.manifold = false;
    const auto v = static_cast<long>(body.vertices.size());
    const auto f = static_cast<long>(body.facets.size());
    const auto e = static_cast<long>(edge_count.size());
    report.euler_ok = (v - e + f == 2);

    for (std::size_t fi = 0; fi < body.facets.size(); ++fi) {
        const Vec3 nrm = body.facet_normal(fi).normalized();
        const double d = nrm.dot(body.vertices[static_cast<std::size_t>(body.facets[fi][0])]);
        for (std::size_t vi = 0; vi < body.vertices.size(); vi += vertex_stride)
            report.max_outside = std::max(report.max_outside, nrm.dot(body.vertices[vi]) - d);
    }
    return report;
}

} // namespace rdmgeo
