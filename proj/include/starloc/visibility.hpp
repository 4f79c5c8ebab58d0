/*
   Copyright 2026 The starloc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "starloc/polygon.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// Kernel: intersection of the inner (left) half-planes of all edges.

struct Kernel {
    enum class Kind { FullDim, Segment, SinglePoint, Empty };
    Kind kind = Kind::Empty;
    std::vector<Point> region;  // FullDim: CCW polygon; Segment: 2 pts; SinglePoint: 1 pt

    bool empty() const { return kind == Kind::Empty; }
};

namespace detail {

/// Clips a convex CCW region by the closed left half-plane of line a->b.
inline std::vector<Point> clip_half_plane(const std::vector<Point>& poly, const Point& a,
                                          const Point& b) {
    std::vector<Point> out;
    const size_t n = poly.size();
    if (n == 0) return out;
    const Point d = b - a;
    auto side = [&](const Point& p) { return cross(d, p - a).sign(); };
    for (size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        const int sc = side(cur), sn = side(nxt);
        if (sc >= 0) out.push_back(cur);
        if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
            auto li = line_intersection(a, b, cur, nxt);
            out.push_back(li.p);
        }
    }
    // Deduplicate consecutive points.
    std::vector<Point> ded;
    for (const auto& p : out)
        if (ded.empty() || !(ded.back() == p)) ded.push_back(p);
    while (ded.size() > 1 && ded.front() == ded.back()) ded.pop_back();
    return ded;
}

/// Canonicalizes a convex chain: drops collinear runs, classifies dimension.
inline Kernel classify_region(std::vector<Point> pts) {
    Kernel k;
    if (pts.empty()) return k;
    // Unique points.
    std::vector<Point> uniq;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& u : uniq)
            if (u == p) { dup = true; break; }
        if (!dup) uniq.push_back(p);
    }
    if (uniq.size() == 1) {
        k.kind = Kernel::Kind::SinglePoint;
        k.region = uniq;
        return k;
    }
    if (polygon_area2(pts).sign() == 0) {
        // Degenerate: all points collinear. Take extreme pair.
        size_t lo = 0, hi = 0;
        for (size_t i = 1; i < uniq.size(); ++i) {
            if (lex_less(uniq[i], uniq[lo])) lo = i;
            if (lex_less(uniq[hi], uniq[i])) hi = i;
        }
        if (uniq[lo] == uniq[hi]) {
            k.kind = Kernel::Kind::SinglePoint;
            k.region = {uniq[lo]};
        } else {
            k.kind = Kernel::Kind::Segment;
            k.region = {uniq[lo], uniq[hi]};
        }
        return k;
    }
    // Full-dimensional: drop collinear chain vertices, rotate to lexicographic
    // minimum for a deterministic representation.
    std::vector<Point> slim;
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = pts[(i + n - 1) % n];
        const Point& m = pts[i];
        const Point& b = pts[(i + 1) % n];
        if (orientation(a, m, b) != Orientation::Collinear) slim.push_back(m);
    }
    size_t start = 0;
    for (size_t i = 1; i < slim.size(); ++i)
        if (lex_less(slim[i], slim[start])) start = i;
    std::rotate(slim.begin(), slim.begin() + static_cast<long>(start), slim.end());
    k.kind = Kernel::Kind::FullDim;
    k.region = std::move(slim);
    return k;
}

}  // namespace detail

inline Kernel kernel(const PolygonStarChain& p) {
    // Start from a box strictly containing the polygon.
    Rational lo_x = p.pt(0).x, hi_x = lo_x, lo_y = p.pt(0).y, hi_y = lo_y;
    for (size_t i = 1; i < p.size(); ++i) {
        lo_x = std::min(lo_x, p.pt(i).x);
        hi_x = std::max(hi_x, p.pt(i).x);
        lo_y = std::min(lo_y, p.pt(i).y);
        hi_y = std::max(hi_y, p.pt(i).y);
    }
    const Rational one(1);
    std::vector<Point> region = {{lo_x - one, lo_y - one},
                                 {hi_x + one, lo_y - one},
                                 {hi_x + one, hi_y + one},
                                 {lo_x - one, hi_y + one}};
    for (size_t i = 0; i < p.size() && !region.empty(); ++i)
        region = detail::clip_half_plane(region, p.pt(i), p.pt(i + 1));
    return detail::classify_region(std::move(region));
}

inline bool is_star_shaped(const PolygonStarChain& p) { return !kernel(p).empty(); }

/// Membership in the (convex) kernel region, closed.
inline bool kernel_contains(const Kernel& k, const Point& q) {
    switch (k.kind) {
        case Kernel::Kind::Empty:
            return false;
        case Kernel::Kind::SinglePoint:
            return k.region[0] == q;
        case Kernel::Kind::Segment:
            return orientation(k.region[0], k.region[1], q) == Orientation::Collinear &&
                   collinear_point_on_segment(k.region[0], k.region[1], q);
        case Kernel::Kind::FullDim:
            return point_in_chain(k.region, q) != Containment::Outside;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Kernel boundary segments: maximal positive-length pieces of the boundary
// lying in the kernel, attributed to single edges.

struct KernelBoundarySegment {
    size_t edge;  // index of the supporting polygon edge
    Point a, b;   // oriented along the edge direction
};

inline std::vector<KernelBoundarySegment> kernel_boundary_segments(const PolygonStarChain& p,
                                                                   const Kernel& k) {
    std::vector<KernelBoundarySegment> out;
    if (k.kind == Kernel::Kind::Empty || k.kind == Kernel::Kind::SinglePoint) return out;
    const size_t n = p.size();
    for (size_t e = 0; e < n; ++e) {
        // Clip edge e by the left half-planes of all other edges.
        Point a = p.pt(e), b = p.pt(e + 1);
        bool alive = true;
        for (size_t j = 0; j < n && alive; ++j) {
            if (j == e) continue;
            const Point u = p.pt(j), w = p.pt(j + 1);
            const Point d = w - u;
            const int sa = cross(d, a - u).sign();
            const int sb = cross(d, b - u).sign();
            if (sa >= 0 && sb >= 0) continue;
            if (sa < 0 && sb < 0) { alive = false; break; }
            auto li = line_intersection(u, w, a, b);
            if (li.kind != LineIntersection::Kind::Point_) { alive = false; break; }
            if (sa < 0) a = li.p; else b = li.p;
        }
        if (alive && !(a == b)) out.push_back({e, a, b});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Visibility polygon: angular sweep with exact predicates. The region is a
// star-shaped (possibly weakly simple) polygon around q; window chords along
// grazing rays appear as collinear vertex pairs.

struct VisibilityPolygon {
    std::vector<Point> region;  // CCW around q
    Point query;
};

namespace detail {

/// CCW angular comparator for nonzero direction vectors.
inline bool angle_less(const Point& u, const Point& v) {
    auto half = [](const Point& d) {
        // 0: angle in [0, pi) (y > 0, or y == 0 && x > 0); 1: [pi, 2pi)
        const int sy = d.y.sign();
        return (sy > 0 || (sy == 0 && d.x.sign() > 0)) ? 0 : 1;
    };
    const int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return cross(u, v).sign() > 0;
}

}  // namespace detail

template <typename Poly>
inline VisibilityPolygon visibility_polygon(const Poly& poly, const Point& q) {
    const auto vs = [&] {
        if constexpr (std::is_same_v<Poly, SimplePolygon>)
            return poly.vertices;
        else
            return poly.points();
    }();
    if (point_in_chain(vs, q) == Containment::Outside)
        throw ValidationError(PolygonErrorKind::PointOutside,
                              "visibility_polygon: query point outside polygon");

    // Event directions: toward every vertex, plus axis directions so that no
    // angular gap spans pi or more.
    std::vector<Point> dirs;
    for (const auto& v : vs)
        if (!(v == q)) dirs.push_back(v - q);
    dirs.push_back(Point(1, 0));
    dirs.push_back(Point(0, 1));
    dirs.push_back(Point(-1, 0));
    dirs.push_back(Point(0, -1));
    std::sort(dirs.begin(), dirs.end(), detail::angle_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end(),
                           [](const Point& a, const Point& b) {
                               return cross(a, b).sign() == 0 && dot(a, b).sign() > 0;
                           }),
               dirs.end());

    struct Shot {
        Rational t;
        Point p;
        bool inside;  // ray enters the region at all
    };
    auto shoot = [&](const Point& d) -> Shot {
        auto re = ray_exit(poly, q, d);
        return {re.t, re.p, !(re.p == q)};
    };

    std::vector<Point> region;
    auto push = [&](const Point& p) {
        if (region.empty() || !(region.back() == p)) region.push_back(p);
    };

    const size_t m = dirs.size();
    std::vector<Shot> shots;
    shots.reserve(m);
    for (const auto& d : dirs) shots.push_back(shoot(d));

    for (size_t i = 0; i < m; ++i) {
        const size_t j = (i + 1) % m;
        push(shots[i].p);
        // Between consecutive event rays the visible far boundary follows a
        // single edge; find it with a mid-direction probe and add the edge
        // portion endpoints on both event rays.
        const Point dmid = dirs[i] + dirs[j];
        if (dmid == Point(0, 0)) continue;  // opposite axis dirs with no vertex between
        auto mid = ray_exit(poly, q, dmid);
        if (mid.p == q || mid.edge < 0) continue;
        const Point eu = vs[static_cast<size_t>(mid.edge)];
        const Point ew = vs[(static_cast<size_t>(mid.edge) + 1) % vs.size()];
        for (const Point& d : {dirs[i], dirs[j]}) {
            auto li = line_intersection(q, q + d, eu, ew);
            if (li.kind != LineIntersection::Kind::Point_) continue;
            if (dot(li.p - q, d).sign() < 0) continue;
            push(li.p);
        }
    }
    while (region.size() > 1 && region.front() == region.back()) region.pop_back();
    return {std::move(region), q};
}

}  // namespace starloc
