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
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "starloc/geom.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// Errors

enum class PolygonErrorKind {
    TooFewVertices,
    DuplicateVertex,
    CollinearTriple,
    SelfIntersecting,
    Degenerate,
    NotWeaklySimple,
    PointOutside,
};

struct ValidationError : std::runtime_error {
    PolygonErrorKind kind;
    ValidationError(PolygonErrorKind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

// ---------------------------------------------------------------------------
// Simple polygon (user input; general position, CCW)

struct SimplePolygon {
    std::vector<Point> vertices;  // CCW

    size_t size() const { return vertices.size(); }
    const Point& operator[](size_t i) const { return vertices[i % vertices.size()]; }
};

inline Rational polygon_area2(const std::vector<Point>& vs) {
    Rational a(0);
    const size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) a += cross(vs[i], vs[(i + 1) % n]);
    return a;  // twice the signed area
}

/// Validates user input: n >= 3, distinct vertices, no three collinear
/// vertices anywhere (general position), no self-intersection. Clockwise
/// input is reversed to counterclockwise.
inline SimplePolygon validate_simple_polygon(std::vector<Point> vs) {
    const size_t n = vs.size();
    if (n < 3)
        throw ValidationError(PolygonErrorKind::TooFewVertices,
                              "polygon needs at least 3 vertices, got " + std::to_string(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (vs[i] == vs[j])
                throw ValidationError(PolygonErrorKind::DuplicateVertex,
                                      "duplicate vertex at indices " + std::to_string(i) + "," +
                                          std::to_string(j));

    // Self-intersection: any contact between non-adjacent edges, or more than
    // the shared endpoint between adjacent ones.
    for (size_t i = 0; i < n; ++i) {
        const Point& p1 = vs[i];
        const Point& p2 = vs[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            const Point& q1 = vs[j];
            const Point& q2 = vs[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            auto res = segments_intersect(p1, p2, q1, q2);
            if (adjacent) {
                if (res.kind == SegmentIntersection::Kind::Overlap)
                    throw ValidationError(PolygonErrorKind::SelfIntersecting,
                                          "adjacent edges overlap at edge " + std::to_string(i));
                // single shared endpoint is expected
            } else if (res.kind != SegmentIntersection::Kind::Disjoint) {
                throw ValidationError(PolygonErrorKind::SelfIntersecting,
                                      "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                          " intersect");
            }
        }
    }

    const Rational a2 = polygon_area2(vs);
    if (a2.sign() == 0)
        throw ValidationError(PolygonErrorKind::Degenerate, "polygon has zero area");
    if (a2.sign() < 0) std::reverse(vs.begin(), vs.end());

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                if (orientation(vs[i], vs[j], vs[k]) == Orientation::Collinear)
                    throw ValidationError(
                        PolygonErrorKind::CollinearTriple,
                        "vertices " + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + " are collinear");

    return SimplePolygon{std::move(vs)};
}

// ---------------------------------------------------------------------------
// Polygon* (weakly simple chain produced by dissections)

struct StarVertex {
    Point p;
    bool from_original = false;  // vertex of the input polygon P
};

struct GuardedSegment {
    Point a, b;  // boundary piece removed by the needle simplification
};

/// Weakly simple polygon with distinct vertices and interior angles in
/// (0, 2pi). Edge flags track whether an edge lies on the input polygon's
/// boundary (used when choosing tower support segments).
struct PolygonStarChain {
    std::vector<StarVertex> v;
    std::vector<bool> edge_on_input;        // edge i: v[i] -> v[i+1]
    std::vector<GuardedSegment> guarded_externally;

    size_t size() const { return v.size(); }
    const Point& pt(size_t i) const { return v[i % v.size()].p; }
    size_t next(size_t i) const { return (i + 1) % v.size(); }
    size_t prev(size_t i) const { return (i + v.size() - 1) % v.size(); }

    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(v.size());
        for (const auto& sv : v) out.push_back(sv.p);
        return out;
    }
    Rational area2() const { return polygon_area2(points()); }

    static PolygonStarChain from_simple(const SimplePolygon& p) {
        PolygonStarChain c;
        c.v.reserve(p.size());
        for (const auto& pt : p.vertices) c.v.push_back({pt, true});
        c.edge_on_input.assign(p.size(), true);
        return c;
    }
};

/// Reflex test for vertex i of a CCW chain (interior angle > pi).
inline bool is_reflex(const PolygonStarChain& c, size_t i) {
    return orientation(c.pt(c.prev(i)), c.pt(i), c.pt(c.next(i))) == Orientation::Clockwise;
}

inline size_t reflex_count(const PolygonStarChain& c) {
    size_t r = 0;
    for (size_t i = 0; i < c.size(); ++i)
        if (is_reflex(c, i)) ++r;
    return r;
}

// ---------------------------------------------------------------------------
// Point containment (closed region; weakly simple chains supported)

enum class Containment { Outside, Boundary, Inside };

inline Containment point_in_chain(const std::vector<Point>& vs, const Point& q) {
    const size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = vs[i];
        const Point& b = vs[(i + 1) % n];
        if (orientation(a, b, q) == Orientation::Collinear &&
            collinear_point_on_segment(a, b, q))
            return Containment::Boundary;
    }
    // Crossing parity with the half-open rule on a ray to +x.
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const Point& a = vs[i];
        const Point& b = vs[(i + 1) % n];
        const bool a_below = a.y <= q.y, b_below = b.y <= q.y;
        if (a_below == b_below) continue;
        // Edge straddles the horizontal line through q; crossing is to the
        // right of q iff the x-coordinate at q.y exceeds q.x.
        const Orientation o = orientation(a, b, q);
        if (b.y > a.y) {
            // Upward edge: crossing lies right of q iff q is left of a->b.
            if (o == Orientation::CounterClockwise) inside = !inside;
        } else {
            if (o == Orientation::Clockwise) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

inline Containment point_in_chain(const PolygonStarChain& c, const Point& q) {
    return point_in_chain(c.points(), q);
}
inline Containment point_in_chain(const SimplePolygon& p, const Point& q) {
    return point_in_chain(p.vertices, q);
}

// ---------------------------------------------------------------------------
// Segment containment (visibility primitive): segment [a,b] inside the closed
// region, boundary contact allowed.

template <typename Poly>
inline bool segment_in_polygon(const Poly& poly, const Point& a, const Point& b) {
    const auto vs = [&] {
        if constexpr (std::is_same_v<Poly, SimplePolygon>)
            return poly.vertices;
        else
            return poly.points();
    }();
    const size_t n = vs.size();
    if (a == b) return point_in_chain(vs, a) != Containment::Outside;

    // Any proper crossing with a boundary edge exits the region.
    bool touched = false;
    std::vector<Rational> params;
    const Point d = b - a;
    const Rational dd = dot(d, d);
    for (size_t i = 0; i < n; ++i) {
        const Point& u = vs[i];
        const Point& w = vs[(i + 1) % n];
        auto res = segments_intersect(a, b, u, w);
        switch (res.kind) {
            case SegmentIntersection::Kind::Disjoint:
                break;
            case SegmentIntersection::Kind::ProperCross:
                return false;
            case SegmentIntersection::Kind::Touch:
                touched = true;
                params.push_back(dot(res.p - a, d) / dd);
                break;
            case SegmentIntersection::Kind::Overlap:
                touched = true;
                params.push_back(dot(res.p - a, d) / dd);
                params.push_back(dot(res.q - a, d) / dd);
                break;
        }
    }
    if (!touched) return point_in_chain(vs, a) == Containment::Inside;

    params.push_back(Rational(0));
    params.push_back(Rational(1));
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    const Rational half(1, 2);
    for (size_t i = 0; i + 1 < params.size(); ++i) {
        const Rational mid_t = half * (params[i] + params[i + 1]);
        if (mid_t < Rational(0) || mid_t > Rational(1)) continue;
        const Point mid = a + mid_t * d;
        if (point_in_chain(vs, mid) == Containment::Outside) return false;
    }
    return true;
}

namespace polydetail {
struct PointsView {
    const std::vector<Point>& v;
    std::vector<Point> points() const { return v; }
};
}  // namespace polydetail

inline bool segment_in_polygon(const std::vector<Point>& vs, const Point& a, const Point& b) {
    return segment_in_polygon(polydetail::PointsView{vs}, a, b);
}

/// Mutual visibility of two points in the closed polygon (paper's notion:
/// the sight segment may touch the boundary).
template <typename Poly>
inline bool sees(const Poly& poly, const Point& a, const Point& b) {
    return segment_in_polygon(poly, a, b);
}

// ---------------------------------------------------------------------------
// Ray exit: furthest point R on the ray origin + t*dir (t >= 0) such that the
// whole segment [origin, R] stays inside the closed region. Returns t = 0
// when the ray leaves the region immediately.

struct RayExit {
    Rational t;      // parameter along dir
    Point p;         // origin + t*dir
    int edge = -1;   // an edge whose closed span contains p (-1 if p is origin)
};

template <typename Poly>
inline RayExit ray_exit(const Poly& poly, const Point& origin, const Point& dir) {
    const auto vs = [&] {
        if constexpr (std::is_same_v<Poly, SimplePolygon>)
            return poly.vertices;
        else
            return poly.points();
    }();
    const size_t n = vs.size();
    if (dir == Point(0, 0)) throw std::invalid_argument("ray_exit: zero direction");

    // Far point well beyond the bounding box.
    Rational max_abs(0);
    for (const auto& p : vs) {
        for (const Rational* c : {&p.x, &p.y}) {
            Rational a = c->abs();
            if (a > max_abs) max_abs = a;
        }
    }
    for (const Rational* c : {&origin.x, &origin.y}) {
        Rational a = c->abs();
        if (a > max_abs) max_abs = a;
    }
    Rational dir_scale = dir.x.abs() + dir.y.abs();
    const Rational t_far = (Rational(8) * max_abs + Rational(8)) / dir_scale;
    const Point far = origin + t_far * dir;

    std::vector<Rational> ts;
    ts.push_back(Rational(0));
    const Point d = far - origin;
    const Rational dd = dot(d, d);
    for (size_t i = 0; i < n; ++i) {
        const Point& u = vs[i];
        const Point& w = vs[(i + 1) % n];
        auto res = segments_intersect(origin, far, u, w);
        if (res.kind == SegmentIntersection::Kind::Disjoint) continue;
        ts.push_back(dot(res.p - origin, d) / dd * t_far);
        if (res.kind == SegmentIntersection::Kind::Overlap)
            ts.push_back(dot(res.q - origin, d) / dd * t_far);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    const Rational half(1, 2);
    Rational t_ok(0);
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        const Rational mid = half * (ts[i] + ts[i + 1]);
        if (point_in_chain(vs, origin + mid * dir) == Containment::Outside) break;
        t_ok = ts[i + 1];
    }

    RayExit out;
    out.t = t_ok;
    out.p = origin + t_ok * dir;
    for (size_t i = 0; i < n; ++i) {
        const Point& u = vs[i];
        const Point& w = vs[(i + 1) % n];
        if (orientation(u, w, out.p) == Orientation::Collinear &&
            collinear_point_on_segment(u, w, out.p)) {
            out.edge = static_cast<int>(i);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simplification step: removes collinear consecutive vertices. Angle-pi
// vertices are dropped; angle-0/2pi needles are dropped with the shorter
// adjacent span recorded so coverage checks still account for it.

inline PolygonStarChain simplify(PolygonStarChain c) {
    bool changed = true;
    while (changed) {
        changed = false;
        const size_t n = c.size();
        if (n < 3)
            throw ValidationError(PolygonErrorKind::Degenerate,
                                  "simplify: polygon collapsed below 3 vertices");
        for (size_t i = 0; i < c.size(); ++i) {
            const size_t ip = c.prev(i), in = c.next(i);
            const Point &a = c.pt(ip), &m = c.pt(i), &b = c.pt(in);
            if (orientation(a, m, b) != Orientation::Collinear) continue;
            if (c.size() == 3)
                throw ValidationError(PolygonErrorKind::Degenerate,
                                      "simplify: collinear triangle");
            const bool between = collinear_point_in_open_segment(a, b, m);
            if (!between) {
                // Needle: angle 0 or 2pi. Record the shorter adjacent segment.
                const Point& closer = (sq_dist(m, a) < sq_dist(m, b)) ? a : b;
                c.guarded_externally.push_back({closer, m});
            }
            // Merge edges ip and i into one edge a->b.
            const bool flag = c.edge_on_input[ip] && c.edge_on_input[i];
            c.v.erase(c.v.begin() + static_cast<long>(i));
            c.edge_on_input.erase(c.edge_on_input.begin() + static_cast<long>(i));
            c.edge_on_input[i == 0 ? c.edge_on_input.size() - 1 : ip] = flag;
            changed = true;
            break;
        }
    }
    return c;
}

/// Structural polygon* check: distinct vertices, positive area, no 0/2pi
/// angles (call after simplify), no properly crossing boundary edges.
inline void validate_star_chain(const PolygonStarChain& c) {
    const size_t n = c.size();
    if (n < 3)
        throw ValidationError(PolygonErrorKind::TooFewVertices, "polygon* below 3 vertices");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (c.pt(i) == c.pt(j))
                throw ValidationError(PolygonErrorKind::DuplicateVertex,
                                      "polygon* duplicate vertex");
    if (c.area2().sign() <= 0)
        throw ValidationError(PolygonErrorKind::Degenerate, "polygon* area not positive");
    for (size_t i = 0; i < n; ++i) {
        const Point &a = c.pt(c.prev(i)), &m = c.pt(i), &b = c.pt(c.next(i));
        if (orientation(a, m, b) == Orientation::Collinear &&
            !collinear_point_in_open_segment(a, b, m))
            throw ValidationError(PolygonErrorKind::NotWeaklySimple,
                                  "polygon* has a 0/2pi angle at vertex " + std::to_string(i));
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            auto res = segments_intersect(c.pt(i), c.pt(i + 1), c.pt(j), c.pt(j + 1));
            if (res.kind == SegmentIntersection::Kind::ProperCross ||
                res.kind == SegmentIntersection::Kind::Overlap)
                throw ValidationError(PolygonErrorKind::NotWeaklySimple,
                                      "polygon* edges " + std::to_string(i) + "," +
                                          std::to_string(j) + " cross");
        }
    }
}

}  // namespace starloc
