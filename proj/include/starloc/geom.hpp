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

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "starloc/rational.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// Exact types

struct Point {
    Rational x, y;

    Point() = default;
    Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
    Point(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }

    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
inline Rational sq_dist(const Point& a, const Point& b) { return dot(a - b, a - b); }

/// Lexicographic (x, then y); used only for deterministic tie-breaking.
inline bool lex_less(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// ---------------------------------------------------------------------------
// Float wire types (localization side)

struct FloatPoint {
    double x = 0.0, y = 0.0;
};

struct Circle {
    FloatPoint center;
    double radius = 0.0;
};

inline double fdist(const FloatPoint& a, const FloatPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// ---------------------------------------------------------------------------
// Exact predicates

enum class Orientation { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

/// Exact sign of (b-a) x (c-a).
inline Orientation orientation(const Point& a, const Point& b, const Point& c) {
    int s = cross(b - a, c - a).sign();
    return s > 0 ? Orientation::CounterClockwise
                 : (s < 0 ? Orientation::Clockwise : Orientation::Collinear);
}

/// True iff p lies on the closed segment [a,b]; a, b, p must be collinear.
inline bool collinear_point_on_segment(const Point& a, const Point& b, const Point& p) {
    return dot(a - p, b - p).sign() <= 0;
}

/// True iff p lies strictly inside segment (a,b); collinearity assumed.
inline bool collinear_point_in_open_segment(const Point& a, const Point& b, const Point& p) {
    return dot(a - p, b - p).sign() < 0;
}

// ---------------------------------------------------------------------------
// Segment/segment classification

struct SegmentIntersection {
    enum class Kind { Disjoint, Touch, ProperCross, Overlap };
    Kind kind = Kind::Disjoint;
    Point p, q;  // Touch/ProperCross use p; Overlap uses [p, q]
};

/// Exact classification of two segments. Touch covers every single-point
/// contact involving a segment endpoint; ProperCross is an interior/interior
/// crossing; Overlap is a collinear overlap of positive length.
inline SegmentIntersection segments_intersect(const Point& p1, const Point& p2,
                                              const Point& q1, const Point& q2) {
    if (p1 == p2 || q1 == q2)
        throw std::invalid_argument("segments_intersect: zero-length segment");

    const Orientation o1 = orientation(p1, p2, q1);
    const Orientation o2 = orientation(p1, p2, q2);
    const Orientation o3 = orientation(q1, q2, p1);
    const Orientation o4 = orientation(q1, q2, p2);

    SegmentIntersection out;
    if (o1 == Orientation::Collinear && o2 == Orientation::Collinear) {
        // Collinear segments: overlap analysis along the common line.
        const Point d = p2 - p1;
        auto t = [&](const Point& r) { return dot(r - p1, d); };
        Rational lo_q = t(q1), hi_q = t(q2);
        Point qa = q1, qb = q2;
        if (hi_q < lo_q) {
            std::swap(lo_q, hi_q);
            std::swap(qa, qb);
        }
        const Rational lo_p(0), hi_p = t(p2);
        if (hi_q < lo_p || lo_q > hi_p) return out;  // disjoint
        const Rational lo = lo_q > lo_p ? lo_q : lo_p;
        const Rational hi = hi_q < hi_p ? hi_q : hi_p;
        const Point a = (lo == lo_q) ? qa : p1;
        const Point b = (hi == hi_q) ? qb : p2;
        if (lo == hi) {
            out.kind = SegmentIntersection::Kind::Touch;
            out.p = a;
        } else {
            out.kind = SegmentIntersection::Kind::Overlap;
            out.p = a;
            out.q = b;
        }
        return out;
    }

    auto opposite = [](Orientation a, Orientation b) {
        return (a == Orientation::CounterClockwise && b == Orientation::Clockwise) ||
               (a == Orientation::Clockwise && b == Orientation::CounterClockwise);
    };

    if (opposite(o1, o2) && opposite(o3, o4)) {
        // Proper interior crossing: exact intersection point of supporting lines.
        const Point d1 = p2 - p1, d2 = q2 - q1;
        const Rational denom = cross(d1, d2);
        const Rational t = cross(q1 - p1, d2) / denom;
        out.kind = SegmentIntersection::Kind::ProperCross;
        out.p = p1 + t * d1;
        return out;
    }

    // Endpoint contacts.
    auto touch_at = [&](const Point& pt) {
        out.kind = SegmentIntersection::Kind::Touch;
        out.p = pt;
    };
    if (o1 == Orientation::Collinear && collinear_point_on_segment(p1, p2, q1)) { touch_at(q1); return out; }
    if (o2 == Orientation::Collinear && collinear_point_on_segment(p1, p2, q2)) { touch_at(q2); return out; }
    if (o3 == Orientation::Collinear && collinear_point_on_segment(q1, q2, p1)) { touch_at(p1); return out; }
    if (o4 == Orientation::Collinear && collinear_point_on_segment(q1, q2, p2)) { touch_at(p2); return out; }
    return out;  // disjoint
}

// ---------------------------------------------------------------------------
// Line/line intersection

struct LineIntersection {
    enum class Kind { Point_, Parallel, Coincident };
    Kind kind = Kind::Parallel;
    Point p;
};

inline LineIntersection line_intersection(const Point& a1, const Point& a2,
                                          const Point& b1, const Point& b2) {
    if (a1 == a2 || b1 == b2)
        throw std::invalid_argument("line_intersection: degenerate defining points");
    const Point d1 = a2 - a1, d2 = b2 - b1;
    const Rational denom = cross(d1, d2);
    LineIntersection out;
    if (denom.sign() == 0) {
        out.kind = cross(d1, b1 - a1).sign() == 0 ? LineIntersection::Kind::Coincident
                                                  : LineIntersection::Kind::Parallel;
        return out;
    }
    const Rational t = cross(b1 - a1, d2) / denom;
    out.kind = LineIntersection::Kind::Point_;
    out.p = a1 + t * d1;
    return out;
}

// ---------------------------------------------------------------------------
// Float-side primitives (Algorithm-2 territory; tolerance based by nature)

struct CircleIntersection {
    enum class Kind { None, One, Two };
    Kind kind = Kind::None;
    FloatPoint a, b;  // Two: a is left of the directed center line c1->c2
};

inline CircleIntersection circle_circle_intersection(const Circle& c1, const Circle& c2,
                                                     double tol) {
    const double dx = c2.center.x - c1.center.x;
    const double dy = c2.center.y - c1.center.y;
    const double d = std::hypot(dx, dy);
    if (d <= tol)
        throw std::domain_error("circle_circle_intersection: concentric circles");

    CircleIntersection out;
    const double rsum = c1.radius + c2.radius;
    const double rdiff = std::fabs(c1.radius - c2.radius);
    const double band = tol * std::max(1.0, std::max(c1.radius, c2.radius));
    if (d > rsum + band || d < rdiff - band) return out;

    const double x = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
    double h2 = c1.radius * c1.radius - x * x;
    if (h2 < 0) h2 = 0;
    const double h = std::sqrt(h2);
    const double ux = dx / d, uy = dy / d;
    const FloatPoint base{c1.center.x + x * ux, c1.center.y + x * uy};
    if (h <= band) {
        out.kind = CircleIntersection::Kind::One;
        out.a = base;
        return out;
    }
    out.kind = CircleIntersection::Kind::Two;
    out.a = {base.x - h * uy, base.y + h * ux};  // left of c1->c2
    out.b = {base.x + h * uy, base.y - h * ux};  // right of c1->c2
    return out;
}

enum class LineSide { Left, Right, OnLine };

inline LineSide point_side_of_line(const FloatPoint& a, const FloatPoint& b,
                                   const FloatPoint& p, double tol) {
    const double len = fdist(a, b);
    if (len <= tol)
        throw std::invalid_argument("point_side_of_line: defining points too close");
    const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (std::fabs(c) <= tol * len) return LineSide::OnLine;
    return c > 0 ? LineSide::Left : LineSide::Right;
}

}  // namespace starloc
