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
#include <cmath>
#include <optional>
#include <vector>

#include "starloc/polygon.hpp"

namespace starloc {

// A point of the form base + mu * dir/|dir|. Tower positions live on rational
// support segments at exactly rational distances, which makes their
// coordinates quadratic irrationals; every predicate against rational data
// reduces to the sign of alpha + beta*sqrt(C) with rational alpha, beta, C.
struct SymPoint {
    Point base;
    Rational mu;
    Point dir;  // need not be unit; ignored when mu == 0

    bool is_exactly_rational() const {
        if (mu.sign() == 0) return true;
        return exact_sqrt(dot(dir, dir)).has_value();
    }
    std::optional<Point> as_rational() const {
        if (mu.sign() == 0) return base;
        auto s = exact_sqrt(dot(dir, dir));
        if (!s) return std::nullopt;
        const Rational f = mu / *s;
        return Point{base.x + f * dir.x, base.y + f * dir.y};
    }
};

/// Sign of alpha + beta*sqrt(C), C > 0.
inline int sign_a_plus_b_sqrtC(const Rational& alpha, const Rational& beta, const Rational& C) {
    const int sa = alpha.sign(), sb = beta.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const int cmp = (alpha * alpha - beta * beta * C).sign();  // |alpha|^2 vs beta^2 C
    if (cmp == 0) return 0;
    return (cmp > 0) ? sa : sb;
}

namespace symdetail {

struct Lin {  // alpha + beta/sqrt(C); sign equals sign(alpha*sqrt(C) + beta)
    Rational alpha, beta, C;
    int sign() const {
        if (beta.sign() == 0 || C.sign() == 0) return alpha.sign();
        return sign_a_plus_b_sqrtC(beta, alpha, C);
    }
};

}  // namespace symdetail

/// sign of cross(q - p, t - p).
inline int orient_sym(const Point& p, const Point& q, const SymPoint& t) {
    if (auto r = t.as_rational())
        return cross(q - p, *r - p).sign();
    const Rational alpha = cross(q - p, t.base - p);
    const Rational beta = t.mu * cross(q - p, t.dir);
    return symdetail::Lin{alpha, beta, dot(t.dir, t.dir)}.sign();
}

/// sign of (u - t) . (w - t)  (<= 0 iff t between u and w when collinear).
inline int between_dot_sym(const Point& u, const Point& w, const SymPoint& t) {
    if (auto r = t.as_rational())
        return dot(u - *r, w - *r).sign();
    const Rational C = dot(t.dir, t.dir);
    const Point zu = u - t.base, zw = w - t.base;
    // (zu - f*dir).(zw - f*dir) with f = mu/sqrt(C):
    const Rational alpha = dot(zu, zw) + t.mu * t.mu;  // f^2*|dir|^2 = mu^2
    const Rational beta = -t.mu * (dot(zu, t.dir) + dot(zw, t.dir));
    return symdetail::Lin{alpha, beta, C}.sign();
}

/// sign of (a - u) . (t - u): between test for rational u on segment [a, t].
inline int endpoint_between_sym(const Point& a, const Point& u, const SymPoint& t) {
    if (auto r = t.as_rational())
        return dot(a - u, *r - u).sign();
    const Rational alpha = dot(a - u, t.base - u);
    const Rational beta = t.mu * dot(a - u, t.dir);
    return symdetail::Lin{alpha, beta, dot(t.dir, t.dir)}.sign();
}

/// sign of (t.y - c) and (t.x - c).
inline int ycmp_sym(const SymPoint& t, const Rational& c) {
    if (auto r = t.as_rational()) return (r->y - c).sign();
    return symdetail::Lin{t.base.y - c, t.mu * t.dir.y, dot(t.dir, t.dir)}.sign();
}
inline int xcmp_sym(const SymPoint& t, const Rational& c) {
    if (auto r = t.as_rational()) return (r->x - c).sign();
    return symdetail::Lin{t.base.x - c, t.mu * t.dir.x, dot(t.dir, t.dir)}.sign();
}

/// Closed containment of a symbolic point in a polygon chain.
inline Containment point_in_chain_sym(const std::vector<Point>& vs, const SymPoint& t) {
    if (auto r = t.as_rational()) return point_in_chain(vs, *r);
    const size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& u = vs[i];
        const Point& w = vs[(i + 1) % n];
        if (orient_sym(u, w, t) == 0 && between_dot_sym(u, w, t) <= 0)
            return Containment::Boundary;
    }
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const Point& u = vs[i];
        const Point& w = vs[(i + 1) % n];
        const bool u_below = ycmp_sym(t, u.y) >= 0;  // u.y <= t.y
        const bool w_below = ycmp_sym(t, w.y) >= 0;
        if (u_below == w_below) continue;
        const int o = orient_sym(u, w, t);
        if (w.y > u.y) {
            if (o > 0) inside = !inside;
        } else {
            if (o < 0) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

/// Segment [a, t] contained in the closed polygon region (touching allowed).
/// In the irrational case every single-point boundary contact happens at a
/// polygon vertex, so subdivision points stay rational.
inline bool segment_in_polygon_sym(const std::vector<Point>& vs, const Point& a,
                                   const SymPoint& t) {
    if (auto r = t.as_rational()) {
        if (*r == a) return point_in_chain(vs, a) != Containment::Outside;
        struct Wrap {
            const std::vector<Point>& v;
            std::vector<Point> points() const { return v; }
        } w{vs};
        return segment_in_polygon(w, a, *r);
    }
    const size_t n = vs.size();
    auto opp = [](int x, int y) { return x * y < 0; };

    std::vector<Point> touches;
    for (size_t i = 0; i < n; ++i) {
        const Point& u = vs[i];
        const Point& w = vs[(i + 1) % n];
        const int o_u = -orient_sym(a, u, t);  // orient(a, t, u)
        const int o_w = -orient_sym(a, w, t);
        const int o3 = static_cast<int>(orientation(u, w, a));
        const int o4 = orient_sym(u, w, t);
        if (opp(o_u, o_w) && opp(o3, o4)) return false;
        if (o_u == 0 && endpoint_between_sym(a, u, t) <= 0) touches.push_back(u);
        if (o_w == 0 && endpoint_between_sym(a, w, t) <= 0) touches.push_back(w);
        // a or t lying on the edge only bounds an interval; midpoint probes
        // below handle those cases.
    }

    // Order touches along the segment by dot(x - a, t - a).
    auto key_less = [&](const Point& x, const Point& y) {
        // sign of dot(x - y, t - a)
        const Point d = x - y;
        if (auto r = t.as_rational()) return dot(d, *r - a).sign() < 0;
        const Rational alpha = dot(d, t.base - a);
        const Rational beta = t.mu * dot(d, t.dir);
        return symdetail::Lin{alpha, beta, dot(t.dir, t.dir)}.sign() < 0;
    };
    std::sort(touches.begin(), touches.end(), key_less);
    touches.erase(std::unique(touches.begin(), touches.end()), touches.end());

    const Rational half(1, 2);
    Point seg_start = a;
    for (const auto& v : touches) {
        const Point mid{half * (seg_start.x + v.x), half * (seg_start.y + v.y)};
        if (point_in_chain(vs, mid) == Containment::Outside) return false;
        seg_start = v;
    }
    // Final interval [seg_start, t]: midpoint is (seg_start + base)/2 shifted
    // by half the irrational offset.
    SymPoint mid{Point{half * (seg_start.x + t.base.x), half * (seg_start.y + t.base.y)},
                 half * t.mu, t.dir};
    return point_in_chain_sym(vs, mid) != Containment::Outside;
}

// ---------------------------------------------------------------------------
// Double materialization (wire format / distances)

inline long double sqrt_refined(long double v) {
    if (v <= 0) return 0;
    long double s = sqrtl(v);
    s = 0.5L * (s + v / s);
    return s;
}

inline FloatPoint sym_to_double(const SymPoint& t) {
    if (auto r = t.as_rational()) return {r->x.to_double(), r->y.to_double()};
    const long double C = static_cast<long double>(dot(t.dir, t.dir).to_double());
    const long double inv = static_cast<long double>(t.mu.to_double()) / sqrt_refined(C);
    return {static_cast<double>(static_cast<long double>(t.base.x.to_double()) +
                                inv * static_cast<long double>(t.dir.x.to_double())),
            static_cast<double>(static_cast<long double>(t.base.y.to_double()) +
                                inv * static_cast<long double>(t.dir.y.to_double()))};
}

/// Euclidean distance from rational point a to symbolic point t, in doubles.
inline double sym_distance(const Point& a, const SymPoint& t) {
    if (auto r = t.as_rational()) {
        const long double d2 = static_cast<long double>(sq_dist(a, *r).to_double());
        return static_cast<double>(sqrt_refined(d2));
    }
    const Point z = t.base - a;
    const long double C = static_cast<long double>(dot(t.dir, t.dir).to_double());
    const long double mu = static_cast<long double>(t.mu.to_double());
    const long double d2 = static_cast<long double>(dot(z, z).to_double()) + mu * mu +
                           2.0L * mu * static_cast<long double>(dot(z, t.dir).to_double()) /
                               sqrt_refined(C);
    return static_cast<double>(sqrt_refined(d2));
}

}  // namespace starloc
