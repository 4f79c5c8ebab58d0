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

#include <numeric>
#include <random>
#include <vector>

#include "starloc/polygon.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// Comb: k tall thin spikes over a shallow strip; no point sees the interior
// of two different spikes. n = 3k + q, the extra q vertices kink one spike.

inline SimplePolygon gen_comb(int k, int q) {
    if (k < 1 || q < 0 || q > 2) throw std::invalid_argument("gen_comb: k >= 1, q in {0,1,2}");
    const Rational H(50);         // spike height
    const Rational base_y(2);

    // Quadratic jitters keep every same-role triple off a common line; the
    // general-position validation below re-checks all triples exactly.
    std::vector<Point> pts;
    auto tip_x = [&](int i) { return Rational(3 * i) + Rational(1, 2) + Rational(i, 97); };
    auto tip_y = [&](int i) { return H + Rational(i * i, 89) + Rational(i, 83); };
    auto valley_l = [&](int i) { return Rational(3 * i) + Rational(i, 127); };
    auto valley_r = [&](int i) { return Rational(3 * i + 1) + Rational(i, 131); };
    auto vy_l = [&](int i) { return base_y + Rational(i * i, 101) + Rational(i, 109); };
    auto vy_r = [&](int i) {
        return base_y + Rational(i * i, 103) + Rational(i, 113) + Rational(1, 107);
    };

    const Rational B = Rational(3 * (k - 1) + 1);  // bottom-right corner x
    if (k == 1) {
        // Triangle (plus optional kinks).
        pts = {{Rational(0), Rational(0)}, {B, Rational(0)}, {tip_x(0), tip_y(0)}};
    } else {
        pts.push_back({Rational(0), Rational(0)});
        pts.push_back({B, Rational(0)});
        // Right-most spike k-1: up the right side to its tip, down to valley.
        pts.push_back({tip_x(k - 1), tip_y(k - 1)});
        pts.push_back({valley_l(k - 1), vy_l(k - 1)});
        for (int i = k - 2; i >= 1; --i) {
            pts.push_back({valley_r(i), vy_r(i)});
            pts.push_back({tip_x(i), tip_y(i)});
            pts.push_back({valley_l(i), vy_l(i)});
        }
        pts.push_back({valley_r(0), vy_r(0)});
        pts.push_back({tip_x(0), tip_y(0)});
    }

    // q extra vertices: slight outward kinks on spike 0's left edge, i.e. on
    // the closing side from tip(0) back to (0,0).
    if (q >= 1) {
        const Point a = pts.back();          // tip of spike 0
        const Point b = pts.front();         // (0,0)
        const Rational t1(1, 3);
        Point kink1{t1 * b.x + (Rational(1) - t1) * a.x - Rational(1, 13),
                    t1 * b.y + (Rational(1) - t1) * a.y};
        pts.push_back(kink1);
    }
    if (q == 2) {
        const Point a = pts[pts.size() - 2];  // tip again
        const Point b = pts.front();
        const Rational t2(2, 3);
        Point kink2{t2 * b.x + (Rational(1) - t2) * a.x - Rational(1, 11),
                    t2 * b.y + (Rational(1) - t2) * a.y};
        pts.push_back(kink2);
    }
    auto sp = validate_simple_polygon(pts);
    if (sp.size() != static_cast<size_t>(3 * k + q))
        throw std::logic_error("gen_comb: vertex count mismatch");
    return sp;
}

// ---------------------------------------------------------------------------
// Counterexample family: s double-spikes, n = 5s + 2. Each double-spike is a
// pair of tall spikes with a shallow dip between them; both spikes of a pair
// are watchable from inside the dip but no boundary point does it.

inline SimplePolygon gen_toth_counterexample(int s) {
    if (s < 1) throw std::invalid_argument("gen_toth_counterexample: s >= 1");
    const Rational H(40);
    std::vector<Point> pts;
    pts.push_back({Rational(-1), Rational(0)});
    pts.push_back({Rational(5 * s), Rational(0)});
    for (int i = s - 1; i >= 0; --i) {
        const Rational x0(5 * i);
        // Five vertices per double-spike: right base, right tip, mid dip,
        // left tip, left base. Quadratic jitters keep general position.
        pts.push_back({x0 + Rational(4) + Rational(i, 97), Rational(2) + Rational(i * i, 95)});
        pts.push_back(
            {x0 + Rational(3) + Rational(i, 89), H + Rational(i * i, 87) + Rational(i, 85)});
        pts.push_back({x0 + Rational(2) + Rational(i, 79), Rational(4) + Rational(i * i, 77)});
        pts.push_back({x0 + Rational(1) + Rational(i, 73),
                       H + Rational(2, 3) + Rational(i * i, 71) + Rational(i, 69)});
        pts.push_back({x0 + Rational(i, 67), Rational(2) + Rational(i * i, 65) + Rational(1, 63)});
    }
    auto sp = validate_simple_polygon(pts);
    if (sp.size() != static_cast<size_t>(5 * s + 2))
        throw std::logic_error("gen_toth_counterexample: vertex count mismatch");
    return sp;
}

/// The 8-gon with two star-shaped halves: v1..v5 above the cut line and
/// v1 v5 v6 v7 v8 below-right of it.
inline SimplePolygon gen_fig13() {
    std::vector<Point> pts = {
        {0, 0},                            // v1
        {Rational(4, 5), 5},               // v2 (left spike)
        {2, 1},                            // v3 (reflex dip)
        {3, Rational(21, 4)},              // v4 (right spike)
        {4, 0},                            // v5
        {5, -3},                           // v6
        {Rational(16, 3), -6},             // v7
        {-1, -5},                          // v8
    };
    return validate_simple_polygon(pts);
}

// ---------------------------------------------------------------------------
// Random simple polygons: random points untangled by 2-opt moves, snapped to
// double-exact rationals, retried until the general-position check passes.

namespace gendetail {

inline bool untangle(std::vector<Point>& pts) {
    const size_t n = pts.size();
    for (int round = 0; round < 4000; ++round) {
        bool crossed = false;
        for (size_t i = 0; i < n && !crossed; ++i) {
            for (size_t j = i + 1; j < n && !crossed; ++j) {
                const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent) continue;
                auto r = segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]);
                if (r.kind == SegmentIntersection::Kind::Disjoint) continue;
                // Reverse the chain between the two edges.
                std::reverse(pts.begin() + static_cast<long>(i) + 1,
                             pts.begin() + static_cast<long>(j) + 1);
                crossed = true;
            }
        }
        if (!crossed) return true;
    }
    return false;
}

}  // namespace gendetail

inline SimplePolygon gen_random_simple(int n, unsigned long seed) {
    if (n < 3) throw std::invalid_argument("gen_random_simple: n >= 3");
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull);
    for (int attempt = 0; attempt < 4000; ++attempt) {
        std::vector<Point> pts;
        pts.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            // Coordinates on a fine dyadic grid: exactly double-representable.
            const long xi = static_cast<long>(rng() % (1u << 16));
            const long yi = static_cast<long>(rng() % (1u << 16));
            pts.push_back({Rational(xi, 1024), Rational(yi, 1024)});
        }
        bool dup = false;
        for (size_t i = 0; i < pts.size() && !dup; ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j]) {
                    dup = true;
                    break;
                }
        if (dup) continue;
        if (!gendetail::untangle(pts)) continue;
        try {
            return validate_simple_polygon(pts);
        } catch (const ValidationError&) {
            continue;
        }
    }
    throw std::runtime_error("gen_random_simple: failed to build a polygon");
}

// ---------------------------------------------------------------------------
// Windmill: a 3B-1 vertex polygon (n = 3k+2 with k = B-1) whose chambers
// limit visibility so that no diagonal splits off a piece of size 2 mod 3;
// its triangulation dual has exactly k+1 leaves.

inline SimplePolygon gen_windmill(int blades) {
    if (blades < 4) throw std::invalid_argument("gen_windmill: needs at least 4 blades");
    const int B = blades;
    std::vector<Point> pts;
    const double two_pi = 6.283185307179586;
    auto rp = [&](double r, double ang, long pert_num, long pert_den) {
        const double x = r * std::cos(ang);
        const double y = r * std::sin(ang);
        return Point{Rational::from_double(x) + Rational(pert_num, pert_den),
                     Rational::from_double(y) + Rational(1, pert_den + 7)};
    };
    // Per blade: hub point, long leaning tip, outer trailing point. The tip
    // leans far into the next sector so chambers only see their neighbours.
    for (int j = 0; j < B; ++j) {
        const double a = two_pi * j / B;
        const double lean = two_pi * 0.78 / B;
        const double trail = two_pi * 0.30 / B;
        pts.push_back(rp(1.0, a, j + 1, 10007));               // hub
        pts.push_back(rp(10.0, a + lean, j + 2, 10037));       // tip
        pts.push_back(rp(6.0, a + trail, j + 3, 10067));       // trailing notch
    }
    // Drop one trailing notch to make n = 3B - 1 (= 3k + 2 for k = B - 1).
    pts.pop_back();
    return validate_simple_polygon(pts);
}

}  // namespace starloc
