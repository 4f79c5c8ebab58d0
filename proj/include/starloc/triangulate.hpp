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
#include <map>
#include <stdexcept>
#include <vector>

#include "starloc/polygon.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// Triangulation of a polygon* by ear clipping. Degenerate (collinear)
// triangles are permitted, but a strictly convex ear is always preferred.

struct Triangulation {
    struct Tri {
        size_t a, b, c;  // vertex indices, CCW or collinear
        bool degenerate;
    };
    std::vector<Tri> triangles;
    std::vector<std::pair<size_t, size_t>> diagonals;
};

namespace detail {

inline bool point_strictly_in_triangle(const Point& a, const Point& b, const Point& c,
                                       const Point& q) {
    return orientation(a, b, q) == Orientation::CounterClockwise &&
           orientation(b, c, q) == Orientation::CounterClockwise &&
           orientation(c, a, q) == Orientation::CounterClockwise;
}

}  // namespace detail

inline Triangulation triangulate(const PolygonStarChain& poly) {
    const size_t n = poly.size();
    if (n < 3) throw ValidationError(PolygonErrorKind::TooFewVertices, "triangulate: n < 3");

    std::vector<size_t> act(n);
    for (size_t i = 0; i < n; ++i) act[i] = i;

    Triangulation out;
    auto pt = [&](size_t idx) -> const Point& { return poly.pt(idx); };

    while (act.size() > 3) {
        const size_t m = act.size();
        // Ear ranks: 1 = convex + clean diagonal, 2 = convex + touching
        // diagonal (vertices on it), 3 = collinear ear. Lowest rank wins,
        // lowest centre vertex index breaks ties.
        int best_rank = 4;
        size_t best_pos = 0;
        for (size_t pos = 0; pos < m; ++pos) {
            const size_t ia = act[(pos + m - 1) % m], ib = act[pos], ic = act[(pos + 1) % m];
            const Point &a = pt(ia), &b = pt(ib), &c = pt(ic);
            const Orientation o = orientation(a, b, c);
            int rank;
            if (o == Orientation::CounterClockwise) {
                if (a == c) continue;
                bool blocked = false, touched = false;
                for (size_t t = 0; t < m && !blocked; ++t) {
                    const size_t iq = act[t];
                    if (iq == ia || iq == ib || iq == ic) continue;
                    const Point& q = pt(iq);
                    if (detail::point_strictly_in_triangle(a, b, c, q)) blocked = true;
                    else if (orientation(a, c, q) == Orientation::Collinear &&
                             collinear_point_in_open_segment(a, c, q))
                        touched = true;
                }
                if (blocked) continue;
                if (!segment_in_polygon(poly, a, c)) continue;
                // The diagonal must stay locally inside: clipping across a
                // pinch is caught by the area audit below, the containment
                // test above rejects the common cases.
                rank = touched ? 2 : 1;
            } else if (o == Orientation::Collinear) {
                if (!collinear_point_in_open_segment(a, c, b)) continue;  // needle
                rank = 3;
            } else {
                continue;  // reflex
            }
            if (rank < best_rank || (rank == best_rank && ib < act[best_pos])) {
                best_rank = rank;
                best_pos = pos;
            }
            if (best_rank == 1 && ib == *std::min_element(act.begin(), act.end())) break;
        }
        if (best_rank == 4)
            throw ValidationError(PolygonErrorKind::NotWeaklySimple,
                                  "triangulate: no clippable ear found");

        const size_t m2 = act.size();
        const size_t ia = act[(best_pos + m2 - 1) % m2], ib = act[best_pos],
                     ic = act[(best_pos + 1) % m2];
        out.triangles.push_back(
            {ia, ib, ic, orientation(pt(ia), pt(ib), pt(ic)) == Orientation::Collinear});
        out.diagonals.emplace_back(std::min(ia, ic), std::max(ia, ic));
        act.erase(act.begin() + static_cast<long>(best_pos));
    }
    out.triangles.push_back({act[0], act[1], act[2],
                             orientation(pt(act[0]), pt(act[1]), pt(act[2])) ==
                                 Orientation::Collinear});

    // Audit: triangle count and exact area conservation.
    if (out.triangles.size() != n - 2)
        throw std::logic_error("triangulate: triangle count mismatch");
    Rational sum(0);
    for (const auto& t : out.triangles)
        sum += cross(pt(t.b) - pt(t.a), pt(t.c) - pt(t.a));
    if (sum != poly.area2())
        throw std::logic_error("triangulate: area not conserved");
    return out;
}

// ---------------------------------------------------------------------------
// Dual graph of a triangulation: a tree with one node per triangle and an
// edge per shared diagonal.

struct DualGraph {
    enum class LeafKind { Internal, ShortLeaf, LongLeaf };
    std::vector<std::vector<size_t>> adj;   // per triangle
    std::vector<LeafKind> kind;             // per triangle

    size_t leaf_count() const {
        size_t c = 0;
        for (const auto& k : kind)
            if (k != LeafKind::Internal) ++c;
        return c;
    }
};

inline DualGraph dual_graph(const Triangulation& t) {
    const size_t m = t.triangles.size();
    DualGraph g;
    g.adj.assign(m, {});
    g.kind.assign(m, DualGraph::LeafKind::Internal);
    std::map<std::pair<size_t, size_t>, std::vector<size_t>> by_side;
    for (size_t i = 0; i < m; ++i) {
        const auto& tr = t.triangles[i];
        const size_t idx[3] = {tr.a, tr.b, tr.c};
        for (int e = 0; e < 3; ++e) {
            auto key = std::minmax(idx[e], idx[(e + 1) % 3]);
            by_side[{key.first, key.second}].push_back(i);
        }
    }
    for (const auto& [side, tris] : by_side) {
        if (tris.size() == 2) {
            g.adj[tris[0]].push_back(tris[1]);
            g.adj[tris[1]].push_back(tris[0]);
        } else if (tris.size() > 2) {
            throw std::logic_error("dual_graph: side shared by more than two triangles");
        }
    }
    for (size_t i = 0; i < m; ++i) {
        if (g.adj[i].size() != 1) continue;
        const size_t nb = g.adj[i][0];
        const size_t deg = g.adj[nb].size();
        g.kind[i] = (deg == 3) ? DualGraph::LeafKind::ShortLeaf : DualGraph::LeafKind::LongLeaf;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Fan retriangulation: make every triangle incident to a given apex
// non-degenerate (the apex keeps its two associated dual-graph leaves).

inline Triangulation retriangulate_fan_nondegenerate(const Triangulation& t,
                                                     const PolygonStarChain& poly,
                                                     size_t apex) {
    Triangulation cur = t;
    auto pt = [&](size_t i) -> const Point& { return poly.pt(i); };
    auto incident = [&](const Triangulation::Tri& tr) {
        return tr.a == apex || tr.b == apex || tr.c == apex;
    };
    // Far pair of a fan triangle, ordered by distance from the apex.
    auto far_pair = [&](const Triangulation::Tri& tr) {
        std::pair<size_t, size_t> o{0, 0};
        if (tr.a == apex) o = {tr.b, tr.c};
        else if (tr.b == apex) o = {tr.c, tr.a};
        else o = {tr.a, tr.b};
        if (sq_dist(pt(apex), pt(o.second)) < sq_dist(pt(apex), pt(o.first)))
            std::swap(o.first, o.second);
        return o;
    };
    auto find_fan_mate = [&](size_t self, size_t shared) -> long {
        // Fan triangle (other than self) having both apex and shared.
        for (size_t k = 0; k < cur.triangles.size(); ++k) {
            if (k == self) continue;
            const auto& o = cur.triangles[k];
            if (!incident(o)) continue;
            if (o.a == shared || o.b == shared || o.c == shared) return static_cast<long>(k);
        }
        return -1;
    };

    // Pass 1: compact runs of adjacent degenerate fan triangles. Two
    // degenerates sharing (apex, q) with far order p < q < r become
    // (apex, p, r) and (p, q, r); the latter leaves the fan.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cur.triangles.size() && !changed; ++i) {
            if (!incident(cur.triangles[i]) || !cur.triangles[i].degenerate) continue;
            auto [p, q] = far_pair(cur.triangles[i]);
            const long j = find_fan_mate(i, q);
            if (j < 0) continue;
            auto& tj = cur.triangles[static_cast<size_t>(j)];
            if (!tj.degenerate) continue;
            auto [q2, r] = far_pair(tj);
            if (q2 != q) continue;
            cur.triangles[i] = {apex, p, r, true};
            tj = {p, q, r, true};
            changed = true;
        }
    }

    // Pass 2: flip each isolated degenerate fan triangle out of the fan using
    // a non-degenerate fan neighbour.
    changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cur.triangles.size() && !changed; ++i) {
            const auto& tr = cur.triangles[i];
            if (!incident(tr) || !tr.degenerate) continue;
            auto [u1, uj] = far_pair(tr);
            // The run is enclosed between non-degenerate fan triangles, so the
            // far diagonal (apex, uj) has a non-degenerate mate; u1 lies on
            // that mate's side (apex, uj), which makes the flip valid.
            const long mate = find_fan_mate(i, uj);
            if (mate < 0 || cur.triangles[static_cast<size_t>(mate)].degenerate)
                throw std::logic_error(
                    "retriangulate_fan_nondegenerate: degenerate fan triangle has no "
                    "non-degenerate far neighbour to flip with");
            const auto& mt = cur.triangles[static_cast<size_t>(mate)];
            auto [m1, m2] = far_pair(mt);
            const size_t w = (m1 == uj) ? m2 : m1;
            cur.triangles[i] = {apex, u1, w,
                                orientation(pt(apex), pt(u1), pt(w)) ==
                                    Orientation::Collinear};
            cur.triangles[static_cast<size_t>(mate)] = {
                u1, uj, w, orientation(pt(u1), pt(uj), pt(w)) == Orientation::Collinear};
            changed = true;
        }
    }

    // Recompute the diagonal list from triangle sides that are not polygon edges.
    cur.diagonals.clear();
    std::map<std::pair<size_t, size_t>, int> count;
    const size_t n = poly.size();
    for (const auto& tr : cur.triangles) {
        const size_t idx[3] = {tr.a, tr.b, tr.c};
        for (int e = 0; e < 3; ++e) {
            auto key = std::minmax(idx[e], idx[(e + 1) % 3]);
            const bool edge = (key.second - key.first == 1) ||
                              (key.first == 0 && key.second == n - 1);
            if (!edge) count[{key.first, key.second}]++;
        }
    }
    for (const auto& [k, c] : count)
        if (c >= 1) cur.diagonals.emplace_back(k.first, k.second);
    return cur;
}

}  // namespace starloc
