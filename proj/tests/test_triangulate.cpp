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
#include <catch2/catch_amalgamated.hpp>

#include "starloc/triangulate.hpp"

using namespace starloc;

namespace {
PolygonStarChain chain_of(std::vector<Point> pts) {
    PolygonStarChain c;
    for (auto& p : pts) c.v.push_back({p, true});
    c.edge_on_input.assign(c.v.size(), true);
    return c;
}

size_t degenerate_count(const Triangulation& t) {
    size_t d = 0;
    for (const auto& tr : t.triangles)
        if (tr.degenerate) ++d;
    return d;
}
}  // namespace

TEST_CASE("convex quadrilateral: 2 triangles, 1 diagonal") {
    auto q = chain_of({{0, 0}, {3, 0}, {4, 2}, {1, 3}});
    auto t = triangulate(q);
    CHECK(t.triangles.size() == 2);
    CHECK(t.diagonals.size() == 1);
    CHECK(degenerate_count(t) == 0);
}

TEST_CASE("unit square: deterministic lowest-index ear") {
    auto sq = chain_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto t = triangulate(sq);
    REQUIRE(t.triangles.size() == 2);
    // Ear at centre vertex 0 clips first: triangle (3, 0, 1).
    CHECK(t.triangles[0].a == 3);
    CHECK(t.triangles[0].b == 0);
    CHECK(t.triangles[0].c == 1);
}

TEST_CASE("pinched polygon* forces one degenerate triangle") {
    // Bottom edge passes through the lobe-joint vertex (2,0).
    auto pinched = chain_of({{0, 0}, {4, 0}, {3, 3}, {2, 0}, {1, 3}});
    auto t = triangulate(pinched);
    REQUIRE(t.triangles.size() == 3);
    CHECK(degenerate_count(t) == 1);
    for (const auto& tr : t.triangles)
        if (tr.degenerate)
            CHECK(orientation(pinched.pt(tr.a), pinched.pt(tr.b), pinched.pt(tr.c)) ==
                  Orientation::Collinear);
}

TEST_CASE("triangle dual graph: single node") {
    auto tri = chain_of({{0, 0}, {2, 0}, {1, 2}});
    auto t = triangulate(tri);
    auto g = dual_graph(t);
    REQUIRE(g.adj.size() == 1);
    CHECK(g.adj[0].empty());
}

TEST_CASE("convex hexagon: path of 4 nodes with 2 long leaves") {
    auto hex = chain_of({{0, 0}, {4, 0}, {6, 2}, {4, 5}, {1, 5}, {-1, 2}});
    auto t = triangulate(hex);
    auto g = dual_graph(t);
    REQUIRE(g.adj.size() == 4);
    size_t leaves = 0, longs = 0;
    for (size_t i = 0; i < 4; ++i) {
        if (g.adj[i].size() == 1) {
            ++leaves;
            if (g.kind[i] == DualGraph::LeafKind::LongLeaf) ++longs;
        }
    }
    CHECK(leaves == 2);
    CHECK(longs == 2);  // path interior nodes have degree 2
}

TEST_CASE("dual graph is a tree") {
    auto p = chain_of({{0, 0}, {8, 0}, {8, 5}, {6, 1}, {5, 6}, {3, 1}, {2, 7}, {0, 5}});
    auto t = triangulate(p);
    auto g = dual_graph(t);
    size_t edges = 0;
    for (const auto& a : g.adj) edges += a.size();
    CHECK(edges / 2 == t.triangles.size() - 1);
}

TEST_CASE("fan retriangulation removes a degenerate fan triangle") {
    // Apex v0 = (0,0); u1 = (2,0) and u2 = (4,0) lie on one ray from the
    // apex, with lobes hanging below; the fan contains degenerate (0, u1, u2).
    auto p = chain_of({{0, 0}, {2, -2}, {2, 0}, {4, -2}, {4, 0}, {2, 3}});
    auto t = triangulate(p);

    Triangulation manual;
    manual.triangles = {{0, 1, 2, false}, {2, 3, 4, false}, {0, 2, 4, true}, {0, 4, 5, false}};
    manual.diagonals = {{0, 2}, {2, 4}, {0, 4}};
    Rational area(0);
    for (const auto& tr : manual.triangles)
        area += cross(p.pt(tr.b) - p.pt(tr.a), p.pt(tr.c) - p.pt(tr.a));
    REQUIRE(area == p.area2());  // the manual triangulation tiles the polygon

    auto fixed = retriangulate_fan_nondegenerate(manual, p, 0);
    for (const auto& tr : fixed.triangles) {
        const bool incident = (tr.a == 0 || tr.b == 0 || tr.c == 0);
        if (incident) CHECK(!tr.degenerate);
    }
    CHECK(fixed.triangles.size() == manual.triangles.size());
    Rational area2(0);
    for (const auto& tr : fixed.triangles)
        area2 += cross(p.pt(tr.b) - p.pt(tr.a), p.pt(tr.c) - p.pt(tr.a));
    CHECK(area2 == p.area2());
    std::vector<bool> seen(p.size(), false);
    for (const auto& tr : fixed.triangles) seen[tr.a] = seen[tr.b] = seen[tr.c] = true;
    for (size_t i = 0; i < p.size(); ++i) CHECK(seen[i]);

    // Already clean fan: nothing to do.
    auto clean = retriangulate_fan_nondegenerate(t, p, 0);
    CHECK(clean.triangles.size() == t.triangles.size());
}

TEST_CASE("fan retriangulation: run of two degenerate triangles") {
    auto p = chain_of({{0, 0}, {2, -2}, {2, 0}, {4, -2}, {4, 0}, {6, -2}, {6, 0}, {3, 4}});
    Triangulation manual;
    manual.triangles = {{0, 1, 2, false}, {2, 3, 4, false}, {4, 5, 6, false},
                        {0, 2, 4, true},  {0, 4, 6, true},  {0, 6, 7, false}};
    manual.diagonals = {{0, 2}, {2, 4}, {0, 4}, {4, 6}, {0, 6}};
    Rational area(0);
    for (const auto& tr : manual.triangles)
        area += cross(p.pt(tr.b) - p.pt(tr.a), p.pt(tr.c) - p.pt(tr.a));
    REQUIRE(area == p.area2());

    auto fixed = retriangulate_fan_nondegenerate(manual, p, 0);
    for (const auto& tr : fixed.triangles) {
        const bool incident = (tr.a == 0 || tr.b == 0 || tr.c == 0);
        if (incident) CHECK(!tr.degenerate);
    }
    CHECK(fixed.triangles.size() == manual.triangles.size());
}
