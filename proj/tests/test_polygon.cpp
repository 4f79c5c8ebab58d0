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

#include "starloc/polygon.hpp"

using namespace starloc;

namespace {
PolygonStarChain chain_of(std::vector<Point> pts) {
    PolygonStarChain c;
    for (auto& p : pts) c.v.push_back({p, true});
    c.edge_on_input.assign(c.v.size(), true);
    return c;
}
}  // namespace

TEST_CASE("validate accepts the unit square and fixes orientation") {
    auto p = validate_simple_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(p.size() == 4);
    CHECK(polygon_area2(p.vertices).sign() > 0);
    auto q = validate_simple_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});  // clockwise input
    CHECK(polygon_area2(q.vertices).sign() > 0);
}

TEST_CASE("validate rejections") {
    auto kind_of = [](std::vector<Point> pts) {
        try {
            validate_simple_polygon(std::move(pts));
        } catch (const ValidationError& e) {
            return e.kind;
        }
        return PolygonErrorKind::PointOutside;  // sentinel: no error
    };
    CHECK(kind_of({{0, 0}, {1, 0}}) == PolygonErrorKind::TooFewVertices);
    CHECK(kind_of({{0, 0}, {1, 0}, {2, 0}, {1, 1}}) == PolygonErrorKind::CollinearTriple);
    CHECK(kind_of({{0, 0}, {1, 1}, {1, 0}, {0, 1}}) == PolygonErrorKind::SelfIntersecting);
    CHECK(kind_of({{0, 0}, {1, 0}, {1, 0}, {0, 1}}) == PolygonErrorKind::DuplicateVertex);
    // Non-adjacent collinearity is also a general-position violation.
    CHECK(kind_of({{0, 0}, {4, 0}, {4, 4}, {2, 2}, {0, 4}}) == PolygonErrorKind::CollinearTriple);
}

TEST_CASE("simplify removes a straight vertex") {
    auto c = chain_of({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}});
    auto s = simplify(c);
    REQUIRE(s.size() == 4);
    CHECK(s.pt(0) == Point(0, 0));
    CHECK(s.pt(1) == Point(2, 0));
    CHECK(s.guarded_externally.empty());
    CHECK(s.area2() == c.area2());
}

TEST_CASE("simplify is a fixed point on the square") {
    auto c = chain_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto s = simplify(c);
    CHECK(s.size() == 4);
    auto s2 = simplify(s);
    CHECK(s2.size() == 4);
}

TEST_CASE("simplify deletes a needle and records the guarded segment") {
    // Chain doubles back: (2,0) -> (4,0) -> (3,0): the tip (4,0) has angle 0;
    // simplification removes it and keeps the shorter span guarded.
    auto c = chain_of({{0, 0}, {2, 0}, {4, 0}, {3, 0}, {3, 2}, {0, 2}});
    auto s = simplify(c);
    CHECK(s.size() == 4);  // (2,0) straightens afterwards and goes too
    REQUIRE(s.guarded_externally.size() == 1);
    CHECK(s.guarded_externally[0].a == Point(3, 0));
    CHECK(s.guarded_externally[0].b == Point(4, 0));
    CHECK(s.area2() == c.area2());
}

TEST_CASE("simplify idempotence") {
    auto c = chain_of({{0, 0}, {3, 0}, {6, 0}, {6, 1}, {6, 4}, {3, 4}, {0, 4}, {0, 2}});
    auto s1 = simplify(c);
    auto s2 = simplify(s1);
    REQUIRE(s1.size() == s2.size());
    for (size_t i = 0; i < s1.size(); ++i) CHECK(s1.pt(i) == s2.pt(i));
}

TEST_CASE("simplify degenerate collapse") {
    auto c = chain_of({{0, 0}, {1, 0}, {2, 0}});
    CHECK_THROWS_AS(simplify(c), ValidationError);
}

TEST_CASE("point containment") {
    const std::vector<Point> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(point_in_chain(sq, {1, 1}) == Containment::Inside);
    CHECK(point_in_chain(sq, {3, 1}) == Containment::Outside);
    CHECK(point_in_chain(sq, {2, 1}) == Containment::Boundary);
    CHECK(point_in_chain(sq, {0, 0}) == Containment::Boundary);
    const std::vector<Point> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    CHECK(point_in_chain(ell, Point(Rational(3, 2), Rational(3, 2))) == Containment::Outside);
    CHECK(point_in_chain(ell, Point(Rational(1, 2), Rational(3, 2))) == Containment::Inside);
    CHECK(point_in_chain(ell, {1, 1}) == Containment::Boundary);
}

TEST_CASE("segment containment with boundary touching allowed") {
    const std::vector<Point> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    CHECK(segment_in_polygon(ell, {0, 0}, {2, 1}));
    CHECK(!segment_in_polygon(ell, Point(Rational(3, 2), Rational(1, 2)),
                              Point(Rational(1, 2), Rational(7, 4))));  // cuts across the notch
    // Passing exactly through the reflex corner stays inside (closed sight).
    CHECK(segment_in_polygon(ell, Point(Rational(3, 2), Rational(1, 2)),
                             Point(Rational(1, 2), Rational(3, 2))));
    CHECK(segment_in_polygon(ell, {0, 2}, {2, 0}));  // grazes the reflex vertex (1,1)
    CHECK(segment_in_polygon(ell, {0, 0}, {2, 0}));  // runs along an edge
}

TEST_CASE("ray_exit") {
    const std::vector<Point> sq{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    SimplePolygon p{sq};
    auto re = ray_exit(p, {1, 1}, {1, 0});
    CHECK(re.p == Point(4, 1));
    CHECK(re.edge == 1);
    auto re2 = ray_exit(p, {1, 1}, {-1, -1});
    CHECK(re2.p == Point(0, 0));

    // From a boundary point heading out: exits immediately.
    auto re3 = ray_exit(p, {4, 2}, {1, 0});
    CHECK(re3.t.sign() == 0);
    CHECK(re3.p == Point(4, 2));

    // Grazing a reflex vertex continues to the far wall.
    const std::vector<Point> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    SimplePolygon pe{ell};
    auto re4 = ray_exit(pe, {0, 2}, {1, -1});
    CHECK(re4.p == Point(2, 0));
}

TEST_CASE("reflex counting") {
    auto ell = chain_of({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    CHECK(reflex_count(ell) == 1);
    CHECK(is_reflex(ell, 3));
    auto sq = chain_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(reflex_count(sq) == 0);
}

TEST_CASE("validate_star_chain accepts a pinched weakly simple chain") {
    // Two lobes joined at (2,0), which lies on the bottom edge (0,0)-(4,0).
    auto c = chain_of({{0, 0}, {4, 0}, {3, 3}, {2, 0}, {1, 3}});
    CHECK_NOTHROW(validate_star_chain(c));
}
