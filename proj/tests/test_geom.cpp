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

#include <cmath>
#include <random>

#include "starloc/geom.hpp"
#include "starloc/symbolic.hpp"

using namespace starloc;

namespace {
Point rp(std::mt19937_64& rng) {
    auto r = [&]() {
        return Rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
    };
    return {r(), r()};
}
}  // namespace

TEST_CASE("orientation basics") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::CounterClockwise);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == Orientation::Collinear);
    CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == Orientation::Clockwise);
}

TEST_CASE("orientation antisymmetry under swaps") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        Point a = rp(rng), b = rp(rng), c = rp(rng);
        const int o = static_cast<int>(orientation(a, b, c));
        CHECK(static_cast<int>(orientation(b, a, c)) == -o);
        CHECK(static_cast<int>(orientation(a, c, b)) == -o);
        CHECK(static_cast<int>(orientation(c, b, a)) == -o);
    }
}

TEST_CASE("segments_intersect classification") {
    auto r1 = segments_intersect({0, 0}, {2, 0}, {1, -1}, {1, 1});
    REQUIRE(r1.kind == SegmentIntersection::Kind::ProperCross);
    CHECK(r1.p == Point(1, 0));

    auto r2 = segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 0});
    REQUIRE(r2.kind == SegmentIntersection::Kind::Touch);
    CHECK(r2.p == Point(1, 0));

    auto r3 = segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0});
    REQUIRE(r3.kind == SegmentIntersection::Kind::Overlap);
    CHECK(r3.p == Point(1, 0));
    CHECK(r3.q == Point(2, 0));

    CHECK(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}).kind ==
          SegmentIntersection::Kind::Disjoint);
    CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {1, 1}).kind ==
          SegmentIntersection::Kind::Touch);
    CHECK_THROWS_AS(segments_intersect({0, 0}, {0, 0}, {1, 0}, {2, 0}), std::invalid_argument);
}

TEST_CASE("line_intersection") {
    auto li = line_intersection({1, 0}, {1, 5}, {0, 2}, {7, 2});
    REQUIRE(li.kind == LineIntersection::Kind::Point_);
    CHECK(li.p == Point(1, 2));
    CHECK(line_intersection({0, 0}, {1, 0}, {0, 1}, {1, 1}).kind ==
          LineIntersection::Kind::Parallel);
    CHECK(line_intersection({0, 0}, {1, 1}, {2, 2}, {3, 3}).kind ==
          LineIntersection::Kind::Coincident);
}

TEST_CASE("line_intersection result lies on both lines") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        Point a1 = rp(rng), a2 = rp(rng), b1 = rp(rng), b2 = rp(rng);
        if (a1 == a2 || b1 == b2) continue;
        auto li = line_intersection(a1, a2, b1, b2);
        if (li.kind != LineIntersection::Kind::Point_) continue;
        CHECK(orientation(a1, a2, li.p) == Orientation::Collinear);
        CHECK(orientation(b1, b2, li.p) == Orientation::Collinear);
    }
}

TEST_CASE("circle_circle_intersection") {
    const double tol = 1e-9;
    auto tangent = circle_circle_intersection({{0, 0}, 1}, {{2, 0}, 1}, tol);
    REQUIRE(tangent.kind == CircleIntersection::Kind::One);
    CHECK(std::fabs(tangent.a.x - 1.0) < 1e-9);
    CHECK(std::fabs(tangent.a.y) < 1e-9);

    // Two-circle system solved by hand: x = 1/2, y = +-sqrt(3)/2.
    auto two = circle_circle_intersection({{0, 0}, 1}, {{1, 0}, 1}, tol);
    REQUIRE(two.kind == CircleIntersection::Kind::Two);
    CHECK(std::fabs(two.a.x - 0.5) < 1e-12);
    CHECK(std::fabs(two.a.y - std::sqrt(3.0) / 2.0) < 1e-12);
    CHECK(std::fabs(two.b.y + std::sqrt(3.0) / 2.0) < 1e-12);

    CHECK(circle_circle_intersection({{0, 0}, 1}, {{4, 0}, 1}, tol).kind ==
          CircleIntersection::Kind::None);
    CHECK_THROWS_AS(circle_circle_intersection({{0, 0}, 1}, {{0, 0}, 2}, tol),
                    std::domain_error);
}

TEST_CASE("circle intersection points mirror over the center line") {
    std::mt19937_64 rng(17);
    const double tol = 1e-9;
    for (int t = 0; t < 200; ++t) {
        auto rd = [&]() { return (static_cast<double>(rng() % 2000) - 1000.0) / 250.0; };
        Circle c1{{rd(), rd()}, std::fabs(rd()) + 0.5};
        Circle c2{{rd(), rd()}, std::fabs(rd()) + 0.5};
        if (fdist(c1.center, c2.center) < 0.1) continue;
        auto r = circle_circle_intersection(c1, c2, tol);
        if (r.kind != CircleIntersection::Kind::Two) continue;
        // Midpoint of the two points lies on the center line; residuals small.
        const FloatPoint mid{(r.a.x + r.b.x) / 2, (r.a.y + r.b.y) / 2};
        CHECK(point_side_of_line(c1.center, c2.center, mid, 4 * tol) == LineSide::OnLine);
        for (const auto& pt : {r.a, r.b}) {
            CHECK(std::fabs(fdist(c1.center, pt) - c1.radius) <= tol * std::max(1.0, c1.radius));
            CHECK(std::fabs(fdist(c2.center, pt) - c2.radius) <= tol * std::max(1.0, c2.radius));
        }
        // Deterministic ordering: first point left of the directed center line.
        CHECK(point_side_of_line(c1.center, c2.center, r.a, tol) == LineSide::Left);
    }
}

TEST_CASE("point_side_of_line") {
    const double tol = 1e-9;
    CHECK(point_side_of_line({0, 0}, {1, 0}, {0, 1}, tol) == LineSide::Left);
    CHECK(point_side_of_line({0, 0}, {1, 0}, {0, -1}, tol) == LineSide::Right);
    CHECK(point_side_of_line({0, 0}, {1, 0}, {5, 0}, tol) == LineSide::OnLine);
    CHECK_THROWS_AS(point_side_of_line({0, 0}, {1e-12, 0}, {1, 1}, tol), std::invalid_argument);
}

TEST_CASE("symbolic point predicates agree with rational specialization") {
    // dir with rational norm: (3,4) has |dir| = 5.
    SymPoint t{{1, 1}, Rational(1, 2), {3, 4}};
    REQUIRE(t.is_exactly_rational());
    auto r = t.as_rational();
    REQUIRE(r.has_value());
    CHECK(*r == Point(Rational(13, 10), Rational(7, 5)));
    CHECK(orient_sym({0, 0}, {1, 0}, t) == 1);

    // Irrational case: dir (1,1).
    SymPoint u{{0, 0}, Rational(1), {1, 1}};  // (1/sqrt(2), 1/sqrt(2))
    CHECK(!u.is_exactly_rational());
    CHECK(orient_sym({0, 0}, {1, 0}, u) == 1);   // above the x-axis
    CHECK(orient_sym({0, 0}, {1, 1}, u) == 0);   // on the diagonal
    CHECK(orient_sym({0, 0}, {0, 1}, u) == -1);  // right of the y-axis
    const FloatPoint w = sym_to_double(u);
    CHECK(std::fabs(w.x - std::sqrt(0.5)) < 1e-15);
    CHECK(std::fabs(w.y - std::sqrt(0.5)) < 1e-15);
    CHECK(std::fabs(sym_distance({0, 0}, u) - 1.0) < 1e-14);
}

TEST_CASE("symbolic containment in a square") {
    const std::vector<Point> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    SymPoint inside{{1, 1}, Rational(1, 2), {1, 1}};
    CHECK(point_in_chain_sym(square, inside) == Containment::Inside);
    SymPoint outside{{1, 1}, Rational(3), {1, 1}};
    CHECK(point_in_chain_sym(square, outside) == Containment::Outside);
    CHECK(segment_in_polygon_sym(square, {0, 0}, inside));
    CHECK(!segment_in_polygon_sym(square, {0, 0}, outside));
}

TEST_CASE("sign_a_plus_b_sqrtC") {
    using starloc::sign_a_plus_b_sqrtC;
    // 3 - 2*sqrt(2) > 0, 2 - 2*sqrt(2) < 0, 2 - sqrt(4) == 0.
    CHECK(sign_a_plus_b_sqrtC(Rational(3), Rational(-2), Rational(2)) == 1);
    CHECK(sign_a_plus_b_sqrtC(Rational(2), Rational(-2), Rational(2)) == -1);
    CHECK(sign_a_plus_b_sqrtC(Rational(2), Rational(-1), Rational(4)) == 0);
    CHECK(sign_a_plus_b_sqrtC(Rational(0), Rational(1), Rational(7)) == 1);
    CHECK(sign_a_plus_b_sqrtC(Rational(0), Rational(0), Rational(7)) == 0);
}
