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

// Localization must work from tower coordinates and distances alone; this
// translation unit deliberately pulls in nothing polygon-related.
#include "starloc/localization.hpp"

#include <cmath>
#include <random>

using namespace starloc;

TEST_CASE("decode_parity recovers known codewords") {
    auto r1 = decode_parity(0.2222222222222222);
    CHECK(r1.m == 2);
    CHECK(r1.s == 1);
    CHECK(r1.parity == Parity::Even);

    auto r2 = decode_parity(0.012345679012345678);
    CHECK(r2.m == 1);
    CHECK(r2.s == 3);
    CHECK(r2.parity == Parity::Odd);

    CHECK_THROWS_MATCHES(decode_parity(0.5), LocalizationError,
                         Catch::Matchers::Predicate<LocalizationError>([](const auto& e) {
                             return e.kind == LocalizationError::Kind::NoCodeword;
                         }));
    CHECK_THROWS_AS(decode_parity(0.0), LocalizationError);
}

TEST_CASE("decode_parity round trip for all s <= 30 through double rounding") {
    for (unsigned s = 1; s <= 30; ++s) {
        for (int m = 1; m <= 2; ++m) {
            const Rational sep = Rational(m) / starloc::pow_rational(Rational(3), s + 1);
            const double wire = sep.to_double();
            auto r = decode_parity(wire);
            INFO("m=" << m << " s=" << s);
            CHECK(r.m == m);
            CHECK(r.s == s);
        }
    }
}

TEST_CASE("decode_parity ambiguity guard") {
    CHECK_THROWS_MATCHES(decode_parity(0.1, 40, 0.9), LocalizationError,
                         Catch::Matchers::Predicate<LocalizationError>([](const auto& e) {
                             return e.kind == LocalizationError::Kind::Ambiguous;
                         }));
}

TEST_CASE("two towers, even separation picks the left side") {
    LocalizationQuery q;
    q.towers = {{0.0, 0.0}, {2.0 / 9.0, 0.0}};
    q.distances = {1.0, 1.0};
    auto fix = localize(q);
    CHECK(fix.method == Fix::Method::TwoCircleParityLeft);
    CHECK(std::fabs(fix.point.x - 1.0 / 9.0) < 1e-12);
    CHECK(std::fabs(fix.point.y - std::sqrt(1.0 - 1.0 / 81.0)) < 1e-12);
    CHECK(fix.point.y > 0);  // left of the +x directed line
}

TEST_CASE("two towers, odd separation picks the right side") {
    LocalizationQuery q;
    q.towers = {{0.0, 0.0}, {1.0 / 9.0, 0.0}};
    q.distances = {1.0, 1.0};
    auto fix = localize(q);
    CHECK(fix.method == Fix::Method::TwoCircleParityRight);
    CHECK(fix.point.y < 0);
    CHECK(std::fabs(fix.point.x - 1.0 / 18.0) < 1e-12);
}

TEST_CASE("three towers: exact recovery") {
    const FloatPoint p{0.25, 0.25};
    LocalizationQuery q;
    q.towers = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    for (const auto& t : q.towers) q.distances.push_back(fdist(t, p));
    auto fix = localize(q);
    CHECK(fix.method == Fix::Method::ThreeCircle);
    CHECK(fix.residual < 1e-12);
    CHECK(std::fabs(fix.point.x - p.x) < 1e-9);
    CHECK(std::fabs(fix.point.y - p.y) < 1e-9);
}

TEST_CASE("errors") {
    LocalizationQuery q;
    q.towers = {{0, 0}};
    q.distances = {1.0};
    CHECK_THROWS_MATCHES(localize(q), LocalizationError,
                         Catch::Matchers::Predicate<LocalizationError>([](const auto& e) {
                             return e.kind == LocalizationError::Kind::InsufficientTowers;
                         }));
    q.towers = {{0, 0}, {1, 0}};
    CHECK_THROWS_MATCHES(localize(q), LocalizationError,
                         Catch::Matchers::Predicate<LocalizationError>([](const auto& e) {
                             return e.kind == LocalizationError::Kind::MismatchedLengths;
                         }));
    q.distances = {10.0, 1.0};
    CHECK_THROWS_MATCHES(localize(q), LocalizationError,
                         Catch::Matchers::Predicate<LocalizationError>([](const auto& e) {
                             return e.kind == LocalizationError::Kind::InconsistentDistances;
                         }));
}

TEST_CASE("mirror soundness: the reflected candidate is rejected") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 300; ++t) {
        const unsigned s = 1 + static_cast<unsigned>(rng() % 6);
        const int m = 1 + static_cast<int>(rng() % 2);
        const double sep = m * std::pow(3.0, -(double)(s + 1));
        const double px = (static_cast<double>(rng() % 1000) - 500.0) / 400.0;
        double py = (static_cast<double>(rng() % 1000) + 10.0) / 400.0;
        if (m == 1) py = -py;  // odd -> agent on the right (below)
        LocalizationQuery q;
        q.towers = {{0.0, 0.0}, {sep, 0.0}};
        const FloatPoint p{px, py};
        q.distances = {fdist(q.towers[0], p), fdist(q.towers[1], p)};
        auto fix = localize(q);
        CHECK(std::fabs(fix.point.x - p.x) < 1e-9);
        CHECK(std::fabs(fix.point.y - p.y) < 1e-9);
        CHECK(fix.point.y * py > 0);
    }
}

TEST_CASE("collinear towers fall back to the parity branch") {
    const double sep = 2.0 / 27.0;
    LocalizationQuery q;
    q.towers = {{0.0, 0.0}, {sep, 0.0}, {1.5, 0.0}};
    const FloatPoint p{0.2, 0.7};
    for (const auto& t : q.towers) q.distances.push_back(fdist(t, p));
    auto fix = localize(q);
    CHECK(fix.method == Fix::Method::TwoCircleParityLeft);
    CHECK(std::fabs(fix.point.x - p.x) < 1e-9);
    CHECK(std::fabs(fix.point.y - p.y) < 1e-9);
}

TEST_CASE("tangent two-circle case returns the touching point") {
    LocalizationQuery q;
    q.towers = {{0.0, 0.0}, {2.0, 0.0}};
    q.distances = {1.0, 1.0};
    auto fix = localize(q, 1e-6);
    CHECK(std::fabs(fix.point.x - 1.0) < 1e-9);
    CHECK(std::fabs(fix.point.y) < 1e-6);
}
