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

#include <random>

#include "starloc/rational.hpp"

using starloc::Rational;

TEST_CASE("reduced canonical form") {
    Rational a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).den() == 2);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("exact arithmetic round trip") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        const long n1 = static_cast<long>(rng() % 2001) - 1000;
        const long d1 = static_cast<long>(rng() % 999) + 1;
        const long n2 = static_cast<long>(rng() % 2001) - 1000;
        const long d2 = static_cast<long>(rng() % 999) + 1;
        Rational a(n1, d1), b(n2, d2);
        CHECK((a + b) - b == a);
        if (b.sign() != 0) CHECK((a / b) * b == a);
    }
}

TEST_CASE("parsing") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(Rational::parse("42") == Rational(42));
    CHECK(Rational::parse("-0.25") == Rational(-1, 4));
    CHECK(Rational::parse("1e-3") == Rational(1, 1000));
    CHECK(Rational::parse("2.5e2") == Rational(250));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1/"));
}

TEST_CASE("to_double is correctly rounded") {
    // 1/3 rounds to the double nearest to 1/3.
    const double d = Rational(1, 3).to_double();
    CHECK(d == 1.0 / 3.0);
    CHECK(Rational(1, 10).to_double() == 0.1);
    // Exhaustive small fractions against long double reference.
    for (long num = 1; num < 200; ++num)
        for (long den = 1; den < 40; ++den) {
            const double got = Rational(num, den).to_double();
            const double ref = static_cast<double>(static_cast<long double>(num) / den);
            CHECK(got == ref);
        }
}

TEST_CASE("string round trip") {
    Rational a(-7, 12);
    CHECK(Rational::parse(a.str()) == a);
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(5, 3).str() == "5/3");
}

TEST_CASE("exact_sqrt") {
    CHECK(starloc::exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(!starloc::exact_sqrt(Rational(2)).has_value());
    CHECK(!starloc::exact_sqrt(Rational(-4)).has_value());
    CHECK(starloc::exact_sqrt(Rational(0)) == Rational(0));
}

TEST_CASE("pow_rational") {
    CHECK(starloc::pow_rational(Rational(3), 4) == Rational(81));
    CHECK(starloc::pow_rational(Rational(1, 3), 3) == Rational(1, 27));
    CHECK(starloc::pow_rational(Rational(7), 0) == Rational(1));
}
