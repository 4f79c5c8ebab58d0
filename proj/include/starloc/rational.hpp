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

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace starloc {

/// Exact arbitrary-precision rational. Always stored reduced with a
/// positive denominator, so structural equality is value equality.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    /// Exact value of a finite double.
    static Rational from_double(double d) {
        if (!std::isfinite(d)) throw std::invalid_argument("Rational: non-finite double");
        return Rational(mpq_class(d));
    }
    /// Parses "p/q", integers, and plain decimals ("-3.25", "1e-3"), all exactly.
    static Rational parse(std::string_view s);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (sgn(b.q_) == 0) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.q_ / b.q_));
    }
    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    /// Nearest double (ties to even). mpq_get_d truncates, so the result is
    /// refined against the two neighbouring doubles by exact comparison.
    double to_double() const {
        double d = q_.get_d();
        if (!std::isfinite(d)) return d;
        const double cands[3] = {
            std::nextafter(d, -std::numeric_limits<double>::infinity()), d,
            std::nextafter(d, std::numeric_limits<double>::infinity())};
        double best = d;
        mpq_class best_err(-1);
        for (double c : cands) {
            if (!std::isfinite(c)) continue;
            mpq_class err = ::abs(mpq_class(q_ - mpq_class(c)));
            if (best_err < 0 || err < best_err ||
                (err == best_err && is_even_mantissa(c) && !is_even_mantissa(best))) {
                best_err = err;
                best = c;
            }
        }
        return best;
    }

    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    static bool is_even_mantissa(double d) {
        int exp = 0;
        double m = std::frexp(d, &exp);
        auto bits = static_cast<std::int64_t>(std::ldexp(m, 53));
        return (bits & 1) == 0;
    }
    mpq_class q_;
};

inline Rational Rational::parse(std::string_view s) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
    };
    size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (n.empty() || d.empty()) return fail();
        try {
            return Rational(mpz_class(n, 10), mpz_class(d, 10));
        } catch (const std::invalid_argument&) {
            return fail();
        }
    }
    // decimal: [+-]digits[.digits][(e|E)[+-]digits]
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    std::string digits;
    long frac_digits = 0;
    bool any = false, in_frac = false;
    long exp10 = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            any = true;
            if (in_frac) ++frac_digits;
        } else if (c == '.' && !in_frac) {
            in_frac = true;
        } else if ((c == 'e' || c == 'E') && any) {
            try {
                exp10 = std::stol(std::string(s.substr(i + 1)));
            } catch (...) {
                return fail();
            }
            i = s.size() - 1;
            break;
        } else {
            return fail();
        }
    }
    if (!any) return fail();
    mpz_class mant(digits.empty() ? "0" : digits, 10);
    if (neg) mant = -mant;
    long p = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
    return p >= 0 ? Rational(mpz_class(mant * pow10)) : Rational(mant, pow10);
}

/// Exact square root when the argument is a perfect rational square.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    mpz_class n = r.num(), d = r.den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
        return Rational(sn, sd);
    }
    return std::nullopt;
}

/// Integer power of a Rational (small non-negative exponents).
inline Rational pow_rational(const Rational& base, unsigned e) {
    Rational r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace starloc
