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

// Map-free localization. This module deliberately knows nothing about
// polygons or visibility: the input is tower coordinates and distances, the
// only extra knowledge is the parity trick used when the towers were placed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "starloc/geom.hpp"

namespace starloc {

struct LocalizationError : std::runtime_error {
    enum class Kind {
        InsufficientTowers,
        MismatchedLengths,
        NoCodeword,
        Ambiguous,
        InconsistentDistances,
    };
    Kind kind;
    LocalizationError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

enum class Parity { Even, Odd };

struct ParityDecode {
    Parity parity;
    int m = 0;       // 1 or 2
    unsigned s = 0;  // separation is m / 3^(s+1)
};

/// Recovers (m, s) from a measured tower separation: the unique codeword
/// m/3^(s+1) (m in {1,2}, s >= 1) within relative tolerance tol. Adjacent
/// codewords differ by a factor >= 3/2, so tol = 1e-6 leaves a wide margin.
inline ParityDecode decode_parity(double distance, unsigned max_s = 40, double tol = 1e-6) {
    if (!(distance > 0))
        throw LocalizationError(LocalizationError::Kind::NoCodeword,
                                "decode_parity: non-positive distance");
    ParityDecode found{};
    int matches = 0;
    long double pw = 1.0L / 9.0L;  // 3^-(s+1) for s = 1
    for (unsigned s = 1; s + 1 <= max_s; ++s, pw /= 3.0L) {
        for (int m = 1; m <= 2; ++m) {
            const double cw = static_cast<double>(m * pw);
            if (std::fabs(distance - cw) <= tol * cw) {
                ++matches;
                found = {m == 2 ? Parity::Even : Parity::Odd, m, s};
            }
        }
    }
    if (matches == 0)
        throw LocalizationError(LocalizationError::Kind::NoCodeword,
                                "decode_parity: no codeword near " + std::to_string(distance));
    if (matches > 1)
        throw LocalizationError(LocalizationError::Kind::Ambiguous,
                                "decode_parity: several codewords near " +
                                    std::to_string(distance));
    return found;
}

struct LocalizationQuery {
    std::vector<FloatPoint> towers;
    std::vector<double> distances;
};

struct Fix {
    FloatPoint point;
    enum class Method { ThreeCircle, TwoCircleParityLeft, TwoCircleParityRight } method;
    double residual = 0.0;
};

namespace locdetail {

inline double residual_of(const LocalizationQuery& q, const FloatPoint& p) {
    double r = 0.0;
    for (size_t i = 0; i < q.towers.size(); ++i)
        r = std::max(r, std::fabs(fdist(q.towers[i], p) - q.distances[i]));
    return r;
}

inline Fix two_circle_fix(const LocalizationQuery& q, size_t i, size_t j, double geo_tol,
                          double accept_tol) {
    const Circle c1{q.towers[i], q.distances[i]};
    const Circle c2{q.towers[j], q.distances[j]};
    auto inter = circle_circle_intersection(c1, c2, geo_tol);
    if (inter.kind == CircleIntersection::Kind::None)
        throw LocalizationError(LocalizationError::Kind::InconsistentDistances,
                                "two-circle: circles do not meet");
    if (inter.kind == CircleIntersection::Kind::One) {
        // Tangent: the candidates coincide on the line; parity is not needed.
        const double r = residual_of(q, inter.a);
        if (r > accept_tol)
            throw LocalizationError(LocalizationError::Kind::InconsistentDistances,
                                    "two-circle: tangent point violates a distance");
        return {inter.a, Fix::Method::TwoCircleParityLeft, r};
    }
    const auto pd = decode_parity(fdist(q.towers[i], q.towers[j]));
    const FloatPoint pick = (pd.parity == Parity::Even) ? inter.a : inter.b;
    const double r = residual_of(q, pick);
    if (r > accept_tol)
        throw LocalizationError(LocalizationError::Kind::InconsistentDistances,
                                "two-circle: selected point violates a distance");
    return {pick,
            pd.parity == Parity::Even ? Fix::Method::TwoCircleParityLeft
                                      : Fix::Method::TwoCircleParityRight,
            r};
}

}  // namespace locdetail

/// Algorithm-2 style localization. Three or more towers: the point consistent
/// with every circle (residual-minimizing over pairwise intersections); two
/// towers: two-circle intersection disambiguated by the parity trick.
inline Fix localize(const LocalizationQuery& q, double tol = 1e-9) {
    if (q.towers.size() != q.distances.size())
        throw LocalizationError(LocalizationError::Kind::MismatchedLengths,
                                "localize: towers/distances length mismatch");
    const size_t l = q.towers.size();
    if (l < 2)
        throw LocalizationError(LocalizationError::Kind::InsufficientTowers,
                                "localize: at least two visible towers required");
    double scale = 1.0;
    for (const auto& t : q.towers) scale = std::max({scale, std::fabs(t.x), std::fabs(t.y)});
    for (double d : q.distances) {
        if (!std::isfinite(d) || d < 0)
            throw LocalizationError(LocalizationError::Kind::InconsistentDistances,
                                    "localize: invalid distance");
        scale = std::max(scale, d);
    }
    const double geo_tol = 1e-12 * scale;
    const double accept = tol * scale;

    if (l == 2) return locdetail::two_circle_fix(q, 0, 1, geo_tol, accept);

    // Collinearity check over all towers.
    size_t bi = 0, bj = 1;
    double best_sep = -1.0;
    for (size_t i = 0; i < l; ++i)
        for (size_t j = i + 1; j < l; ++j) {
            const double d = fdist(q.towers[i], q.towers[j]);
            if (d > best_sep) {
                best_sep = d;
                bi = i;
                bj = j;
            }
        }
    bool collinear = best_sep <= geo_tol;
    if (!collinear) {
        collinear = true;
        for (size_t t = 0; t < l && collinear; ++t) {
            if (t == bi || t == bj) continue;
            const double c =
                (q.towers[bj].x - q.towers[bi].x) * (q.towers[t].y - q.towers[bi].y) -
                (q.towers[bj].y - q.towers[bi].y) * (q.towers[t].x - q.towers[bi].x);
            if (std::fabs(c) > 1e-9 * scale * best_sep) collinear = false;
        }
    }
    if (collinear) {
        // Mirror ambiguity along the common line: fall back to the parity
        // branch through the closest decodable pair.
        std::vector<std::pair<double, std::pair<size_t, size_t>>> pairs;
        for (size_t i = 0; i < l; ++i)
            for (size_t j = i + 1; j < l; ++j)
                pairs.push_back({fdist(q.towers[i], q.towers[j]), {i, j}});
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& pr : pairs) {
            try {
                decode_parity(pr.first);
            } catch (const LocalizationError&) {
                continue;
            }
            return locdetail::two_circle_fix(q, pr.second.first, pr.second.second, geo_tol,
                                             accept);
        }
        throw LocalizationError(LocalizationError::Kind::NoCodeword,
                                "localize: collinear towers with no decodable pair");
    }

    Fix best{{0, 0}, Fix::Method::ThreeCircle, std::numeric_limits<double>::infinity()};
    for (size_t i = 0; i < l; ++i) {
        for (size_t j = i + 1; j < l; ++j) {
            if (fdist(q.towers[i], q.towers[j]) <= geo_tol) continue;
            CircleIntersection inter;
            try {
                inter = circle_circle_intersection({q.towers[i], q.distances[i]},
                                                   {q.towers[j], q.distances[j]}, geo_tol);
            } catch (const std::domain_error&) {
                continue;
            }
            if (inter.kind == CircleIntersection::Kind::None) continue;
            for (const FloatPoint* cand : {&inter.a, &inter.b}) {
                const double r = locdetail::residual_of(q, *cand);
                if (r < best.residual) best = {*cand, Fix::Method::ThreeCircle, r};
                if (inter.kind == CircleIntersection::Kind::One) break;
            }
        }
    }
    if (!(best.residual <= accept))
        throw LocalizationError(LocalizationError::Kind::InconsistentDistances,
                                "localize: no candidate satisfies all distances");
    return best;
}

}  // namespace starloc
