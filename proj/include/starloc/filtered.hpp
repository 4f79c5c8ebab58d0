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

#include <cmath>
#include <vector>

#include "starloc/geom.hpp"

namespace starloc {

// Double-precision filter for exact predicates: the double estimate decides
// the sign whenever it clears a conservative forward-error bound, otherwise
// the caller's exact path runs. The bound also absorbs up to 1 ulp of input
// rounding, so approximate doubles for exact rationals are safe.

namespace filtered {

constexpr double kOrientEps = 1.0 / (1ull << 46);  // conservative

/// -1/0/+1 when certain, 2 when the filter cannot decide.
inline int orient_sign_d(double ax, double ay, double bx, double by, double cx, double cy) {
    const double l = (bx - ax) * (cy - ay);
    const double r = (by - ay) * (cx - ax);
    const double det = l - r;
    const double mag = (std::fabs(bx) + std::fabs(ax)) * (std::fabs(cy) + std::fabs(ay)) +
                       (std::fabs(by) + std::fabs(ay)) * (std::fabs(cx) + std::fabs(ax));
    if (std::fabs(det) > mag * kOrientEps) return det > 0 ? 1 : -1;
    return 2;
}

/// Cached double shadow of an exact point sequence.
struct ShadowChain {
    std::vector<double> x, y;
    const std::vector<Point>* exact = nullptr;

    explicit ShadowChain(const std::vector<Point>& pts) : exact(&pts) {
        x.reserve(pts.size());
        y.reserve(pts.size());
        for (const auto& p : pts) {
            x.push_back(p.x.to_double());
            y.push_back(p.y.to_double());
        }
    }
    size_t size() const { return x.size(); }

    int orient(size_t i, size_t j, size_t k) const {
        const int s = orient_sign_d(x[i], y[i], x[j], y[j], x[k], y[k]);
        if (s != 2) return s;
        return cross((*exact)[j] - (*exact)[i], (*exact)[k] - (*exact)[i]).sign();
    }

    /// Is vertex k strictly inside the open segment (i, j)? Requires an exact
    /// collinearity decision first.
    bool on_open_segment(size_t i, size_t j, size_t k) const {
        if (orient(i, j, k) != 0) return false;
        return dot((*exact)[i] - (*exact)[k], (*exact)[j] - (*exact)[k]).sign() < 0;
    }
};

}  // namespace filtered
}  // namespace starloc
