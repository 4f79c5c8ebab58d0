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

#include <array>
#include <map>
#include <string>
#include <vector>

#include "starloc/localization.hpp"
#include "starloc/partition.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// A pair of towers on a support segment [a, b]. Tower 1 sits at a; tower 2 at
// a + (m/3^{s+1}) * (b-a)/|b-a|, so their separation is exactly m/3^{s+1}: a
// reduced rational whose numerator parity encodes the responsible side of
// L(t1, t2) (even = left, odd = right).
struct TowerPair {
    Point anchor_a, anchor_b;
    int m = 1;        // 1 or 2
    unsigned s = 1;   // smallest s >= 1 with 1/3^s <= |ab|
    Side side = Side::RightOfLine;
    size_t piece = 0;

    Rational separation() const {
        return Rational(m) / pow_rational(Rational(3), s + 1);
    }
    Point tower1() const { return anchor_a; }
    SymPoint tower2() const { return {anchor_a, separation(), anchor_b - anchor_a}; }
};

struct TowerTriple {
    std::array<Point, 3> pts;
    size_t piece = 0;
};

struct PlacedTower {
    FloatPoint wire;      // what the agent receives
    size_t group = 0;     // pair or triple id
    int role = 0;         // 0/1 within a pair, 0..2 within a triple
    bool in_triple = false;
    size_t piece = 0;
};

struct TowerSet {
    std::vector<TowerPair> pairs;
    std::vector<TowerTriple> triples;
    std::vector<PlacedTower> towers;
    std::vector<std::string> warnings;

    size_t count() const { return towers.size(); }
};

// ---------------------------------------------------------------------------

inline TowerPair place_pair(const GuardAnchor& anchor) {
    const Rational len2 = sq_dist(anchor.seg_a, anchor.seg_b);
    if (len2.sign() <= 0)
        throw std::invalid_argument("place_pair: zero-length support segment");
    TowerPair tp;
    tp.anchor_a = anchor.seg_a;
    tp.anchor_b = anchor.seg_b;
    tp.s = choose_s(len2);
    tp.side = anchor.side;
    tp.m = (anchor.side == Side::LeftOfLine) ? 2 : 1;
    tp.piece = anchor.piece;
    return tp;
}

/// Deterministic non-collinear triple strictly inside a full-dimensional kernel.
inline TowerTriple place_triple(const PolygonStarChain& piece, const Kernel& k) {
    if (k.kind != Kernel::Kind::FullDim)
        throw std::invalid_argument("place_triple: kernel is not full-dimensional");
    const auto& reg = k.region;
    Rational cx(0), cy(0);
    for (const auto& p : reg) {
        cx += p.x;
        cy += p.y;
    }
    const Rational inv(1, static_cast<long>(reg.size()));
    const Point cen{cx * inv, cy * inv};
    const Rational half(1, 2);
    TowerTriple out;
    size_t got = 0;
    for (size_t t = 0; t < reg.size() && got < 3; ++t) {
        const Point cand{cen.x + half * (reg[t].x - cen.x), cen.y + half * (reg[t].y - cen.y)};
        if (got == 2 && orientation(out.pts[0], out.pts[1], cand) == Orientation::Collinear)
            continue;
        out.pts[got++] = cand;
    }
    if (got < 3)
        throw std::invalid_argument("place_triple: could not find a non-collinear triple");
    (void)piece;
    return out;
}

namespace tdetail {

/// Canonical key of the supporting line of (a, b), for pair-conflict checks.
inline std::string line_key(const Point& a, const Point& b) {
    Rational A = b.y - a.y;
    Rational B = a.x - b.x;
    Rational C = Rational(0) - (A * a.x + B * a.y);
    // Normalize: first nonzero of (A, B) becomes +1.
    Rational scale = (A.sign() != 0) ? A : B;
    if (scale.sign() == 0) return "degenerate";
    A /= scale;
    B /= scale;
    C /= scale;
    return A.str() + "|" + B.str() + "|" + C.str();
}

}  // namespace tdetail

/// Materializes towers for a partition. Enforces the 2n/3 budget and the
/// decodability of every pair separation through the float wire format.
inline TowerSet emit_towers(const PartitionResult& pr) {
    TowerSet out;
    out.warnings = pr.warnings;

    std::vector<GuardAnchor> anchors = pr.anchors;

    // Same-line pairs with opposite responsibilities would leave a mirror
    // ambiguity for an agent that sees both; re-anchor when detected.
    std::map<std::string, std::pair<size_t, Side>> line_of;
    for (auto& anchor : anchors) {
        if (anchor.kind == GuardAnchor::Kind::TripleInKernel) continue;
        std::string key = tdetail::line_key(anchor.seg_a, anchor.seg_b);
        auto it = line_of.find(key);
        if (it != line_of.end() && it->second.second != anchor.side) {
            bool fixed = false;
            if (anchor.kind == GuardAnchor::Kind::OnSegment) {
                const auto& piece = pr.pieces[anchor.piece];
                Kernel k = kernel(piece);
                for (const auto& seg : kernel_boundary_segments(piece, k)) {
                    if (tdetail::line_key(seg.a, seg.b) == key) continue;
                    anchor.edge = seg.edge;
                    anchor.seg_a = seg.a;
                    anchor.seg_b = seg.b;
                    fixed = true;
                    break;
                }
            }
            if (!fixed)
                out.warnings.push_back("pairs share a supporting line with opposite sides (" +
                                       key + ")");
        } else {
            line_of[key] = {anchor.piece, anchor.side};
        }
    }

    for (const auto& anchor : anchors) {
        if (anchor.kind == GuardAnchor::Kind::TripleInKernel) {
            const auto& piece = pr.pieces[anchor.piece];
            TowerTriple tr = place_triple(piece, kernel(piece));
            tr.piece = anchor.piece;
            const size_t gid = out.pairs.size() + out.triples.size();
            for (int r = 0; r < 3; ++r)
                out.towers.push_back({{tr.pts[static_cast<size_t>(r)].x.to_double(),
                                       tr.pts[static_cast<size_t>(r)].y.to_double()},
                                      gid, r, true, anchor.piece});
            out.triples.push_back(tr);
            continue;
        }
        TowerPair tp = place_pair(anchor);
        const size_t gid = out.pairs.size() + out.triples.size();
        const FloatPoint w1{tp.anchor_a.x.to_double(), tp.anchor_a.y.to_double()};
        const FloatPoint w2 = sym_to_double(tp.tower2());
        out.towers.push_back({w1, gid, 0, false, anchor.piece});
        out.towers.push_back({w2, gid, 1, false, anchor.piece});
        // The wire-format coordinates must still decode to (m, s).
        auto pd = decode_parity(fdist(w1, w2));
        if (pd.m != tp.m || pd.s != tp.s)
            throw PartitionError("tower pair separation does not survive the wire format");
        out.pairs.push_back(tp);
    }

    const size_t bound = 2 * pr.input_size / 3;
    if (out.towers.size() > bound) {
        std::string dump = "tower budget exceeded: " + std::to_string(out.towers.size()) + " > " +
                           std::to_string(bound) + "; trace:";
        for (const auto& t : pr.trace) dump += "\n  " + t.label;
        throw PartitionError(dump);
    }
    return out;
}

}  // namespace starloc
