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
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "starloc/filtered.hpp"
#include "starloc/symbolic.hpp"
#include "starloc/triangulate.hpp"
#include "starloc/visibility.hpp"

namespace starloc {

// ---------------------------------------------------------------------------
// Goodness bookkeeping. Piece sizes are counted after the simplification
// step, which is what makes extension cuts balance like diagonals.

struct GoodnessCertificate {
    long n = 0, n1 = 0, n2 = 0;
    bool holds = false;
};

inline GoodnessCertificate goodness(long n, long n1, long n2) {
    if (n <= 5) throw std::invalid_argument("goodness: defined only for n > 5");
    return {n, n1, n2, n1 / 3 + n2 / 3 <= n / 3};
}

// ---------------------------------------------------------------------------
// Cuts, anchors, results

enum class DissectionKind { Diagonal, EdgeExtension, TwoSegment, ReflexBisector };
enum class Side { LeftOfLine, RightOfLine };

struct Cut {
    std::vector<Point> chain;  // 2 or 3 points; endpoints on the boundary
    DissectionKind kind = DissectionKind::Diagonal;
    std::string label;
};

struct Dissection {
    Cut cut;
    PolygonStarChain left_piece, right_piece;
    GoodnessCertificate cert;
};

struct NearPlacement {
    Point a, b;  // exterior support segment for the pair
    Side side = Side::LeftOfLine;
};

struct GuardAnchor {
    enum class Kind { OnSegment, AtConvexVertex, NearVertexExterior, TripleInKernel };
    Kind kind = Kind::OnSegment;
    size_t piece = 0;
    size_t edge = 0;     // OnSegment / AtConvexVertex
    Point seg_a, seg_b;  // pair support segment (constructed one for NearVertexExterior)
    Side side = Side::LeftOfLine;
    Point vertex;                // NearVertexExterior: the degenerate kernel vertex
    std::vector<Point> triple;   // TripleInKernel
};

struct TraceStep {
    std::string label;
    long parent_size = 0;
    long n1 = 0, n2 = 0;
    bool cert_applies = false;
    GoodnessCertificate cert;
    std::vector<Point> chain;
    DissectionKind kind = DissectionKind::Diagonal;
};

struct PartitionResult {
    std::vector<PolygonStarChain> pieces;
    std::vector<GuardAnchor> anchors;
    std::vector<TraceStep> trace;
    std::vector<GuardedSegment> guarded;
    std::vector<std::string> warnings;
    size_t repartitions = 0;
    size_t input_size = 0;
};

struct PartitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a single-point-kernel piece cannot host an exterior pair; the
/// ancestor that applied the offending collinear cut catches it, blocks that
/// cut and re-partitions (the repartition step of the algorithm).
struct RepartitionNeeded {
    Point edge_a, edge_b;  // the piece edge whose interior holds a blocking input vertex
    Point kernel_at;
};

/// Smallest s >= 1 with 1/3^s <= |ab| (compared via squares to stay rational).
inline unsigned choose_s(const Rational& seg_length_squared) {
    if (seg_length_squared.sign() <= 0)
        throw std::invalid_argument("choose_s: segment length must be positive");
    unsigned s = 1;
    Rational v(1, 9);
    while (v > seg_length_squared) {
        v /= Rational(9);
        ++s;
        if (s > 4096) throw std::domain_error("choose_s: segment too short");
    }
    return s;
}

// ---------------------------------------------------------------------------
// Cut application

namespace pdetail {

struct Loc {
    bool at_vertex = false;
    size_t idx = 0;  // vertex index, or edge index when on an edge interior
};

inline std::vector<Loc> locate_all(const PolygonStarChain& c, const Point& p) {
    std::vector<Loc> out;
    const size_t n = c.size();
    for (size_t i = 0; i < n; ++i)
        if (c.pt(i) == p) out.push_back({true, i});
    for (size_t e = 0; e < n; ++e) {
        const Point &u = c.pt(e), &w = c.pt(e + 1);
        if (orientation(u, w, p) == Orientation::Collinear &&
            collinear_point_in_open_segment(u, w, p))
            out.push_back({false, e});
    }
    return out;
}

/// Boundary walk from site (fl, fp) forward (CCW) to site (tl, tp), inclusive.
/// Returns vertices plus the outgoing-edge flags (the last vertex's outgoing
/// edge is the cut, to be appended by the caller).
inline bool walk_boundary(const PolygonStarChain& c, Loc fl, const Point& fp, Loc tl,
                          const Point& tp, std::vector<StarVertex>& verts,
                          std::vector<bool>& flags) {
    const size_t n = c.size();
    verts.clear();
    flags.clear();

    // Same-edge shortcut: both interior to edge e with tp ahead of fp.
    if (!fl.at_vertex && !tl.at_vertex && fl.idx == tl.idx && !(fp == tp)) {
        const Point d = c.pt(fl.idx + 1) - c.pt(fl.idx);
        if (dot(tp - fp, d).sign() > 0) {
            verts.push_back({fp, false});
            flags.push_back(c.edge_on_input[fl.idx]);
            verts.push_back({tp, false});
            return true;
        }
    }
    if (fl.at_vertex) {
        verts.push_back(c.v[fl.idx]);
    } else {
        verts.push_back({fp, false});
    }
    flags.push_back(c.edge_on_input[fl.idx]);

    size_t vi = (fl.idx + 1) % n;
    for (size_t steps = 0; steps <= n + 1; ++steps) {
        if (tl.at_vertex && vi == tl.idx) {
            verts.push_back(c.v[vi]);
            return true;
        }
        verts.push_back(c.v[vi]);
        if (!tl.at_vertex && vi == tl.idx) {
            flags.push_back(c.edge_on_input[vi]);
            verts.push_back({tp, false});
            return true;
        }
        flags.push_back(c.edge_on_input[vi]);
        vi = (vi + 1) % n;
    }
    return false;  // walked all the way around without closing
}

inline std::string cut_signature(const Cut& cut) {
    std::vector<std::string> parts;
    for (const auto& p : cut.chain) parts.push_back(p.x.str() + "," + p.y.str());
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& s : parts) out += s + ";";
    return out;
}

}  // namespace pdetail

/// Splits a polygon* along a 1- or 2-segment cut chain. Both pieces are
/// simplified; exact area conservation is asserted.
inline std::pair<PolygonStarChain, PolygonStarChain> apply_cut(const PolygonStarChain& c,
                                                               const Cut& cut) {
    if (cut.chain.size() < 2 || cut.chain.size() > 3)
        throw std::invalid_argument("apply_cut: cut chain must have 2 or 3 points");
    const Point e0 = cut.chain.front();
    const Point e1 = cut.chain.back();
    std::vector<Point> mids(cut.chain.begin() + 1, cut.chain.end() - 1);

    const auto locs0 = pdetail::locate_all(c, e0);
    const auto locs1 = pdetail::locate_all(c, e1);
    if (locs0.empty() || locs1.empty())
        throw PartitionError("apply_cut: endpoint not on boundary: " + cut.label);

    const Rational parent_area = c.area2();
    for (const auto& l0 : locs0) {
        for (const auto& l1 : locs1) {
            std::vector<StarVertex> va, vb;
            std::vector<bool> fa, fb;
            if (!pdetail::walk_boundary(c, l1, e1, l0, e0, va, fa)) continue;
            if (!pdetail::walk_boundary(c, l0, e0, l1, e1, vb, fb)) continue;

            PolygonStarChain p1, p2;
            p1.v = va;
            p1.edge_on_input = fa;
            for (const auto& m : mids) {
                p1.v.push_back({m, false});
                p1.edge_on_input.push_back(false);
            }
            p1.edge_on_input.push_back(false);  // closing cut edge

            p2.v = vb;
            p2.edge_on_input = fb;
            for (auto it = mids.rbegin(); it != mids.rend(); ++it) {
                p2.v.push_back({*it, false});
                p2.edge_on_input.push_back(false);
            }
            p2.edge_on_input.push_back(false);

            if (p1.v.size() < 3 || p2.v.size() < 3) continue;
            try {
                PolygonStarChain s1 = simplify(p1);
                PolygonStarChain s2 = simplify(p2);
                if (s1.area2() + s2.area2() != parent_area) continue;
                if (s1.area2().sign() <= 0 || s2.area2().sign() <= 0) continue;
                validate_star_chain(s1);
                validate_star_chain(s2);
                return {std::move(s1), std::move(s2)};
            } catch (const ValidationError&) {
                continue;
            }
        }
    }
    throw PartitionError("apply_cut: no consistent split for cut " + cut.label);
}

// ---------------------------------------------------------------------------
// Good diagonal enumeration

struct DiagonalChoice {
    size_t i = 0, j = 0;
    std::vector<size_t> interior_orig;  // input-polygon vertices strictly inside
    std::vector<size_t> interior_any;
    long n1_est = 0, n2_est = 0;
};

namespace pdetail {

/// Post-simplification sizes of the two pieces of diagonal (i, j), estimated
/// by cascading the junction collinearity trims (matches simplify()).
inline std::pair<long, long> split_sizes(const filtered::ShadowChain& sc, size_t i, size_t j) {
    const size_t n = sc.size();
    auto side_size = [&](size_t a, size_t b) -> long {
        // chain a..b plus closing edge b->a
        std::vector<size_t> seq;
        for (size_t t = a;; t = (t + 1) % n) {
            seq.push_back(t);
            if (t == b) break;
        }
        size_t f = 0, bk = seq.size() - 1;
        bool again = true;
        while (again && bk - f + 1 >= 3) {
            again = false;
            if (sc.orient(seq[bk], seq[f], seq[f + 1]) == 0) {
                ++f;
                again = true;
                continue;
            }
            if (sc.orient(seq[bk - 1], seq[bk], seq[f]) == 0) {
                --bk;
                again = true;
            }
        }
        return static_cast<long>(bk - f + 1);
    };
    return {side_size(i, j), side_size(j, i)};
}

}  // namespace pdetail

/// All diagonals whose (simplification-aware) goodness certificate holds,
/// sorted by (#input-vertex interior points, #interior points, i, j).
/// Geometric validity (containment) is not yet checked here.
inline std::vector<DiagonalChoice> enumerate_good_diagonals(const PolygonStarChain& c) {
    const size_t n = c.size();
    const long ln = static_cast<long>(n);
    const auto pts = c.points();
    filtered::ShadowChain sc(pts);

    std::vector<DiagonalChoice> out;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const long raw1 = static_cast<long>(j - i + 1);
            const long raw2 = ln - raw1 + 2;
            bool good = goodness(ln, raw1, raw2).holds;
            long e1 = raw1, e2 = raw2;
            if (!good) {
                auto est = pdetail::split_sizes(sc, i, j);
                e1 = est.first;
                e2 = est.second;
                if (e1 < 3 || e2 < 3) continue;
                good = goodness(ln, e1, e2).holds;
            }
            if (!good) continue;
            DiagonalChoice dc;
            dc.i = i;
            dc.j = j;
            dc.n1_est = e1;
            dc.n2_est = e2;
            for (size_t w = 0; w < n; ++w) {
                if (w == i || w == j) continue;
                if (sc.on_open_segment(i, j, w)) {
                    dc.interior_any.push_back(w);
                    if (c.v[w].from_original) dc.interior_orig.push_back(w);
                }
            }
            out.push_back(std::move(dc));
        }
    }
    std::sort(out.begin(), out.end(), [](const DiagonalChoice& a, const DiagonalChoice& b) {
        if (a.interior_orig.size() != b.interior_orig.size())
            return a.interior_orig.size() < b.interior_orig.size();
        if (a.interior_any.size() != b.interior_any.size())
            return a.interior_any.size() < b.interior_any.size();
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return out;
}

/// Exact containment check for a candidate diagonal: inside the closed
/// region, with no positive-length overlap along any boundary edge.
inline bool diagonal_cut_valid(const PolygonStarChain& c, size_t i, size_t j) {
    const Point &a = c.pt(i), &b = c.pt(j);
    const size_t n = c.size();
    for (size_t e = 0; e < n; ++e) {
        auto res = segments_intersect(a, b, c.pt(e), c.pt(e + 1));
        if (res.kind == SegmentIntersection::Kind::Overlap) return false;
        if (res.kind == SegmentIntersection::Kind::ProperCross) return false;
    }
    return segment_in_polygon(c, a, b);
}

/// First good diagonal in preference order that is geometrically valid.
/// Diagonals with more than max_orig interior input vertices are skipped.
inline std::optional<DiagonalChoice> find_good_diagonal(const PolygonStarChain& c,
                                                        size_t max_orig = 2) {
    for (auto& dc : enumerate_good_diagonals(c)) {
        if (dc.interior_orig.size() > max_orig) continue;
        if (diagonal_cut_valid(c, dc.i, dc.j)) return dc;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Case outcomes shared by the section-specific dissection routines

struct CaseOutcome {
    std::optional<Cut> cut;
    std::optional<Point> annotated_vertex;  // expected exterior-pair vertex (v2 of the case study)
    std::optional<Point> terminal_piece_marker;  // finalize the piece containing this vertex directly
    std::optional<size_t> witness_vertex;        // convex-angle witness (no dissection from this leaf)
    bool watchful_apply = false;  // apply the two-interior diagonal and monitor for repartition
    std::string note;
};

// ---------------------------------------------------------------------------
// Section 3.1: good diagonal with one interior vertex

inline CaseOutcome dissect_case_study(const PolygonStarChain& c, const DiagonalChoice& dc) {
    if (dc.interior_orig.size() > 1)
        throw std::invalid_argument("dissect_case_study: expects at most one interior input vertex");
    const size_t n = c.size();
    const long ln = static_cast<long>(n);
    // The interior vertex to route around (prefer the input one).
    const size_t m = dc.interior_orig.empty() ? dc.interior_any.front() : dc.interior_orig.front();

    // Orient the diagonal so the arc i..j (CCW) contains m: v1 = i, v3 = j.
    size_t v1 = dc.i, v3 = dc.j;
    auto in_arc = [&](size_t a, size_t b, size_t x) {
        for (size_t t = (a + 1) % n; t != b; t = (t + 1) % n)
            if (t == x) return true;
        return false;
    };
    if (!in_arc(v1, v3, m)) std::swap(v1, v3);
    if (!in_arc(v1, v3, m))
        throw std::invalid_argument("dissect_case_study: interior vertex not on either arc");

    const long na = static_cast<long>((m + n - v1) % n) + 1;
    const long nb = static_cast<long>((v3 + n - m) % n) + 1;
    const long n1 = static_cast<long>((v1 + n - v3) % n) + 1;  // arc without m
    (void)n1;

    auto mk = [&](size_t a, size_t b, const std::string& label) {
        CaseOutcome o;
        o.cut = Cut{{c.pt(a), c.pt(b)}, DissectionKind::Diagonal, label};
        return o;
    };

    const long q = ln % 3;
    if (q == 0) {
        if (na > 2) return mk(v1, m, "case-study n=3k via v1v2");
        return mk(m, v3, "case-study n=3k via v2v3");
    }
    if (q == 1) {
        if (na == 2) return mk(m, v3, "case-study n=3k+1 edge-v1v2 via v2v3");
        if (nb == 2) return mk(v1, m, "case-study n=3k+1 edge-v2v3 via v1v2");
        if (na % 3 == 1 || na % 3 == 2) return mk(v1, m, "case-study n=3k+1 via v1v2");
        // na multiple of 3: depends on the v2-free side size.
        const long n1_side = static_cast<long>((v1 + n - v3) % n) + 1;
        if (n1_side % 3 == 2) return mk(m, v3, "case-study n=3k+1 via v2v3");
        // Unavoidable v1v3 dissection; towers may later need exterior hosting.
        CaseOutcome o = mk(v1, v3, "case-study n=3k+1 unavoidable v1v3");
        if (c.v[m].from_original) o.annotated_vertex = c.pt(m);
        return o;
    }
    // q == 2
    if (na == 2) return mk(m, v3, "case-study n=3k+2 edge-v1v2 via v2v3");
    if (nb == 2) return mk(v1, m, "case-study n=3k+2 edge-v2v3 via v1v2");
    CaseOutcome o = mk(v1, v3, "case-study n=3k+2 unavoidable v1v3");
    if (c.v[m].from_original) o.annotated_vertex = c.pt(m);
    return o;
}

// ---------------------------------------------------------------------------
// Section 3.2: good diagonal with two interior input vertices

namespace pdetail {

struct PKConfig {
    // Chain indices: diagonal v1->v4, interior v2 (nearer v1) and v3; the arc
    // holding v2 carries P_d (v1..v2) and P_c (v2..v4), the other arc carries
    // P_a (v1..v3) and P_b (v3..v4).
    size_t v1, v2, v3, v4;
    long na, nb, nc, nd;
};

inline std::optional<PKConfig> pk_setup(const PolygonStarChain& c, const DiagonalChoice& dc) {
    if (dc.interior_orig.size() != 2 || dc.interior_any.size() != 2) return std::nullopt;
    const size_t n = c.size();
    size_t i = dc.i, j = dc.j;
    size_t p = dc.interior_any[0], q = dc.interior_any[1];
    auto in_arc = [&](size_t a, size_t b, size_t x) {
        for (size_t t = (a + 1) % n; t != b; t = (t + 1) % n)
            if (t == x) return true;
        return false;
    };
    const bool p_in_ij = in_arc(i, j, p);
    const bool q_in_ij = in_arc(i, j, q);
    if (p_in_ij == q_in_ij) return std::nullopt;  // same side: not the 3.2 shape

    // Order the interior vertices along the segment from i.
    const Point d = c.pt(j) - c.pt(i);
    const Rational tp = dot(c.pt(p) - c.pt(i), d);
    const Rational tq = dot(c.pt(q) - c.pt(i), d);
    size_t first = p, second = q;
    if (tq < tp) std::swap(first, second);

    PKConfig k;
    k.v1 = i;
    k.v4 = j;
    k.v2 = first;
    k.v3 = second;
    auto arc_len = [&](size_t a, size_t b) { return static_cast<long>((b + n - a) % n) + 1; };
    // Sub-chain sizes measured along the boundary between the line points.
    if (in_arc(i, j, k.v2)) {
        k.nd = arc_len(k.v1, k.v2);
        k.nc = arc_len(k.v2, k.v4);
        k.na = arc_len(k.v3, k.v1);  // arc j..i direction holds v3
        k.nb = arc_len(k.v4, k.v3);
    } else {
        k.nd = arc_len(k.v2, k.v1);
        k.nc = arc_len(k.v4, k.v2);
        k.na = arc_len(k.v1, k.v3);
        k.nb = arc_len(k.v3, k.v4);
    }
    return k;
}

/// Reverse the diagonal direction: (v1,v2,v3,v4) -> (v4,v3,v2,v1), which maps
/// (a,b,c,d) -> (c,d,a,b).
inline PKConfig pk_flip(const PKConfig& k) {
    return {k.v4, k.v3, k.v2, k.v1, k.nc, k.nd, k.na, k.nb};
}

}  // namespace pdetail

inline CaseOutcome dissect_point_kernel(const PolygonStarChain& c, const DiagonalChoice& dc) {
    auto cfg0 = pdetail::pk_setup(c, dc);
    if (!cfg0)
        throw std::invalid_argument("dissect_point_kernel: expects a diagonal with exactly two "
                                    "interior input vertices on opposite sides");
    const size_t n = c.size();
    const long ln = static_cast<long>(n);

    auto try_cut = [&](size_t a, size_t b, const std::string& label,
                       DissectionKind kind = DissectionKind::Diagonal)
        -> std::optional<CaseOutcome> {
        // adjacency or degenerate rejects
        if (a == b) return std::nullopt;
        if ((a + 1) % n == b || (b + 1) % n == a) return std::nullopt;
        if (!diagonal_cut_valid(c, a, b)) return std::nullopt;
        Cut cut{{c.pt(a), c.pt(b)}, kind, label};
        try {
            auto pcs = apply_cut(c, cut);
            auto cert = goodness(ln, static_cast<long>(pcs.first.size()),
                                 static_cast<long>(pcs.second.size()));
            if (!cert.holds) return std::nullopt;
        } catch (const PartitionError&) {
            return std::nullopt;
        }
        CaseOutcome o;
        o.cut = cut;
        return o;
    };

    // Step 1: prefer the five sub-diagonals; v2v3 destroys the diagonal.
    const auto& k0 = *cfg0;
    if (auto o = try_cut(k0.v2, k0.v3, "point-kernel v2v3")) return *o;
    for (auto [a, b, name] : {std::tuple{k0.v1, k0.v3, "point-kernel v1v3"},
                              std::tuple{k0.v1, k0.v2, "point-kernel v1v2"},
                              std::tuple{k0.v3, k0.v4, "point-kernel v3v4"},
                              std::tuple{k0.v2, k0.v4, "point-kernel v2v4"}})
        if (auto o = try_cut(a, b, name)) return *o;

    if (ln % 3 == 0)
        throw PartitionError("dissect_point_kernel: n = 3k but no sub-diagonal is good");

    if (ln % 3 == 1) {
        // Canonical orientation: |P1| = na+nb-1 congruent 2 (mod 3).
        pdetail::PKConfig k = k0;
        if ((k.na + k.nb - 1) % 3 != 2) k = pdetail::pk_flip(k);
        if ((k.na + k.nb - 1) % 3 != 2)
            throw PartitionError("dissect_point_kernel: n=3k+1 side sizes inconsistent");
        if (k.nd == 2) {
            if (auto o = try_cut(k.v1, k.v3, "point-kernel case 1.3 v1v3")) return *o;
            throw PartitionError("dissect_point_kernel: case 1.3 cut rejected");
        }
        if (k.nd % 3 == 0) {
            if (k.nc != 2)
                if (auto o = try_cut(k.v2, k.v4, "point-kernel case 1.1 v2v4")) return *o;
            if (k.nb != 2)
                if (auto o = try_cut(k.v3, k.v4, "point-kernel case 1.1 v3v4")) return *o;
            throw PartitionError("dissect_point_kernel: case 1.1 cuts rejected");
        }
        if (auto o = try_cut(k.v1, k.v2, "point-kernel case 1.2 v1v2")) return *o;
        throw PartitionError("dissect_point_kernel: case 1.2 cut rejected");
    }

    // n = 3k+2. Case 2.1 shape: |P_b| = 3k_b + 1 (canonicalize by flipping).
    pdetail::PKConfig k = k0;
    if (k.nb % 3 != 1 && pdetail::pk_flip(k).nb % 3 == 1) k = pdetail::pk_flip(k);
    if (k.nb % 3 == 1) {
        // Walk P_c from v2 towards v4 (labels 1..nc).
        const bool v2_forward = [&] {
            for (size_t t = (k.v1 + 1) % n; t != k.v4; t = (t + 1) % n)
                if (t == k.v2) return true;  // P2 arc is v1..v4 in CCW order
            return false;
        }();
        auto pc_vertex = [&](long label) -> size_t {  // label 1 = v2, nc = v4
            // P_c spans from v2 to v4 along the boundary on v2's side.
            long steps = label - 1;
            size_t idx = k.v2;
            for (long t = 0; t < steps; ++t) idx = v2_forward ? (idx + 1) % n : (idx + n - 1) % n;
            return idx;
        };
        // Labels congruent 2 mod 3 visible from v3 (label 2 is v2').
        for (long lab = 2; lab < k.nc; lab += 3) {
            const size_t u = pc_vertex(lab);
            if (!sees(c, c.pt(u), c.pt(k.v3))) continue;
            if (auto o = try_cut(u, k.v3, "point-kernel case 2.1 label-" + std::to_string(lab)))
                return *o;
        }
        // Extension of v3' v3 into P_c.
        const size_t v3p = [&] {  // neighbour of v3 inside P_b (away from v4)
            const size_t fwd = (k.v3 + 1) % n, bwd = (k.v3 + n - 1) % n;
            // P_b spans v3..v4 on v3's side; its v3-neighbour lies towards v4.
            for (size_t t = (k.v3 + 1) % n; t != k.v4; t = (t + 1) % n)
                if (t == fwd) return fwd;
            return bwd;
        }();
        auto re = ray_exit(c, c.pt(k.v3), c.pt(k.v3) - c.pt(v3p));
        if (re.t.sign() > 0 && re.edge >= 0) {
            // Edge endpoint labels within P_c, if the exit lands there.
            const size_t eu = static_cast<size_t>(re.edge);
            const size_t ew = (eu + 1) % n;
            auto label_of = [&](size_t idx) -> long {
                size_t cur = k.v2;
                for (long lab = 1; lab <= k.nc; ++lab) {
                    if (cur == idx) return lab;
                    cur = v2_forward ? (cur + 1) % n : (cur + n - 1) % n;
                }
                return -1;
            };
            const long lu = label_of(eu), lw = label_of(ew);
            if (lu > 0 && lw > 0) {
                const long l1 = std::min(lu, lw), l2 = std::max(lu, lw);
                if (l1 % 3 == 1 && l2 % 3 == 2) {
                    Cut cut{{c.pt(k.v3), re.p}, DissectionKind::EdgeExtension,
                            "point-kernel case 2.1 v3''"};
                    try {
                        auto pcs = apply_cut(c, cut);
                        auto cert = goodness(ln, static_cast<long>(pcs.first.size()),
                                             static_cast<long>(pcs.second.size()));
                        if (cert.holds) {
                            CaseOutcome o;
                            o.cut = cut;
                            return o;
                        }
                    } catch (const PartitionError&) {
                    }
                }
            }
        }
    }
    // Fall back: apply the two-interior diagonal and monitor its offspring;
    // the repartition machinery reacts if an unservable pentagon appears.
    CaseOutcome o;
    o.watchful_apply = true;
    o.note = "point-kernel watchful v1v4";
    return o;
}

// ---------------------------------------------------------------------------
// Section 3.3: short- and long-leaf dissections (n = 3k+2, no good diagonal)

namespace pdetail {

inline PolygonStarChain mirror_x(const PolygonStarChain& c) {
    PolygonStarChain m;
    const size_t n = c.size();
    m.v.reserve(n);
    for (size_t t = 0; t < n; ++t) {
        const auto& sv = c.v[n - 1 - t];
        m.v.push_back({Point{-sv.p.x, sv.p.y}, sv.from_original});
    }
    m.edge_on_input.resize(n);
    for (size_t t = 0; t < n; ++t) {
        // new edge t connects old vertices (n-1-t) and (n-2-t): old edge (n-2-t)
        m.edge_on_input[t] = c.edge_on_input[(2 * n - 2 - t) % n];
    }
    return m;
}

inline Point mirror_pt(const Point& p) { return {-p.x, p.y}; }

inline CaseOutcome mirror_outcome(CaseOutcome o) {
    if (o.cut) {
        for (auto& p : o.cut->chain) p = mirror_pt(p);
        o.cut->label += " (mirrored)";
    }
    if (o.annotated_vertex) o.annotated_vertex = mirror_pt(*o.annotated_vertex);
    if (o.terminal_piece_marker) o.terminal_piece_marker = mirror_pt(*o.terminal_piece_marker);
    return o;
}

/// Valid apexes w for the triangle on diagonal (A, C) of the leaf (A,B,C):
/// w sees both A and C and the triangle stays inside the region.
inline bool apex_valid(const PolygonStarChain& c, size_t A, size_t C, size_t w) {
    if (w == A || w == C) return false;
    if (!sees(c, c.pt(A), c.pt(w)) || !sees(c, c.pt(C), c.pt(w))) return false;
    // Probe the triangle interior unless degenerate.
    if (orientation(c.pt(A), c.pt(C), c.pt(w)) != Orientation::Collinear) {
        const Rational third(1, 3);
        const Point centroid{third * (c.pt(A).x + c.pt(C).x + c.pt(w).x),
                             third * (c.pt(A).y + c.pt(C).y + c.pt(w).y)};
        if (point_in_chain(c, centroid) == Containment::Outside) return false;
    }
    return true;
}

}  // namespace pdetail

/// Short leaf at consecutive vertices (A, B, C): returns a good dissection or
/// a convex-angle witness. Expects: n = 3k+2, simplified, no good diagonal.
inline CaseOutcome dissect_short_leaf(const PolygonStarChain& c, size_t A, size_t B, size_t C,
                                      bool allow_mirror = true);

namespace pdetail {

inline CaseOutcome short_leaf_canonical(const PolygonStarChain& c, size_t A, size_t B, size_t C,
                                        size_t D) {
    // Canonical form: quad ABCD has its reflex corner at C.
    const size_t n = c.size();
    CaseOutcome out;

    const size_t D0 = (D + 1) % n;       // P_a-side neighbour of D
    auto exitp = [&](size_t from, size_t towards_back) {
        return ray_exit(c, c.pt(from), c.pt(from) - c.pt(towards_back));
    };

    auto Aexit = exitp(A, B);
    if (Aexit.t.sign() == 0) {
        out.witness_vertex = A;
        out.note = "short-leaf witness at A";
        return out;
    }
    const int tri = static_cast<int>(orientation(c.pt(D), c.pt(D0), c.pt(C)));

    if (tri > 0) {  // angle D0-D-C < pi
        // Degenerate triangle with D0 on the same line: CD0 is a good diagonal.
        if (orientation(c.pt(A), c.pt(C), c.pt(D)) == Orientation::Collinear &&
            orientation(c.pt(C), c.pt(D), c.pt(D0)) == Orientation::Collinear) {
            out.cut = Cut{{c.pt(C), c.pt(D0)}, DissectionKind::Diagonal,
                          "short-leaf case1 CD0 (degenerate)"};
            return out;
        }
        auto Cexit = exitp(C, B);
        if (Cexit.t.sign() == 0) {
            out.witness_vertex = C;
            out.note = "short-leaf witness at C";
            return out;
        }
        out.cut = Cut{{c.pt(C), Cexit.p}, DissectionKind::EdgeExtension, "short-leaf case1 CC'"};
        return out;
    }
    if (tri == 0) {  // angle exactly pi
        out.cut = Cut{{c.pt(C), c.pt(D)}, DissectionKind::Diagonal, "short-leaf case2 CD"};
        return out;
    }

    // angle D0-D-C > pi.
    auto Cexit = exitp(C, B);
    auto Dexit = exitp(D, D0);
    if (Cexit.t.sign() > 0 && Dexit.t.sign() > 0) {
        auto x = segments_intersect(c.pt(C), Cexit.p, c.pt(D), Dexit.p);
        if (x.kind == SegmentIntersection::Kind::ProperCross) {
            out.cut = Cut{{c.pt(D), x.p, c.pt(C)}, DissectionKind::TwoSegment,
                          "short-leaf case3 DQ+QC"};
            return out;
        }
    }
    // Degenerate quadrilateral: an edge IJ of P_a contains segment AD.
    if (orientation(c.pt(A), c.pt(C), c.pt(D)) == Orientation::Collinear) {
        for (size_t e = 0; e < n; ++e) {
            const Point &I = c.pt(e), &J = c.pt(e + 1);
            if (orientation(I, J, c.pt(A)) != Orientation::Collinear) continue;
            if (orientation(I, J, c.pt(D)) != Orientation::Collinear) continue;
            if (!collinear_point_on_segment(I, J, c.pt(A)) ||
                !collinear_point_on_segment(I, J, c.pt(D)))
                continue;
            // P_a' = sub-polygon of P_a containing D0, bounded by diagonal ID.
            // Orient I on D's side: I is the edge endpoint beyond D.
            size_t Iv = e, Jv = (e + 1) % n;
            if (sq_dist(c.pt(Iv), c.pt(D)) > sq_dist(c.pt(Jv), c.pt(D))) std::swap(Iv, Jv);
            const long na_p = static_cast<long>((Iv + n - D0) % n) + 2;  // D..D0..I chain + ID
            const long m3 = ((na_p % 3) + 3) % 3;
            if (m3 == 0)
                out.cut = Cut{{c.pt(Iv), c.pt(A)}, DissectionKind::Diagonal,
                              "short-leaf case3 IA (degenerate quad)"};
            else if (m3 == 1)
                out.cut = Cut{{c.pt(C), c.pt(Jv)}, DissectionKind::Diagonal,
                              "short-leaf case3 CJ (degenerate quad)"};
            else
                out.cut = Cut{{c.pt(Iv), c.pt(D)}, DissectionKind::Diagonal,
                              "short-leaf case3 ID (degenerate quad)"};
            return out;
        }
    }
    // Claim 5: one of DD0', CC', AA' is a good dissection. Return the first
    // whose certificate holds.
    const long ln = static_cast<long>(n);
    struct Alt {
        Point from;
        RayExit to;
        const char* name;
    };
    const Alt alts[] = {{c.pt(D), Dexit, "short-leaf case3 DD0'"},
                        {c.pt(C), Cexit, "short-leaf case3 CC'"},
                        {c.pt(A), Aexit, "short-leaf case3 AA'"}};
    for (const auto& alt : alts) {
        if (alt.to.t.sign() == 0) continue;
        Cut cut{{alt.from, alt.to.p}, DissectionKind::EdgeExtension, alt.name};
        try {
            auto pcs = apply_cut(c, cut);
            if (goodness(ln, static_cast<long>(pcs.first.size()),
                         static_cast<long>(pcs.second.size()))
                    .holds) {
                out.cut = cut;
                return out;
            }
        } catch (const PartitionError&) {
        }
    }
    out.note = "short-leaf: no construction applied";
    return out;
}

}  // namespace pdetail

inline CaseOutcome dissect_short_leaf(const PolygonStarChain& c, size_t A, size_t B, size_t C,
                                      bool allow_mirror) {
    const size_t n = c.size();
    // Choose the apex D minimizing n_a: scan backwards from A.
    size_t D = n;  // invalid
    for (size_t step = 1; step + 2 < n; ++step) {
        const size_t w = (A + n - step) % n;
        if (w == C || w == B) break;
        if (pdetail::apex_valid(c, A, C, w)) {
            D = w;
            break;
        }
    }
    if (D == n) {
        CaseOutcome o;
        o.note = "short-leaf: no valid apex";
        return o;
    }
    // Claim 2: quad ABCD is non-convex at A or C.
    const bool reflex_at_C = orientation(c.pt(B), c.pt(C), c.pt(D)) == Orientation::Clockwise;
    const bool reflex_at_A = orientation(c.pt(D), c.pt(A), c.pt(B)) == Orientation::Clockwise;
    if (reflex_at_C || !reflex_at_A || !allow_mirror)
        return pdetail::short_leaf_canonical(c, A, B, C, D);

    // Mirror: swap the roles of A and C.
    PolygonStarChain mc = pdetail::mirror_x(c);
    auto mi = [&](size_t idx) { return (n - 1 - idx) % n; };
    CaseOutcome o = dissect_short_leaf(mc, mi(C), mi(B), mi(A), false);
    return pdetail::mirror_outcome(std::move(o));
}

/// Long leaf starting at chain index a: in canonical orientation the CCW
/// boundary reads A=a, B=a+1, C=a+2, D=a+3 (neighbour apex, with CD a
/// polygon edge) and D0 = a+4; the walk labels v_m = (A - m) mod n follow the
/// boundary the other way, so A0 = v_1 = a-1.
inline CaseOutcome dissect_long_leaf(const PolygonStarChain& c, size_t a, bool allow_mirror = true);

namespace pdetail {

inline CaseOutcome long_leaf_canonical(const PolygonStarChain& c, size_t a) {
    const size_t n = c.size();
    const long ln = static_cast<long>(n);
    const size_t A = a, B = (a + 1) % n, C = (a + 2) % n;
    const size_t D = (a + 3) % n, D0 = (a + 4) % n;
    const size_t A0 = (a + n - 1) % n;
    CaseOutcome out;

    if (!is_reflex(c, A)) {
        out.witness_vertex = A;
        out.note = "long-leaf witness at A";
        return out;
    }
    if (!is_reflex(c, C)) {
        out.witness_vertex = C;
        out.note = "long-leaf witness at C";
        return out;
    }

    auto exit_from = [&](size_t from, size_t back) {
        return ray_exit(c, c.pt(from), c.pt(from) - c.pt(back));
    };
    // Interior angle of P' at D equals the sweep from D->D0 to D->C, so the
    // sign of cross(D0-D, C-D) separates the two cases.
    const int dd = cross(c.pt(D0) - c.pt(D), c.pt(C) - c.pt(D)).sign();
    if (dd == 0) {
        out.note = "long-leaf: collinear D0,D,C should have been simplified";
        return out;
    }

    if (dd < 0) {  // angle D0-D-C > pi (D reflex): DD', CC' or AB' by q1.
        auto Dexit = exit_from(D, C);   // ray C->D beyond D
        auto Cexit = exit_from(C, B);   // ray B->C beyond C
        auto Bexit = exit_from(A, B);   // ray B->A beyond A
        if (Dexit.t.sign() > 0) {
            Cut cut{{c.pt(D), Dexit.p}, DissectionKind::EdgeExtension, "long-leaf case1 DD'"};
            try {
                auto pcs = apply_cut(c, cut);
                long n1 = 0;  // size of the piece containing D0
                for (auto& pc : {pcs.first, pcs.second}) {
                    bool has = false;
                    for (auto& sv : pc.v) has |= (sv.p == c.pt(D0));
                    if (has) n1 = static_cast<long>(pc.size());
                }
                const long q1 = ((n1 % 3) + 3) % 3;
                if (q1 == 2) {
                    out.cut = cut;
                    return out;
                }
                if (q1 == 1 && Cexit.t.sign() > 0) {
                    out.cut = Cut{{c.pt(C), Cexit.p}, DissectionKind::EdgeExtension,
                                  "long-leaf case1 CC'"};
                    return out;
                }
                if (q1 == 0 && Bexit.t.sign() > 0) {
                    out.cut = Cut{{c.pt(A), Bexit.p}, DissectionKind::EdgeExtension,
                                  "long-leaf case1 AB'"};
                    return out;
                }
            } catch (const PartitionError&) {
            }
        }
        out.note = "long-leaf case1: construction failed";
        return out;
    }

    // angle D0-D-C < pi: D' = D. The A0 ray decides between the pentagon cut
    // and the rotating-ray search.
    auto A0exit = exit_from(A, A0);  // ray A0->A beyond A
    if (A0exit.t.sign() > 0) {
        const Point Z0 = A0exit.p;
        if (Z0 == c.pt(D)) {
            out.cut = Cut{{c.pt(A0), c.pt(D)}, DissectionKind::Diagonal, "long-leaf A0D"};
            return out;
        }
        const bool on_CD = orientation(c.pt(C), c.pt(D), Z0) == Orientation::Collinear &&
                           collinear_point_on_segment(c.pt(C), c.pt(D), Z0);
        if (!on_CD) {
            // A0' lands past D: AA0' splits off the pentagon ABCDA0'.
            out.cut = Cut{{c.pt(A), Z0}, DissectionKind::EdgeExtension, "long-leaf case2 AA0'"};
            return out;
        }
    }

    // Rotating-ray walk around D over vertices visible from D.
    auto label_index = [&](long m) { return (a + n - static_cast<size_t>(m) % n) % n; };
    const Point d0 = c.pt(A) - c.pt(D);
    const int sweep = cross(d0, c.pt(A0) - c.pt(D)).sign();  // rotate towards A0
    if (sweep == 0) {
        out.note = "long-leaf: degenerate sweep direction";
        return out;
    }
    struct Hit {
        long label;
        size_t idx;
    };
    std::vector<Hit> hits;
    for (long m = 1; m <= ln - 5; ++m) {
        const size_t idx = label_index(m);
        if (!sees(c, c.pt(D), c.pt(idx))) continue;
        hits.push_back({m, idx});
    }
    auto angle_key_less = [&](const Hit& x, const Hit& y) {
        const Point dx = c.pt(x.idx) - c.pt(D);
        const Point dy = c.pt(y.idx) - c.pt(D);
        auto half = [&](const Point& v) {
            const int s = cross(d0, v).sign() * sweep;
            if (s > 0) return 0;
            if (s == 0 && dot(d0, v).sign() > 0) return 0;
            return 1;
        };
        const int hx = half(dx), hy = half(dy);
        if (hx != hy) return hx < hy;
        return cross(dx, dy).sign() * sweep > 0;
    };
    std::sort(hits.begin(), hits.end(), angle_key_less);

    for (const auto& h : hits) {
        const long m = h.label;
        if (m % 3 == 0) continue;  // keep rotating
        const size_t vi = h.idx;
        const size_t nb = (m % 3 == 1) ? label_index(m + 1) : label_index(m - 1);
        auto X = ray_exit(c, c.pt(vi), c.pt(vi) - c.pt(nb));
        if (X.t.sign() == 0) continue;
        Cut cut{{c.pt(vi), X.p}, DissectionKind::EdgeExtension,
                std::string("long-leaf case2 vi-X") + (m % 3 == 1 ? "1" : "2")};
        try {
            auto pcs = apply_cut(c, cut);
            auto cert = goodness(ln, static_cast<long>(pcs.first.size()),
                                 static_cast<long>(pcs.second.size()));
            if (cert.holds) {
                out.cut = cut;
                return out;
            }
        } catch (const PartitionError&) {
        }
    }

    // Terminal stage around v_z (= last visible label before D0 = v_{n-4}).
    long z = -1;
    for (const auto& h : hits)
        if (h.label > z) z = h.label;
    if (z < 0) {
        out.note = "long-leaf terminal: no visible vertex";
        return out;
    }
    const size_t vz = label_index(z);
    if (z != ln - 5) {
        // The paper derives that v_z D0 must be a good diagonal here.
        Cut cut{{c.pt(vz), c.pt(D0)}, DissectionKind::Diagonal, "long-leaf vzD0"};
        out.cut = cut;
        return out;
    }
    if (sees(c, c.pt(vz), c.pt(A))) {
        // Hexagon A vz D0 D C B is the consecutive slice a-1 .. a+4.
        out.cut = Cut{{c.pt(A), c.pt(vz)}, DissectionKind::Diagonal, "long-leaf terminal hexagon"};
        out.terminal_piece_marker = c.pt(B);
        return out;
    }
    auto Aexit = exit_from(A, C);  // ray C->A beyond A
    auto Zexit = ray_exit(c, c.pt(vz), c.pt(vz) - c.pt(D0));
    if (Aexit.t.sign() > 0 && Zexit.t.sign() > 0) {
        auto x = segments_intersect(c.pt(vz), Zexit.p, c.pt(A), Aexit.p);
        if (x.kind == SegmentIntersection::Kind::ProperCross ||
            x.kind == SegmentIntersection::Kind::Touch) {
            out.cut = Cut{{c.pt(A), x.p, c.pt(vz)}, DissectionKind::TwoSegment,
                          "long-leaf terminal heptagon"};
            out.terminal_piece_marker = c.pt(B);
            return out;
        }
    }
    for (const auto& h : hits) {
        Cut cut{{c.pt(h.idx), c.pt(D0)}, DissectionKind::Diagonal, "long-leaf vxD0"};
        try {
            auto pcs = apply_cut(c, cut);
            if (goodness(ln, static_cast<long>(pcs.first.size()),
                         static_cast<long>(pcs.second.size()))
                    .holds) {
                out.cut = cut;
                return out;
            }
        } catch (const PartitionError&) {
        }
    }
    out.note = "long-leaf: terminal constructions failed";
    return out;
}

}  // namespace pdetail

inline CaseOutcome dissect_long_leaf(const PolygonStarChain& c, size_t a, bool allow_mirror) {
    const size_t n = c.size();
    // Canonical form: the apex D adjoins C (= a+2). If instead the apex
    // adjoins A (= a), mirror the polygon and recurse once.
    const size_t A = a, C = (a + 2) % n;
    const size_t Dnext = (a + 3) % n;       // apex adjacent to C
    const size_t Dprev = (a + n - 1) % n;   // apex adjacent to A
    const bool next_ok = pdetail::apex_valid(c, A, C, Dnext);
    const bool prev_ok = pdetail::apex_valid(c, A, C, Dprev);
    if (next_ok) return pdetail::long_leaf_canonical(c, a);
    if (prev_ok && allow_mirror) {
        PolygonStarChain mc = pdetail::mirror_x(c);
        auto mi = [&](size_t idx) { return (n - 1 - idx) % n; };
        CaseOutcome o = dissect_long_leaf(mc, mi(C), false);
        return pdetail::mirror_outcome(std::move(o));
    }
    CaseOutcome o;
    o.note = "long-leaf: no adjacent apex";
    return o;
}

// ---------------------------------------------------------------------------
// Edge-extension search (continuation of an edge through a reflex vertex)

inline std::optional<Cut> find_edge_extension(const PolygonStarChain& c,
                                              const std::set<std::string>& blocked = {}) {
    const size_t n = c.size();
    const long ln = static_cast<long>(n);
    for (size_t m = 0; m < n; ++m) {
        if (!is_reflex(c, m)) continue;
        for (const size_t back : {c.prev(m), c.next(m)}) {
            const Point dir = c.pt(m) - c.pt(back);
            auto re = ray_exit(c, c.pt(m), dir);
            if (re.t.sign() <= 0 || re.p == c.pt(m)) continue;
            Cut cut{{c.pt(m), re.p}, DissectionKind::EdgeExtension,
                    "edge-extension at vertex " + std::to_string(m)};
            if (blocked.count(pdetail::cut_signature(cut))) continue;
            bool overlap = false;
            for (size_t e = 0; e < n && !overlap; ++e) {
                auto res = segments_intersect(cut.chain[0], cut.chain[1], c.pt(e), c.pt(e + 1));
                overlap = (res.kind == SegmentIntersection::Kind::Overlap);
            }
            if (overlap) continue;
            try {
                auto pcs = apply_cut(c, cut);
                auto cert = goodness(ln, static_cast<long>(pcs.first.size()),
                                     static_cast<long>(pcs.second.size()));
                if (cert.holds) return cut;
            } catch (const PartitionError&) {
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exterior pair placement next to a single-point kernel vertex

inline std::optional<NearPlacement> find_near_vertex_placement(
    const std::vector<Point>& input, const PolygonStarChain& piece, size_t v_idx) {
    const Point v2 = piece.pt(v_idx);
    const Point cprev = piece.pt(piece.prev(v_idx)) - v2;
    const Point cnext = piece.pt(piece.next(v_idx)) - v2;
    Point d{cnext.x - cprev.x, cnext.y - cprev.y};
    if (d == Point(0, 0)) return std::nullopt;
    int s = cross(d, cprev).sign();
    const int s2 = cross(d, cnext).sign();
    if (s == 0) s = s2;
    if (s == 0 || (s2 != 0 && s2 != s)) return std::nullopt;  // wedge not separable

    // Normalize the direction scale so epsilon means a real distance.
    const Rational mx = std::max(d.x.abs(), d.y.abs());
    d = Point{d.x / mx, d.y / mx};
    const Point nrm = (s > 0) ? Point{d.y, Rational(0) - d.x} : Point{Rational(0) - d.y, d.x};
    const Side side = (s > 0) ? Side::LeftOfLine : Side::RightOfLine;
    const int m_val = (side == Side::LeftOfLine) ? 2 : 1;

    Rational eps(1, 3);
    for (int j = 1; j <= 64; ++j, eps /= Rational(3)) {
        const Point a{v2.x + eps * nrm.x, v2.y + eps * nrm.y};
        const Point b{a.x + eps * d.x, a.y + eps * d.y};
        if (point_in_chain(input, a) != Containment::Inside) continue;

        // Piece must lie fully on `side` of L(a, b).
        bool side_ok = true;
        for (size_t t = 0; t < piece.size() && side_ok; ++t) {
            const int sv = cross(b - a, piece.pt(t) - a).sign();
            if (s > 0 ? sv < 0 : sv > 0) side_ok = false;
        }
        if (!side_ok) continue;

        bool vis_ok = true;
        for (size_t t = 0; t < piece.size() && vis_ok; ++t)
            vis_ok = segment_in_polygon(input, a, piece.pt(t));
        if (!vis_ok) continue;

        const unsigned s_exp = choose_s(sq_dist(a, b));
        const SymPoint t2{a, Rational(m_val) / pow_rational(Rational(3), s_exp + 1), b - a};
        if (point_in_chain_sym(input, t2) != Containment::Inside) continue;
        for (size_t t = 0; t < piece.size() && vis_ok; ++t)
            vis_ok = segment_in_polygon_sym(input, piece.pt(t), t2);
        if (!vis_ok) continue;

        return NearPlacement{a, b, side};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Partition driver

namespace pdetail {

struct Ctx {
    std::vector<Point> input;  // validated input polygon (CCW)
    PartitionResult* res = nullptr;
    std::set<std::string> blocked;
    std::set<std::string> expected_exterior;  // annotated vertices (by coordinate key)
    size_t max_repartitions = 0;
};

inline std::string point_key(const Point& p) { return p.x.str() + "," + p.y.str(); }

inline void finalize_leaf(Ctx& ctx, PolygonStarChain piece, const std::string& label);
inline void recurse(Ctx& ctx, PolygonStarChain chain, int depth);

/// Anchor selection for a finished piece.
inline void finalize_leaf(Ctx& ctx, PolygonStarChain piece, const std::string& label) {
    auto& res = *ctx.res;
    for (auto& g : piece.guarded_externally) res.guarded.push_back(g);
    piece.guarded_externally.clear();

    Kernel k = kernel(piece);
    if (k.empty())
        throw PartitionError("piece is not star-shaped (" + label + ")");

    GuardAnchor anchor;
    anchor.piece = res.pieces.size();

    auto segs = kernel_boundary_segments(piece, k);
    if (!segs.empty()) {
        // Prefer segments on the input boundary (keeps tower lines un-shared),
        // then the longest, then the lowest edge index.
        size_t best = 0;
        auto better = [&](const KernelBoundarySegment& x, const KernelBoundarySegment& y) {
            const bool bx = piece.edge_on_input[x.edge], by = piece.edge_on_input[y.edge];
            if (bx != by) return bx;
            const Rational lx = sq_dist(x.a, x.b), ly = sq_dist(y.a, y.b);
            if (lx != ly) return lx > ly;
            return x.edge < y.edge;
        };
        for (size_t i = 1; i < segs.size(); ++i)
            if (better(segs[i], segs[best])) best = i;
        anchor.kind = GuardAnchor::Kind::OnSegment;
        anchor.edge = segs[best].edge;
        anchor.seg_a = segs[best].a;
        anchor.seg_b = segs[best].b;
        anchor.side = Side::LeftOfLine;  // piece is left of its own CCW edge
        for (size_t t = 0; t < piece.size(); ++t)
            if (cross(anchor.seg_b - anchor.seg_a, piece.pt(t) - anchor.seg_a).sign() < 0)
                throw PartitionError("kernel segment side violated (" + label + ")");
    } else if (k.kind == Kernel::Kind::SinglePoint) {
        const Point at = k.region[0];
        long v_idx = -1;
        for (size_t t = 0; t < piece.size(); ++t)
            if (piece.pt(t) == at) v_idx = static_cast<long>(t);
        if (v_idx < 0)
            throw PartitionError("single-point kernel not at a vertex (" + label + ")");
        auto place = find_near_vertex_placement(ctx.input, piece, static_cast<size_t>(v_idx));
        if (!place) {
            // Identify the blocking edge: one whose interior holds an input vertex.
            for (size_t e = 0; e < piece.size(); ++e) {
                const Point &u = piece.pt(e), &w = piece.pt(e + 1);
                for (const auto& pv : ctx.input) {
                    if (pv == u || pv == w) continue;
                    if (orientation(u, w, pv) == Orientation::Collinear &&
                        collinear_point_in_open_segment(u, w, pv))
                        throw RepartitionNeeded{u, w, at};
                }
            }
            throw PartitionError("single-point kernel piece cannot host exterior towers (" +
                                 label + ")");
        }
        if (!ctx.expected_exterior.count(point_key(at)))
            res.warnings.push_back("unannotated exterior pair at vertex " + at.str());
        anchor.kind = GuardAnchor::Kind::NearVertexExterior;
        anchor.vertex = at;
        anchor.seg_a = place->a;
        anchor.seg_b = place->b;
        anchor.side = place->side;
    } else if (k.kind == Kernel::Kind::FullDim) {
        // Interior kernel without boundary contact: last-resort triple.
        const auto& reg = k.region;
        Rational cx(0), cy(0);
        for (const auto& p : reg) {
            cx += p.x;
            cy += p.y;
        }
        const Rational inv(1, static_cast<long>(reg.size()));
        const Point cen{cx * inv, cy * inv};
        const Rational half(1, 2);
        std::vector<Point> tri;
        for (size_t t = 0; t < reg.size() && tri.size() < 3; ++t) {
            const Point cand{cen.x + half * (reg[t].x - cen.x), cen.y + half * (reg[t].y - cen.y)};
            if (tri.size() == 2 &&
                orientation(tri[0], tri[1], cand) == Orientation::Collinear)
                continue;
            tri.push_back(cand);
        }
        if (tri.size() < 3)
            throw PartitionError("cannot place a non-collinear triple in kernel (" + label + ")");
        anchor.kind = GuardAnchor::Kind::TripleInKernel;
        anchor.triple = tri;
        res.warnings.push_back("triple placed in piece " + std::to_string(anchor.piece) +
                               "; 2n/3 budget at risk");
    } else {
        throw PartitionError("kernel is a bare segment off the boundary (" + label + ")");
    }

    res.trace.push_back({label + " -> piece " + std::to_string(anchor.piece),
                         static_cast<long>(piece.size()), 0, 0, false, {}, {},
                         DissectionKind::Diagonal});
    res.pieces.push_back(std::move(piece));
    res.anchors.push_back(std::move(anchor));
}

/// Reflex-bisection base case: at most k reflex angles.
inline void bisect_reflex_base(Ctx& ctx, const PolygonStarChain& chain) {
    const size_t n = chain.size();
    const size_t k = n / 3;
    std::vector<PolygonStarChain> pieces{chain};
    size_t bisections = 0;

    while (bisections + 1 < k) {
        long pi = -1, vi = -1;
        for (size_t p = 0; p < pieces.size() && pi < 0; ++p)
            for (size_t v = 0; v < pieces[p].size(); ++v)
                if (is_reflex(pieces[p], v)) {
                    pi = static_cast<long>(p);
                    vi = static_cast<long>(v);
                    break;
                }
        if (pi < 0) break;
        const auto& pc = pieces[static_cast<size_t>(pi)];
        const size_t v = static_cast<size_t>(vi);
        const Point b1 = pc.pt(v) - pc.pt(pc.prev(v));
        const Point b2 = pc.pt(v) - pc.pt(pc.next(v));

        bool done = false;
        static const std::pair<int, int> combos[] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1},
                                                     {2, 3}, {3, 2}, {1, 5}, {5, 1}, {3, 4},
                                                     {4, 3}, {1, 7}, {7, 1}, {5, 7}, {7, 5}};
        for (const auto& [al, be] : combos) {
            const Point dir{Rational(al) * b1.x + Rational(be) * b2.x,
                            Rational(al) * b1.y + Rational(be) * b2.y};
            auto re = ray_exit(pc, pc.pt(v), dir);
            if (re.t.sign() <= 0) continue;
            bool hits_vertex = false;
            for (size_t t = 0; t < pc.size(); ++t)
                if (re.p == pc.pt(t)) hits_vertex = true;
            if (hits_vertex) continue;
            Cut cut{{pc.pt(v), re.p}, DissectionKind::ReflexBisector, "reflex split"};
            try {
                auto pcs = apply_cut(pc, cut);
                ctx.res->trace.push_back({"reflex-bisector", static_cast<long>(pc.size()),
                                          static_cast<long>(pcs.first.size()),
                                          static_cast<long>(pcs.second.size()), false, {},
                                          cut.chain, DissectionKind::ReflexBisector});
                pieces[static_cast<size_t>(pi)] = std::move(pcs.first);
                pieces.push_back(std::move(pcs.second));
                done = true;
                break;
            } catch (const PartitionError&) {
            }
        }
        if (!done)
            throw PartitionError("reflex base case: no usable split ray at a reflex vertex");
        ++bisections;
    }
    if (pieces.size() > std::max<size_t>(k, 1))
        throw PartitionError("reflex base case produced too many pieces");
    for (auto& p : pieces) finalize_leaf(ctx, std::move(p), "base-case piece");
}

struct AppliedStep {
    Cut cut;
    PolygonStarChain p1, p2;
    GoodnessCertificate cert;
    bool cert_applies = true;
};

inline AppliedStep apply_step(const PolygonStarChain& chain, const Cut& cut,
                              bool cert_applies = true) {
    auto pcs = apply_cut(chain, cut);
    AppliedStep st;
    st.cut = cut;
    st.p1 = std::move(pcs.first);
    st.p2 = std::move(pcs.second);
    st.cert = goodness(static_cast<long>(chain.size()), static_cast<long>(st.p1.size()),
                       static_cast<long>(st.p2.size()));
    st.cert_applies = cert_applies;
    if (cert_applies && !st.cert.holds)
        throw PartitionError("dissection is not good: " + cut.label);
    return st;
}

inline void record_and_recurse(Ctx& ctx, const PolygonStarChain& chain, AppliedStep st,
                               int depth, const std::optional<Point>& terminal_marker) {
    ctx.res->trace.push_back({st.cut.label, static_cast<long>(chain.size()),
                              st.cert.n1, st.cert.n2, st.cert_applies, st.cert, st.cut.chain,
                              st.cut.kind});
    auto contains_marker = [&](const PolygonStarChain& p) {
        if (!terminal_marker) return false;
        for (size_t t = 0; t < p.size(); ++t)
            if (p.pt(t) == *terminal_marker) return true;
        return false;
    };
    if (terminal_marker && contains_marker(st.p1)) {
        finalize_leaf(ctx, std::move(st.p1), "terminal piece");
        recurse(ctx, std::move(st.p2), depth + 1);
    } else if (terminal_marker && contains_marker(st.p2)) {
        finalize_leaf(ctx, std::move(st.p2), "terminal piece");
        recurse(ctx, std::move(st.p1), depth + 1);
    } else {
        recurse(ctx, std::move(st.p1), depth + 1);
        recurse(ctx, std::move(st.p2), depth + 1);
    }
}

/// One stage-selection pass; throws RepartitionNeeded from descendants.
inline void select_and_recurse(Ctx& ctx, const PolygonStarChain& chain, int depth,
                               Cut* applied_out) {
    const size_t n = chain.size();
    auto blocked = [&](const Cut& cut) { return ctx.blocked.count(cut_signature(cut)) > 0; };

    auto cands = enumerate_good_diagonals(chain);

    // Stage: good diagonal with at most one interior input vertex.
    for (const auto& dc : cands) {
        if (dc.interior_orig.size() > 1) continue;
        Cut probe{{chain.pt(dc.i), chain.pt(dc.j)}, DissectionKind::Diagonal, ""};
        if (blocked(probe)) continue;
        if (!diagonal_cut_valid(chain, dc.i, dc.j)) continue;
        if (dc.interior_any.empty()) {
            Cut cut{{chain.pt(dc.i), chain.pt(dc.j)}, DissectionKind::Diagonal, "good-diagonal"};
            auto st = apply_step(chain, cut);
            *applied_out = cut;
            record_and_recurse(ctx, chain, std::move(st), depth, std::nullopt);
            return;
        }
        CaseOutcome o = dissect_case_study(chain, dc);
        if (!o.cut) continue;
        if (blocked(*o.cut)) continue;
        if (o.annotated_vertex) ctx.expected_exterior.insert(point_key(*o.annotated_vertex));
        auto st = apply_step(chain, *o.cut);
        *applied_out = *o.cut;
        record_and_recurse(ctx, chain, std::move(st), depth, std::nullopt);
        return;
    }

    // Stage: good dissection via continuation of an edge.
    if (auto ext = find_edge_extension(chain, ctx.blocked)) {
        auto st = apply_step(chain, *ext);
        *applied_out = *ext;
        record_and_recurse(ctx, chain, std::move(st), depth, std::nullopt);
        return;
    }

    // Stage: good diagonal with two interior input vertices (3.2 handling).
    for (const auto& dc : cands) {
        if (dc.interior_orig.size() != 2) continue;
        Cut probe{{chain.pt(dc.i), chain.pt(dc.j)}, DissectionKind::Diagonal, ""};
        if (blocked(probe)) continue;
        if (!diagonal_cut_valid(chain, dc.i, dc.j)) continue;
        CaseOutcome o;
        if (dc.interior_any.size() == 2) {
            o = dissect_point_kernel(chain, dc);
        } else {
            o.watchful_apply = true;  // extra non-input vertices on the line
        }
        if (o.cut) {
            if (blocked(*o.cut)) continue;
            auto st = apply_step(chain, *o.cut);
            *applied_out = *o.cut;
            record_and_recurse(ctx, chain, std::move(st), depth, std::nullopt);
            return;
        }
        if (o.watchful_apply) {
            for (size_t t : dc.interior_orig)
                ctx.expected_exterior.insert(point_key(chain.pt(t)));
            Cut cut{{chain.pt(dc.i), chain.pt(dc.j)}, DissectionKind::Diagonal,
                    "two-interior watchful v1v4"};
            auto st = apply_step(chain, cut);
            *applied_out = cut;
            record_and_recurse(ctx, chain, std::move(st), depth, std::nullopt);
            return;
        }
    }

    // Stage: short/long leaf machinery (n = 3k + 2, no good diagonal).
    Triangulation tri = triangulate(chain);
    DualGraph g = dual_graph(tri);
    std::vector<size_t> leaf_order;
    for (size_t t = 0; t < tri.triangles.size(); ++t)
        if (g.kind[t] != DualGraph::LeafKind::Internal) leaf_order.push_back(t);
    std::sort(leaf_order.begin(), leaf_order.end(), [&](size_t x, size_t y) {
        const auto& tx = tri.triangles[x];
        const auto& ty = tri.triangles[y];
        return std::min({tx.a, tx.b, tx.c}) < std::min({ty.a, ty.b, ty.c});
    });
    for (size_t t : leaf_order) {
        const auto& lt = tri.triangles[t];
        // Identify the consecutive (A, B, C) orientation of the leaf.
        size_t ids[3] = {lt.a, lt.b, lt.c};
        std::sort(ids, ids + 3);
        size_t A = n, B = n, C = n;
        for (int r = 0; r < 3; ++r) {
            const size_t x = ids[r], y = ids[(r + 1) % 3], z = ids[(r + 2) % 3];
            if (chain.next(x) == y && chain.next(y) == z) {
                A = x;
                B = y;
                C = z;
                break;
            }
        }
        if (A == n) continue;  // not a boundary-consecutive triple

        // Short if some non-adjacent apex exists; otherwise long.
        bool shortable = false;
        for (size_t step = 1; step + 2 < n && !shortable; ++step) {
            const size_t w = (A + n - step) % n;
            if (w == C || w == B) break;
            if (w == chain.prev(A) || w == chain.next(C)) continue;
            if (pdetail::apex_valid(chain, A, C, w)) shortable = true;
        }
        CaseOutcome o = shortable ? dissect_short_leaf(chain, A, B, C)
                                  : dissect_long_leaf(chain, A);
        if (!o.cut) continue;
        if (blocked(*o.cut)) continue;
        const bool terminal = o.terminal_piece_marker.has_value();
        try {
            auto st = apply_step(chain, *o.cut, /*cert_applies=*/!terminal);
            *applied_out = *o.cut;
            record_and_recurse(ctx, chain, std::move(st), depth, o.terminal_piece_marker);
            return;
        } catch (const PartitionError&) {
            continue;  // try the next leaf
        }
    }

    std::string dump;
    for (size_t t = 0; t < n; ++t) dump += " " + chain.pt(t).str();
    throw PartitionError("no dissection found for polygon of size " + std::to_string(n) +
                         " with more than n/3 reflex angles:" + dump);
}

inline void recurse(Ctx& ctx, PolygonStarChain chain_in, int depth) {
    if (depth > 4 * static_cast<int>(ctx.input.size()) + 16)
        throw PartitionError("partition recursion depth exceeded");
    PolygonStarChain chain = simplify(std::move(chain_in));
    for (auto& g : chain.guarded_externally) ctx.res->guarded.push_back(g);
    chain.guarded_externally.clear();

    const size_t n = chain.size();
    if (n <= 5) {
        finalize_leaf(ctx, std::move(chain), "leaf n<=5");
        return;
    }
    const size_t k = n / 3;
    if (reflex_count(chain) <= k) {
        bisect_reflex_base(ctx, chain);
        return;
    }

    while (true) {
        const size_t pieces0 = ctx.res->pieces.size();
        const size_t anchors0 = ctx.res->anchors.size();
        const size_t trace0 = ctx.res->trace.size();
        const size_t guard0 = ctx.res->guarded.size();
        const size_t warn0 = ctx.res->warnings.size();
        Cut applied;
        try {
            select_and_recurse(ctx, chain, depth, &applied);
            return;
        } catch (const RepartitionNeeded& rn) {
            // Only the level whose cut lies on the offending line retries.
            bool mine = false;
            for (size_t s = 0; s + 1 < applied.chain.size(); ++s) {
                const Point &a = applied.chain[s], &b = applied.chain[s + 1];
                if (orientation(a, b, rn.edge_a) == Orientation::Collinear &&
                    orientation(a, b, rn.edge_b) == Orientation::Collinear)
                    mine = true;
            }
            if (!mine || applied.chain.empty()) throw;
            if (++ctx.res->repartitions > ctx.max_repartitions)
                throw PartitionError("repartition budget exhausted");
            ctx.blocked.insert(cut_signature(applied));
            ctx.res->pieces.resize(pieces0);
            ctx.res->anchors.resize(anchors0);
            ctx.res->trace.resize(trace0);
            ctx.res->guarded.resize(guard0);
            ctx.res->warnings.resize(warn0);
            ctx.res->trace.push_back({"repartition: blocked " + applied.label,
                                      static_cast<long>(n), 0, 0, false, {}, applied.chain,
                                      applied.kind});
        }
    }
}

}  // namespace pdetail

/// Reflex-bisection base case as a standalone operation.
inline PartitionResult bisect_reflex_base_case(const PolygonStarChain& p,
                                               const std::vector<Point>& input_hint = {}) {
    PolygonStarChain c = simplify(p);
    const size_t n = c.size();
    if (reflex_count(c) > n / 3)
        throw std::invalid_argument("bisect_reflex_base_case: more than n/3 reflex angles");
    PartitionResult res;
    res.input_size = n;
    pdetail::Ctx ctx;
    ctx.input = input_hint.empty() ? c.points() : input_hint;
    ctx.res = &res;
    ctx.max_repartitions = n;
    pdetail::bisect_reflex_base(ctx, c);
    return res;
}

/// Full partition of a validated simple polygon.
inline PartitionResult partition(const SimplePolygon& input) {
    PartitionResult res;
    res.input_size = input.size();
    pdetail::Ctx ctx;
    ctx.input = input.vertices;
    ctx.res = &res;
    ctx.max_repartitions = input.size();
    try {
        pdetail::recurse(ctx, PolygonStarChain::from_simple(input), 0);
    } catch (const RepartitionNeeded& rn) {
        throw PartitionError("unhandled repartition request at kernel vertex " +
                             rn.kernel_at.str());
    }

    if (res.anchors.size() > input.size() / 3)
        throw PartitionError("partition produced more than n/3 anchors");
    Rational total(0);
    for (const auto& p : res.pieces) total += p.area2();
    if (total != polygon_area2(input.vertices))
        throw PartitionError("partition does not conserve area");
    return res;
}

}  // namespace starloc
