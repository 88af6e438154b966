#pragma once

// Normal curves on the boundary of a single tetrahedron.
//
// A pattern records, per face, how many normal arcs cut off each of the face's three
// corners (arc type j on face f cuts the j-th smallest vertex of f). Arcs of one type are
// drawn parallel, nested towards their corner, so every edge-balanced pattern has exactly
// one embedded realisation; decomposing it means tracing that realisation.

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "normalhst/errors.hpp"
#include "normalhst/normal_surfaces.hpp"
#include "normalhst/tetrahedron.hpp"

namespace normalhst {

struct CurvePattern {
    std::array<std::array<long long, 3>, 4> arcs{};  // [face][corner slot]

    long long& at(int face, int corner) {
        return arcs[static_cast<std::size_t>(face)][static_cast<std::size_t>(tet::corner_slot(face, corner))];
    }
    long long at(int face, int corner) const {
        return arcs[static_cast<std::size_t>(face)][static_cast<std::size_t>(tet::corner_slot(face, corner))];
    }

    long long total() const {
        long long s = 0;
        for (const auto& f : arcs)
            for (auto x : f) s += x;
        return s;
    }

    /// Endpoints that face f's arcs place on local edge (x, y), x, y != f.
    long long endpoints(int face, int x, int y) const { return at(face, x) + at(face, y); }

    /// Points on edge e, read from the lower-numbered of its two faces.
    long long edge_weight(int e) const {
        const auto [x, y] = tet::kEdgeVertices[static_cast<std::size_t>(e)];
        int f = -1;
        for (int k = 0; k < 4 && f < 0; ++k)
            if (k != x && k != y) f = k;
        return endpoints(f, x, y);
    }

    /// Both faces through each edge put the same number of points on it.
    bool balanced() const {
        for (int e = 0; e < 6; ++e) {
            const auto [x, y] = tet::kEdgeVertices[static_cast<std::size_t>(e)];
            int fs[2], k = 0;
            for (int f = 0; f < 4; ++f)
                if (f != x && f != y) fs[k++] = f;
            if (endpoints(fs[0], x, y) != endpoints(fs[1], x, y)) return false;
        }
        for (const auto& f : arcs)
            for (auto a : f)
                if (a < 0) return false;
        return true;
    }

    /// 12 integers, face-major, corner-slot-minor.
    std::array<long long, 12> flat() const {
        std::array<long long, 12> out{};
        for (std::size_t f = 0; f < 4; ++f)
            for (std::size_t j = 0; j < 3; ++j) out[3 * f + j] = arcs[f][j];
        return out;
    }
    static CurvePattern from_flat(const std::array<long long, 12>& x) {
        CurvePattern p;
        for (std::size_t f = 0; f < 4; ++f)
            for (std::size_t j = 0; j < 3; ++j) p.arcs[f][j] = x[3 * f + j];
        return p;
    }

    friend CurvePattern operator+(const CurvePattern& a, const CurvePattern& b) {
        CurvePattern out;
        for (std::size_t f = 0; f < 4; ++f)
            for (std::size_t j = 0; j < 3; ++j) out.arcs[f][j] = a.arcs[f][j] + b.arcs[f][j];
        return out;
    }
    friend CurvePattern operator*(long long k, const CurvePattern& a) {
        CurvePattern out;
        for (std::size_t f = 0; f < 4; ++f)
            for (std::size_t j = 0; j < 3; ++j) out.arcs[f][j] = k * a.arcs[f][j];
        return out;
    }
    friend auto operator<=>(const CurvePattern&, const CurvePattern&) = default;
};

/// The pattern determined by six edge weights, if every face admits one.
inline std::optional<CurvePattern> pattern_from_edge_weights(const std::array<long long, 6>& w) {
    CurvePattern p;
    for (int f = 0; f < 4; ++f) {
        for (int c : tet::face_vertices(f)) {
            int x = -1, y = -1;
            for (int u : tet::face_vertices(f)) {
                if (u == c) continue;
                (x < 0 ? x : y) = u;
            }
            const long long twice = w[static_cast<std::size_t>(tet::edge_index(c, x))] +
                                    w[static_cast<std::size_t>(tet::edge_index(c, y))] -
                                    w[static_cast<std::size_t>(tet::edge_index(x, y))];
            if (twice < 0 || twice % 2 != 0) return std::nullopt;
            p.at(f, c) = twice / 2;
        }
    }
    return p;
}

/// Image of a pattern under a vertex permutation of the tetrahedron.
inline CurvePattern apply_symmetry(const CurvePattern& p, const tet::Perm4& s) {
    CurvePattern out;
    for (int f = 0; f < 4; ++f)
        for (int c : tet::face_vertices(f)) out.at(s[f], s[c]) = p.at(f, c);
    return out;
}

/// Least image under the full symmetry group (reflections included).
inline CurvePattern canonical_under_symmetry(const CurvePattern& p) {
    CurvePattern best = p;
    for (const auto& s : tet::Perm4::all()) best = std::min(best, apply_symmetry(p, s));
    return best;
}

/// Pattern of one normal disk's boundary.
inline CurvePattern piece_pattern(PieceKind kind, int type) {
    CurvePattern p;
    for (int f = 0; f < 4; ++f) {
        for (int c : tet::face_vertices(f)) {
            const int q = tet::quad_cutting(f, c);
            switch (kind) {
                case PieceKind::Triangle: p.at(f, c) = c == type ? 1 : 0; break;
                case PieceKind::Quad: p.at(f, c) = q == type ? 1 : 0; break;
                case PieceKind::Octagon: p.at(f, c) = q != type ? 1 : 0; break;
            }
        }
    }
    return p;
}

/// Arcs that a surface's pieces in one tetrahedron leave on its boundary.
inline CurvePattern boundary_pattern(const TetCoords& tc) {
    CurvePattern p;
    for (int f = 0; f < 4; ++f)
        for (int c : tet::face_vertices(f)) {
            Integer a = arc_count(tc, f, c);
            if (a > Integer(std::numeric_limits<long long>::max() / 16))
                throw ResourceError("boundary pattern too large for explicit decomposition");
            p.at(f, c) = static_cast<long long>(a);
        }
    return p;
}

struct NormalLoop {
    long long length = 0;
    std::vector<int> word;  // edges crossed, least rotation/reflection
    friend auto operator<=>(const NormalLoop&, const NormalLoop&) = default;
};

struct LoopDecomposition {
    std::vector<NormalLoop> loops;  // sorted by (length, word)

    std::vector<long long> lengths() const {
        std::vector<long long> out;
        for (const auto& l : loops) out.push_back(l.length);
        return out;
    }
};

/// Least rotation of a cyclic word or of its reversal.
inline std::vector<int> canonical_cyclic_word(const std::vector<int>& w) {
    if (w.empty()) return w;
    std::vector<int> best = w;
    const std::vector<int> r(w.rbegin(), w.rend());
    for (const std::vector<int>* base : {&w, &r}) {
        for (std::size_t s = 0; s < w.size(); ++s) {
            std::vector<int> cand(base->begin() + static_cast<std::ptrdiff_t>(s), base->end());
            cand.insert(cand.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(s));
            best = std::min(best, cand);
        }
    }
    return best;
}

inline constexpr long long kDefaultPatternCeiling = 100'000;

/// Traces the embedded realisation of a balanced pattern into its loops.
inline LoopDecomposition decompose_pattern(const CurvePattern& p, long long ceiling = kDefaultPatternCeiling) {
    if (!p.balanced()) throw PreconditionError("curve pattern is not edge-balanced");
    if (p.total() > ceiling) throw ResourceError("curve pattern exceeds the decomposition ceiling");

    std::array<long long, 7> base{};
    for (int e = 0; e < 6; ++e) base[static_cast<std::size_t>(e + 1)] = base[static_cast<std::size_t>(e)] + p.edge_weight(e);
    const auto points = static_cast<std::size_t>(base[6]);
    // Point at distance d from vertex `from` along edge (from, to).
    auto point = [&](int from, int to, long long d) {
        const int e = tet::edge_index(from, to);
        const long long w = p.edge_weight(e);
        return static_cast<std::size_t>(base[static_cast<std::size_t>(e)] + (from < to ? d : w - 1 - d));
    };
    auto edge_of = [&](std::size_t pt) {
        int e = 0;
        while (static_cast<long long>(pt) >= base[static_cast<std::size_t>(e + 1)]) ++e;
        return e;
    };

    // Each point meets one arc from each of the two faces through its edge.
    std::vector<std::array<std::size_t, 2>> nbr(points, {points, points});
    for (int f = 0; f < 4; ++f) {
        for (int c : tet::face_vertices(f)) {
            int x = -1, y = -1;
            for (int u : tet::face_vertices(f)) {
                if (u == c) continue;
                (x < 0 ? x : y) = u;
            }
            for (long long d = 0; d < p.at(f, c); ++d) {
                const std::size_t a = point(c, x, d), b = point(c, y, d);
                (nbr[a][0] == points ? nbr[a][0] : nbr[a][1]) = b;
                (nbr[b][0] == points ? nbr[b][0] : nbr[b][1]) = a;
            }
        }
    }

    LoopDecomposition out;
    std::vector<bool> seen(points, false);
    for (std::size_t start = 0; start < points; ++start) {
        if (seen[start]) continue;
        NormalLoop loop;
        std::size_t prev = points, cur = start;
        while (!seen[cur]) {
            seen[cur] = true;
            loop.word.push_back(edge_of(cur));
            const std::size_t next = nbr[cur][0] != prev ? nbr[cur][0] : nbr[cur][1];
            prev = cur;
            cur = next;
        }
        loop.length = static_cast<long long>(loop.word.size());
        loop.word = canonical_cyclic_word(loop.word);
        out.loops.push_back(std::move(loop));
    }
    std::sort(out.loops.begin(), out.loops.end());
    return out;
}

struct LoopClass {
    CurvePattern representative;  // canonical member
    long long length = 0;
    std::vector<CurvePattern> members;
};

struct LoopEnumeration {
    std::vector<CurvePattern> loops;  // every single-loop pattern, sorted by (length, pattern)
    std::vector<long long> loop_lengths;
    std::vector<LoopClass> classes;   // sorted by (length, representative)
};

inline constexpr long long kDefaultLoopLengthCeiling = 20;

/// All embedded normal loops of length at most max_length on the boundary of a
/// tetrahedron, grouped into classes under the 24 symmetries.
inline LoopEnumeration enumerate_normal_loops(long long max_length, long long ceiling = kDefaultLoopLengthCeiling) {
    if (max_length > ceiling)
        throw ResourceError("loop length " + std::to_string(max_length) + " exceeds the ceiling " + std::to_string(ceiling));
    std::vector<std::pair<long long, CurvePattern>> found;
    std::array<long long, 6> w{};
    // Edge weights sum to the loop length.
    auto rec = [&](auto&& self, int e, long long budget) -> void {
        if (e == 6) {
            auto p = pattern_from_edge_weights(w);
            if (!p || p->total() == 0) return;
            auto dec = decompose_pattern(*p);
            if (dec.loops.size() == 1) found.push_back({dec.loops[0].length, *p});
            return;
        }
        for (long long x = 0; x <= budget; ++x) {
            w[static_cast<std::size_t>(e)] = x;
            self(self, e + 1, budget - x);
        }
        w[static_cast<std::size_t>(e)] = 0;
    };
    if (max_length > 0) rec(rec, 0, max_length);
    std::sort(found.begin(), found.end());

    LoopEnumeration out;
    std::map<CurvePattern, std::size_t> class_of;
    for (const auto& [len, p] : found) {
        out.loops.push_back(p);
        out.loop_lengths.push_back(len);
        const auto canon = canonical_under_symmetry(p);
        auto it = class_of.find(canon);
        if (it == class_of.end()) {
            class_of.emplace(canon, out.classes.size());
            out.classes.push_back({canon, len, {p}});
        } else {
            out.classes[it->second].members.push_back(p);
        }
    }
    std::sort(out.classes.begin(), out.classes.end(), [](const LoopClass& a, const LoopClass& b) {
        return std::tie(a.length, a.representative) < std::tie(b.length, b.representative);
    });
    return out;
}

struct Check348Result {
    bool pass = false;
    LoopDecomposition decomposition;
    long long length8_loops = 0;
    std::optional<NormalLoop> witness;
};

/// Passes iff the pattern splits into loops of length 3 and 4 plus at most one loop of
/// length 8. The witness is the first loop that breaks the rule.
inline Check348Result check_348(const CurvePattern& p) {
    Check348Result r;
    r.decomposition = decompose_pattern(p);
    r.pass = true;
    for (const auto& loop : r.decomposition.loops) {
        if (loop.length == 3 || loop.length == 4) continue;
        if (loop.length == 8 && r.length8_loops == 0) {
            ++r.length8_loops;
            continue;
        }
        if (loop.length == 8) ++r.length8_loops;
        if (r.pass) r.witness = loop;
        r.pass = false;
    }
    return r;
}

struct Surface348Result {
    bool pass = true;
    std::vector<Check348Result> per_tet;
    long long length8_total = 0;
    std::optional<std::size_t> witness_tet;
    std::optional<NormalLoop> witness;
};

/// Per-tetrahedron check plus the global clause: at most one length-8 loop over all
/// tetrahedra.
inline Surface348Result check_348_surface(const SurfaceVector& v) {
    Surface348Result r;
    for (std::size_t t = 0; t < v.size(); ++t) {
        auto c = check_348(boundary_pattern(v.tets[t]));
        if (!c.pass && r.pass) {
            r.pass = false;
            r.witness_tet = t;
            r.witness = c.witness;
        }
        for (const auto& loop : c.decomposition.loops) {
            if (loop.length != 8) continue;
            if (++r.length8_total == 2 && r.pass) {
                r.pass = false;
                r.witness_tet = t;
                r.witness = loop;
            }
        }
        r.per_tet.push_back(std::move(c));
    }
    return r;
}

}  // namespace normalhst
