#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "normalhst/errors.hpp"
#include "normalhst/tetrahedron.hpp"
#include "normalhst/triangulation.hpp"

namespace normalhst {

using Integer = boost::multiprecision::cpp_int;

/// Normal coordinates of one tetrahedron.
///   tri[v] : triangles cutting off vertex v
///   quad[q]: quads of type q
///   oct[k] : octagons of type k
struct TetCoords {
    std::array<Integer, 4> tri{};
    std::array<Integer, 3> quad{};
    std::array<Integer, 3> oct{};

    Integer quad_total() const { return quad[0] + quad[1] + quad[2]; }
    Integer oct_total() const { return oct[0] + oct[1] + oct[2]; }
    Integer total() const { return tri[0] + tri[1] + tri[2] + tri[3] + quad_total() + oct_total(); }

    friend bool operator==(const TetCoords&, const TetCoords&) = default;
};

enum class PieceKind { Triangle, Quad, Octagon };

inline const char* to_string(PieceKind k) {
    switch (k) {
        case PieceKind::Triangle: return "tri";
        case PieceKind::Quad: return "quad";
        case PieceKind::Octagon: return "oct";
    }
    return "?";
}

/// One instantiated piece inside a tetrahedron. `index` counts parallel copies in normal
/// order: triangles from their vertex outwards, quads and octagons from the side holding
/// vertex 0.
struct PieceRef {
    PieceKind kind = PieceKind::Triangle;
    int type = 0;
    Integer index = 0;
    friend bool operator==(const PieceRef&, const PieceRef&) = default;
};

/// Two normal pieces of one tetrahedron joined by a single tube. The pieces must bound a
/// common complementary region of the tetrahedron (adjacent in the normal stacking); this
/// is the combinatorial stand-in for an unknotted tube.
struct TubeAnnotation {
    std::size_t tet = 0;
    PieceRef first;
    PieceRef second;
    friend bool operator==(const TubeAnnotation&, const TubeAnnotation&) = default;
};

struct SurfaceVector {
    std::vector<TetCoords> tets;
    std::optional<TubeAnnotation> tube;

    SurfaceVector() = default;
    explicit SurfaceVector(std::size_t n) : tets(n) {}

    std::size_t size() const noexcept { return tets.size(); }

    Integer total() const {
        Integer s = 0;
        for (const auto& t : tets) s += t.total();
        return s;
    }
    Integer oct_total() const {
        Integer s = 0;
        for (const auto& t : tets) s += t.oct_total();
        return s;
    }
    bool is_zero() const { return total() == 0 && !tube; }

    /// Coordinate-wise sum; the tube annotation is kept only if exactly one summand has one.
    friend SurfaceVector operator+(const SurfaceVector& a, const SurfaceVector& b) {
        if (a.size() != b.size()) throw PreconditionError("surface vectors of different dimension");
        SurfaceVector out(a.size());
        for (std::size_t t = 0; t < a.size(); ++t) {
            for (std::size_t i = 0; i < 4; ++i) out.tets[t].tri[i] = a.tets[t].tri[i] + b.tets[t].tri[i];
            for (std::size_t i = 0; i < 3; ++i) {
                out.tets[t].quad[i] = a.tets[t].quad[i] + b.tets[t].quad[i];
                out.tets[t].oct[i] = a.tets[t].oct[i] + b.tets[t].oct[i];
            }
        }
        if (a.tube && b.tube) throw PreconditionError("sum of two tubed surfaces");
        out.tube = a.tube ? a.tube : b.tube;
        return out;
    }

    /// Flat triangle/quad coordinates, 7 per tetrahedron (tri0..3, quad0..2).
    std::vector<Integer> standard_coordinates() const {
        std::vector<Integer> out;
        out.reserve(7 * tets.size());
        for (const auto& t : tets) {
            for (const auto& x : t.tri) out.push_back(x);
            for (const auto& x : t.quad) out.push_back(x);
        }
        return out;
    }

    static SurfaceVector from_standard(const std::vector<Integer>& x) {
        if (x.size() % 7 != 0) throw PreconditionError("standard coordinate length not a multiple of 7");
        SurfaceVector out(x.size() / 7);
        for (std::size_t t = 0; t < out.size(); ++t) {
            for (std::size_t i = 0; i < 4; ++i) out.tets[t].tri[i] = x[7 * t + i];
            for (std::size_t i = 0; i < 3; ++i) out.tets[t].quad[i] = x[7 * t + 4 + i];
        }
        return out;
    }

    friend bool operator==(const SurfaceVector&, const SurfaceVector&) = default;
};

// ---------------------------------------------------------------------------
// Local incidence

/// Number of normal arcs of tc on face f cutting corner v.
inline Integer arc_count(const TetCoords& tc, int f, int v) {
    const int q = tet::quad_cutting(f, v);
    const auto qi = static_cast<std::size_t>(q);
    // An octagon of type k lays the arcs of the two quad types other than k on each face.
    return tc.tri[static_cast<std::size_t>(v)] + tc.quad[qi] + (tc.oct_total() - tc.oct[qi]);
}

/// Number of points where the pieces of tc cross local edge e.
inline Integer edge_crossings(const TetCoords& tc, int e) {
    const auto [a, b] = tet::kEdgeVertices[static_cast<std::size_t>(e)];
    const auto qe = static_cast<std::size_t>(tet::quad_missing_edge(e));
    return tc.tri[static_cast<std::size_t>(a)] + tc.tri[static_cast<std::size_t>(b)] + (tc.quad_total() - tc.quad[qe]) +
           2 * tc.oct[qe] + (tc.oct_total() - tc.oct[qe]);
}

// ---------------------------------------------------------------------------
// Matching equations

/// One matching equation: arcs of (tet, face, corner) minus arcs of (other_tet, other_face,
/// other_corner) vanish.
struct MatchingRow {
    std::vector<int> coeffs;  // over the 7 * n triangle/quad unknowns
    std::size_t tet = 0;
    int face = 0;
    int corner = 0;
    std::size_t other_tet = 0;
    int other_face = 0;
    int other_corner = 0;
};

struct MatchingSystem {
    std::size_t unknowns = 0;
    std::vector<MatchingRow> rows;
};

inline std::size_t tri_column(std::size_t t, int v) { return 7 * t + static_cast<std::size_t>(v); }
inline std::size_t quad_column(std::size_t t, int q) { return 7 * t + 4 + static_cast<std::size_t>(q); }

/// One equation per glued face orbit and arc type, in face-orbit order; boundary faces
/// contribute nothing.
inline MatchingSystem matching_system(const Triangulation& tri) {
    MatchingSystem sys;
    sys.unknowns = 7 * tri.size();
    for (std::size_t t = 0; t < tri.size(); ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            const int tf = g->face(f);
            if (std::make_pair(g->tet, tf) < std::make_pair(t, f)) continue;
            for (int v : tet::face_vertices(f)) {
                MatchingRow row;
                row.coeffs.assign(sys.unknowns, 0);
                row.tet = t;
                row.face = f;
                row.corner = v;
                row.other_tet = g->tet;
                row.other_face = tf;
                row.other_corner = g->perm[v];
                row.coeffs[tri_column(t, v)] += 1;
                row.coeffs[quad_column(t, tet::quad_cutting(f, v))] += 1;
                row.coeffs[tri_column(g->tet, row.other_corner)] -= 1;
                row.coeffs[quad_column(g->tet, tet::quad_cutting(tf, row.other_corner))] -= 1;
                sys.rows.push_back(std::move(row));
            }
        }
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Tube adjacency

namespace detail {

/// A complementary region of the pieces inside one tetrahedron.
struct Region {
    int vertex = -1;  // -1: central region
    Integer depth = 0;  // vertex region: between triangle depth-1 and depth; central: slab index
    friend bool operator==(const Region&, const Region&) = default;
};

inline std::optional<int> central_split(const TetCoords& tc, Integer* count) {
    for (int q = 0; q < 3; ++q) {
        Integer m = tc.quad[static_cast<std::size_t>(q)] + tc.oct[static_cast<std::size_t>(q)];
        if (m > 0) {
            *count = m;
            return q;
        }
    }
    *count = 0;
    return std::nullopt;
}

/// The two regions a piece bounds, or nullopt if the piece does not exist.
inline std::optional<std::pair<Region, Region>> piece_sides(const TetCoords& tc, const PieceRef& p) {
    if (p.index < 0 || p.type < 0) return std::nullopt;
    Integer m = 0;
    auto split = central_split(tc, &m);
    auto central_for = [&](int v) {
        Region r;
        r.depth = (!split || tet::on_low_side(*split, v)) ? Integer(0) : m;
        return r;
    };
    switch (p.kind) {
        case PieceKind::Triangle: {
            if (p.type > 3 || p.index >= tc.tri[static_cast<std::size_t>(p.type)]) return std::nullopt;
            Region inner{p.type, p.index};
            Region outer = p.index + 1 < tc.tri[static_cast<std::size_t>(p.type)] ? Region{p.type, p.index + 1}
                                                                                  : central_for(p.type);
            return std::make_pair(inner, outer);
        }
        case PieceKind::Quad:
        case PieceKind::Octagon: {
            if (p.type > 2) return std::nullopt;
            const auto& arr = p.kind == PieceKind::Quad ? tc.quad : tc.oct;
            if (p.index >= arr[static_cast<std::size_t>(p.type)]) return std::nullopt;
            if (!split || *split != p.type) return std::nullopt;
            return std::make_pair(Region{-1, p.index}, Region{-1, p.index + 1});
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Empty when the tube joins two distinct existing normal pieces that face a common region.
inline std::optional<std::string> tube_problem(const Triangulation& tri, const SurfaceVector& v) {
    if (!v.tube) return std::nullopt;
    const auto& tube = *v.tube;
    if (tube.tet >= tri.size()) return "tube references tetrahedron out of range";
    if (tube.first.kind == PieceKind::Octagon || tube.second.kind == PieceKind::Octagon)
        return "tube must join two normal disks";
    if (tube.first == tube.second) return "tube joins a piece to itself";
    const auto& tc = v.tets[tube.tet];
    auto a = detail::piece_sides(tc, tube.first);
    auto b = detail::piece_sides(tc, tube.second);
    if (!a || !b) return "tube references a piece that does not exist";
    if (a->first == b->first || a->first == b->second || a->second == b->first || a->second == b->second)
        return std::nullopt;
    return "tube pieces not adjacent in the normal stacking";
}

// ---------------------------------------------------------------------------
// Admissibility

enum class SurfaceMode { Normal, AlmostNormal };

struct AdmissibilityReport {
    std::vector<std::string> violations;
    bool admissible() const { return violations.empty(); }
};

/// Checks nonnegativity, the matching equations (octagons included), the quad constraint
/// and the mode-specific exceptional-piece rule. Every violated condition is listed.
inline AdmissibilityReport check_admissible(const Triangulation& tri, const SurfaceVector& v, SurfaceMode mode) {
    if (v.size() != tri.size())
        throw PreconditionError("surface vector has " + std::to_string(v.size()) + " tetrahedra, triangulation has " +
                                std::to_string(tri.size()));
    AdmissibilityReport rep;
    auto where = [](std::size_t t) { return "tetrahedron " + std::to_string(t); };

    bool negative = false;
    for (std::size_t t = 0; t < v.size(); ++t) {
        const auto& tc = v.tets[t];
        for (const auto& x : tc.tri) negative |= x < 0;
        for (const auto& x : tc.quad) negative |= x < 0;
        for (const auto& x : tc.oct) negative |= x < 0;
        if (negative) {
            rep.violations.push_back("negative coordinate in " + where(t));
            return rep;
        }
    }

    for (std::size_t t = 0; t < v.size(); ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            const int tf = g->face(f);
            if (std::make_pair(g->tet, tf) < std::make_pair(t, f)) continue;
            for (int c : tet::face_vertices(f)) {
                if (arc_count(v.tets[t], f, c) != arc_count(v.tets[g->tet], tf, g->perm[c]))
                    rep.violations.push_back("matching equation fails on " + where(t) + " face " + std::to_string(f) +
                                             " corner " + std::to_string(c));
            }
        }
    }

    for (std::size_t t = 0; t < v.size(); ++t) {
        int nonzero = 0;
        for (const auto& x : v.tets[t].quad) nonzero += x > 0 ? 1 : 0;
        if (nonzero > 1) rep.violations.push_back("quad constraint: two quad types in " + where(t));
    }

    const Integer octs = v.oct_total();
    if (mode == SurfaceMode::Normal) {
        if (octs != 0) rep.violations.push_back("octagon present in normal mode");
        if (v.tube) rep.violations.push_back("tube present in normal mode");
    } else {
        if (octs > 0 && v.tube) {
            rep.violations.push_back("both an octagon and a tube present");
        } else if (octs > 1) {
            rep.violations.push_back("more than one octagon");
        } else if (octs == 1) {
            for (std::size_t t = 0; t < v.size(); ++t)
                if (v.tets[t].oct_total() > 0 && v.tets[t].quad_total() > 0)
                    rep.violations.push_back("octagon shares " + where(t) + " with quads");
        } else if (!v.tube) {
            rep.violations.push_back("no exceptional piece (octagon or tube)");
        }
        if (auto problem = tube_problem(tri, v)) rep.violations.push_back(*problem);
    }
    return rep;
}

inline bool is_admissible(const Triangulation& tri, const SurfaceVector& v) {
    return check_admissible(tri, v, SurfaceMode::Normal).admissible() ||
           check_admissible(tri, v, SurfaceMode::AlmostNormal).admissible();
}

enum class SurfaceClass { Normal, AlmostNormalOctagon, AlmostNormalTube, Inadmissible };

inline const char* to_string(SurfaceClass c) {
    switch (c) {
        case SurfaceClass::Normal: return "Normal";
        case SurfaceClass::AlmostNormalOctagon: return "AlmostNormalOctagon";
        case SurfaceClass::AlmostNormalTube: return "AlmostNormalTube";
        case SurfaceClass::Inadmissible: return "Inadmissible";
    }
    return "?";
}

inline SurfaceClass classify(const Triangulation& tri, const SurfaceVector& v) {
    if (v.size() != tri.size()) return SurfaceClass::Inadmissible;
    if (check_admissible(tri, v, SurfaceMode::Normal).admissible()) return SurfaceClass::Normal;
    if (check_admissible(tri, v, SurfaceMode::AlmostNormal).admissible())
        return v.tube ? SurfaceClass::AlmostNormalTube : SurfaceClass::AlmostNormalOctagon;
    return SurfaceClass::Inadmissible;
}

// ---------------------------------------------------------------------------
// Vertex links and cell counts

inline SurfaceVector vertex_link(const Triangulation& tri, const Skeleton& sk, std::size_t vertex_orbit) {
    if (vertex_orbit >= sk.vertices.size()) throw PreconditionError("vertex orbit out of range");
    SurfaceVector out(tri.size());
    for (const auto& m : sk.vertices[vertex_orbit].members) out.tets[m.tet].tri[static_cast<std::size_t>(m.index)] += 1;
    return out;
}

/// Crossings of v with each edge orbit, read off the orbit's first member.
inline std::vector<Integer> edge_weights(const Skeleton& sk, const SurfaceVector& v) {
    std::vector<Integer> out;
    out.reserve(sk.edges.size());
    for (const auto& orbit : sk.edges) {
        const auto& m = orbit.members.front();
        out.push_back(edge_crossings(v.tets[m.tet], m.index));
    }
    return out;
}

/// Euler characteristic by cell counting: crossings with edges, minus arcs on faces, plus
/// pieces. A tube replaces its two disks by an annulus, which costs 2.
inline Integer euler_characteristic(const Triangulation& tri, const Skeleton& sk, const SurfaceVector& v) {
    if (!is_admissible(tri, v)) throw PreconditionError("euler_characteristic: inadmissible surface vector");
    Integer vertices = 0, edges = 0, faces = 0;
    for (const auto& w : edge_weights(sk, v)) vertices += w;
    for (const auto& orbit : sk.faces) {
        const auto& m = orbit.members.front();
        for (int c : tet::face_vertices(m.index)) edges += arc_count(v.tets[m.tet], m.index, c);
    }
    for (const auto& tc : v.tets) faces += tc.total();
    Integer chi = vertices - edges + faces;
    if (v.tube) chi -= 2;
    return chi;
}

inline Integer euler_characteristic(const Triangulation& tri, const SurfaceVector& v) {
    return euler_characteristic(tri, compute_skeleton(tri), v);
}

}  // namespace normalhst
