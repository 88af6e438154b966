#pragma once

// Explicit reconstruction of a surface from its normal coordinates.
//
// Every piece is instantiated. Inside a tetrahedron the arcs at corner v of face f are
// stacked by distance from v (triangles at v first, then quads/octagons); arcs glue across
// faces position by position, which is the order-preserving identification. Crossing
// points on edges are addressed by their distance from the lower-numbered endpoint.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "normalhst/detail/union_find.hpp"
#include "normalhst/errors.hpp"
#include "normalhst/normal_surfaces.hpp"
#include "normalhst/tetrahedron.hpp"
#include "normalhst/triangulation.hpp"

namespace normalhst {

struct Piece {
    std::size_t tet = 0;
    PieceKind kind = PieceKind::Triangle;
    int type = 0;
    std::size_t index = 0;
};

/// Two pieces sharing a normal arc across a face, or the two tubed pieces.
struct PieceGluing {
    std::size_t first = 0;
    std::size_t second = 0;
    bool tube = false;
};

enum class Orientability { Yes, No, Unknown };

inline const char* to_string(Orientability o) {
    switch (o) {
        case Orientability::Yes: return "yes";
        case Orientability::No: return "no";
        case Orientability::Unknown: return "unknown";
    }
    return "?";
}

struct SurfaceSummary {
    Integer euler_characteristic = 0;
    std::size_t component_count = 0;
    std::vector<long long> component_chi;
    std::vector<bool> component_orientable;
    std::vector<bool> component_closed;
    std::vector<bool> is_sphere_component;
    Orientability orientable = Orientability::Unknown;
    std::vector<Integer> edge_weights;
};

struct Reconstruction {
    SurfaceSummary summary;
    std::vector<Piece> pieces;
    std::vector<PieceGluing> gluings;
    std::vector<std::size_t> component_of;  // per piece
};

namespace detail {

/// One boundary arc of a piece: it lies on `face`, cuts `corner`, and the boundary cycle
/// leaves it along edge (corner, to).
struct ArcStep {
    int face;
    int corner;
    int to;
};

inline std::vector<ArcStep> piece_cycle(PieceKind kind, int type) {
    using tet::face_containing;
    if (kind == PieceKind::Triangle) {
        const int v = type;
        std::array<int, 3> x{};
        int k = 0;
        for (int w = 0; w < 4; ++w)
            if (w != v) x[static_cast<std::size_t>(k++)] = w;
        return {{face_containing(v, x[0], x[1]), v, x[1]},
                {face_containing(v, x[1], x[2]), v, x[2]},
                {face_containing(v, x[2], x[0]), v, x[0]}};
    }
    const int a = 0, b = type + 1;
    int c = -1, d = -1;
    for (int w = 1; w < 4; ++w) {
        if (w == b) continue;
        (c < 0 ? c : d) = w;
    }
    if (kind == PieceKind::Quad) {
        // ac -> ad -> bd -> bc
        return {{b, a, d}, {c, d, b}, {a, b, c}, {d, c, a}};
    }
    // ab(near a) -> ac -> cd(near c) -> bc -> ab(near b) -> bd -> cd(near d) -> ad
    return {{d, a, c}, {b, c, d}, {a, c, b}, {d, b, a}, {c, b, d}, {a, d, c}, {b, d, a}, {c, a, b}};
}

/// +1 if the right-hand normal of the listed cycle points to the piece's low side (towards
/// the cut-off vertex for a triangle, towards vertex 0 for a quad).
inline int normal_towards_low_side(PieceKind kind, int type) {
    static constexpr std::array<std::array<long, 3>, 4> P{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}}};
    auto mid = [](int u, int w) {
        std::array<long, 3> m{};
        for (std::size_t i = 0; i < 3; ++i)
            m[i] = (P[static_cast<std::size_t>(u)][i] + P[static_cast<std::size_t>(w)][i]) / 2;
        return m;
    };
    auto steps = piece_cycle(kind, type);
    // Points where consecutive arcs meet: the start of step i is the end of step i-1.
    std::vector<std::array<long, 3>> pts;
    for (std::size_t i = 0; i < steps.size(); ++i) pts.push_back(mid(steps[i].corner, steps[i].to));
    std::array<long, 3> n{0, 0, 0};  // Newell normal
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[(i + 1) % pts.size()];
        n[0] += (p[1] - q[1]) * (p[2] + q[2]);
        n[1] += (p[2] - q[2]) * (p[0] + q[0]);
        n[2] += (p[0] - q[0]) * (p[1] + q[1]);
    }
    const int low = kind == PieceKind::Triangle ? type : 0;
    long dot = 0;
    for (std::size_t i = 0; i < 3; ++i) dot += n[i] * (P[static_cast<std::size_t>(low)][i] - pts[0][i]);
    return dot > 0 ? 1 : -1;
}

inline std::size_t to_size(const Integer& x, std::size_t ceiling, const char* what) {
    if (x < 0 || x > ceiling) throw ResourceError(std::string("reconstruction ceiling exceeded: ") + what);
    return static_cast<std::size_t>(x);
}

}  // namespace detail

inline constexpr std::size_t kDefaultPieceCeiling = 1'000'000;

/// Builds the surface piece by piece and reports components, per-component Euler
/// characteristic, orientability and edge weights. Throws PreconditionError on
/// inadmissible input (including a tube whose pieces are not adjacent).
inline Reconstruction reconstruct_surface(const Triangulation& tri, const Skeleton& sk, const SurfaceVector& v,
                                          std::size_t piece_ceiling = kDefaultPieceCeiling) {
    if (v.size() != tri.size()) throw PreconditionError("surface vector dimension mismatch");
    if (auto problem = tube_problem(tri, v)) throw PreconditionError("reconstruct_surface: " + *problem);
    if (!is_admissible(tri, v)) throw PreconditionError("reconstruct_surface: inadmissible surface vector");
    if (v.total() > piece_ceiling) throw ResourceError("reconstruction ceiling exceeded: piece count");

    const std::size_t n = tri.size();
    Reconstruction out;

    // Piece ids, grouped per tetrahedron and piece slot (tri 0..3, quad 4..6, oct 7..9).
    std::vector<std::array<std::size_t, 10>> first(n), count(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto& tc = v.tets[t];
        for (int s = 0; s < 10; ++s) {
            const auto su = static_cast<std::size_t>(s);
            const Integer& c = s < 4 ? tc.tri[su] : s < 7 ? tc.quad[su - 4] : tc.oct[su - 7];
            first[t][su] = out.pieces.size();
            count[t][su] = static_cast<std::size_t>(c);
            const PieceKind kind = s < 4 ? PieceKind::Triangle : s < 7 ? PieceKind::Quad : PieceKind::Octagon;
            const int type = s < 4 ? s : s < 7 ? s - 4 : s - 7;
            for (std::size_t i = 0; i < count[t][su]; ++i) out.pieces.push_back({t, kind, type, i});
        }
    }
    const std::size_t num_pieces = out.pieces.size();

    // Arc stacks per (tet, face, corner).
    auto stack_key = [](std::size_t t, int f, int c) { return 16 * t + 4 * static_cast<std::size_t>(f) + static_cast<std::size_t>(c); };
    std::vector<std::vector<std::size_t>> stacks(16 * n);
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            for (int c : tet::face_vertices(f)) {
                auto& st = stacks[stack_key(t, f, c)];
                const auto cu = static_cast<std::size_t>(c);
                for (std::size_t i = 0; i < count[t][cu]; ++i) st.push_back(first[t][cu] + i);
                const int q = tet::quad_cutting(f, c);
                const auto qs = static_cast<std::size_t>(4 + q);
                const std::size_t m = count[t][qs];
                for (std::size_t i = 0; i < m; ++i)
                    st.push_back(first[t][qs] + (tet::on_low_side(q, c) ? i : m - 1 - i));
                for (int k = 0; k < 3; ++k) {
                    if (k == q) continue;
                    const auto ks = static_cast<std::size_t>(7 + k);
                    const std::size_t mk = count[t][ks];
                    for (std::size_t i = 0; i < mk; ++i)
                        st.push_back(first[t][ks] + (tet::on_low_side(k, c) ? i : mk - 1 - i));
                }
            }
        }
    }

    // Arc ids and, per arc, the vertex its piece's boundary heads towards.
    std::vector<std::size_t> arc_base(16 * n, 0);
    std::size_t num_arcs = 0;
    for (std::size_t key = 0; key < stacks.size(); ++key) {
        arc_base[key] = num_arcs;
        num_arcs += stacks[key].size();
    }
    std::vector<int> arc_to(num_arcs, -1);
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            for (int c : tet::face_vertices(f)) {
                const auto key = stack_key(t, f, c);
                for (std::size_t pos = 0; pos < stacks[key].size(); ++pos) {
                    const auto& piece = out.pieces[stacks[key][pos]];
                    for (const auto& step : detail::piece_cycle(piece.kind, piece.type))
                        if (step.face == f && step.corner == c) arc_to[arc_base[key] + pos] = step.to;
                    if (arc_to[arc_base[key] + pos] < 0) throw std::logic_error("piece has no arc at its stack slot");
                }
            }
        }
    }

    // Crossing points: (tet, edge, distance from the lower endpoint).
    std::vector<std::size_t> point_base(6 * n + 1, 0);
    std::vector<std::size_t> edge_count(6 * n, 0);
    for (std::size_t t = 0; t < n; ++t)
        for (int e = 0; e < 6; ++e)
            edge_count[6 * t + static_cast<std::size_t>(e)] = detail::to_size(edge_crossings(v.tets[t], e), piece_ceiling * 2, "edge points");
    for (std::size_t i = 0; i < 6 * n; ++i) point_base[i + 1] = point_base[i] + edge_count[i];
    const std::size_t num_points = point_base[6 * n];
    auto point_id = [&](std::size_t t, int from, int towards, std::size_t dist) {
        const int e = tet::edge_index(from, towards);
        const std::size_t w = edge_count[6 * t + static_cast<std::size_t>(e)];
        if (dist >= w) throw std::logic_error("arc endpoint beyond edge weight");
        return point_base[6 * t + static_cast<std::size_t>(e)] + (from < towards ? dist : w - 1 - dist);
    };

    constexpr std::size_t none = detail::UnionFind::npos;
    std::vector<std::size_t> point_piece(num_points, none);
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            for (int c : tet::face_vertices(f)) {
                const auto key = stack_key(t, f, c);
                for (std::size_t pos = 0; pos < stacks[key].size(); ++pos) {
                    const std::size_t pc = stacks[key][pos];
                    for (int x : tet::face_vertices(f)) {
                        if (x == c) continue;
                        auto& slot = point_piece[point_id(t, c, x, pos)];
                        if (slot == none) slot = pc;
                        else if (slot != pc) throw std::logic_error("two pieces claim one edge crossing");
                    }
                }
            }
        }
    }

    detail::UnionFind piece_uf(num_pieces), arc_uf(num_arcs), point_uf(num_points);
    // Orientation constraints: (piece, piece, 1 if the orientation signs must differ).
    struct Constraint {
        std::size_t a, b;
        int flip;
    };
    std::vector<Constraint> constraints;
    std::vector<bool> piece_on_boundary(num_pieces, false);

    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) {
                for (int c : tet::face_vertices(f))
                    for (auto pc : stacks[stack_key(t, f, c)]) piece_on_boundary[pc] = true;
                continue;
            }
            const int tf = g->face(f);
            if (std::make_pair(g->tet, tf) < std::make_pair(t, f)) continue;
            for (int c : tet::face_vertices(f)) {
                const int tc = g->perm[c];
                const auto ka = stack_key(t, f, c);
                const auto kb = stack_key(g->tet, tf, tc);
                if (stacks[ka].size() != stacks[kb].size())
                    throw std::logic_error("matching violated during reconstruction");
                for (std::size_t pos = 0; pos < stacks[ka].size(); ++pos) {
                    const std::size_t pa = stacks[ka][pos], pb = stacks[kb][pos];
                    const std::size_t aa = arc_base[ka] + pos, ab = arc_base[kb] + pos;
                    piece_uf.unite(pa, pb);
                    arc_uf.unite(aa, ab);
                    out.gluings.push_back({pa, pb, false});
                    const bool same_direction = g->perm[arc_to[aa]] == arc_to[ab];
                    constraints.push_back({pa, pb, same_direction ? 1 : 0});
                }
            }
            // Crossing points on the three edges of the face.
            auto fv = tet::face_vertices(f);
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    const int x = fv[static_cast<std::size_t>(i)], y = fv[static_cast<std::size_t>(j)];
                    const std::size_t w = edge_count[6 * t + static_cast<std::size_t>(tet::edge_index(x, y))];
                    for (std::size_t d = 0; d < w; ++d)
                        point_uf.unite(point_id(t, x, y, d), point_id(g->tet, g->perm[x], g->perm[y], d));
                }
            }
        }
    }

    if (v.tube) {
        const auto& tube = *v.tube;
        const auto& tc = v.tets[tube.tet];
        auto id_of = [&](const PieceRef& p) {
            const int slot = p.kind == PieceKind::Triangle ? p.type : 4 + p.type;
            return first[tube.tet][static_cast<std::size_t>(slot)] + static_cast<std::size_t>(p.index);
        };
        const std::size_t pa = id_of(tube.first), pb = id_of(tube.second);
        auto sa = *detail::piece_sides(tc, tube.first);
        auto sb = *detail::piece_sides(tc, tube.second);
        // Shared region and, per piece, whether it lies on the piece's low side.
        bool a_low = true, b_low = true;
        if (sa.first == sb.first) { a_low = true; b_low = true; }
        else if (sa.first == sb.second) { a_low = true; b_low = false; }
        else if (sa.second == sb.first) { a_low = false; b_low = true; }
        else { a_low = false; b_low = false; }
        const int na = detail::normal_towards_low_side(tube.first.kind, tube.first.type) * (a_low ? 1 : -1);
        const int nb = detail::normal_towards_low_side(tube.second.kind, tube.second.type) * (b_low ? 1 : -1);
        // Across a tube both disks' normals point into the shared region.
        constraints.push_back({pa, pb, na * nb > 0 ? 0 : 1});
        piece_uf.unite(pa, pb);
        out.gluings.push_back({pa, pb, true});
    }

    std::size_t num_components = 0;
    out.component_of = piece_uf.labels(&num_components);
    auto& s = out.summary;
    s.component_count = num_components;
    std::vector<long long> V(num_components, 0), E(num_components, 0), F(num_components, 0);
    for (std::size_t p = 0; p < num_pieces; ++p) ++F[out.component_of[p]];
    {
        std::vector<bool> seen(num_points, false);
        for (std::size_t pt = 0; pt < num_points; ++pt) {
            const std::size_t r = point_uf.find(pt);
            if (seen[r]) continue;
            seen[r] = true;
            ++V[out.component_of[point_piece[pt]]];
        }
    }
    {
        std::vector<bool> seen(num_arcs, false);
        for (std::size_t key = 0; key < stacks.size(); ++key) {
            for (std::size_t pos = 0; pos < stacks[key].size(); ++pos) {
                const std::size_t r = arc_uf.find(arc_base[key] + pos);
                if (seen[r]) continue;
                seen[r] = true;
                ++E[out.component_of[stacks[key][pos]]];
            }
        }
    }
    s.component_chi.resize(num_components);
    s.component_closed.assign(num_components, true);
    for (std::size_t c = 0; c < num_components; ++c) s.component_chi[c] = V[c] - E[c] + F[c];
    if (v.tube) s.component_chi[out.component_of[out.gluings.back().first]] -= 2;
    for (std::size_t p = 0; p < num_pieces; ++p)
        if (piece_on_boundary[p]) s.component_closed[out.component_of[p]] = false;

    // Orientation propagation over the gluing graph.
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(num_pieces);
    for (const auto& c : constraints) {
        adj[c.a].push_back({c.b, c.flip});
        adj[c.b].push_back({c.a, c.flip});
    }
    s.component_orientable.assign(num_components, true);
    std::vector<int> sign(num_pieces, 0);
    for (std::size_t start = 0; start < num_pieces; ++start) {
        if (sign[start]) continue;
        sign[start] = 1;
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            for (auto [q, flip] : adj[p]) {
                const int want = flip ? -sign[p] : sign[p];
                if (!sign[q]) {
                    sign[q] = want;
                    stack.push_back(q);
                } else if (sign[q] != want) {
                    s.component_orientable[out.component_of[p]] = false;
                }
            }
        }
    }

    s.euler_characteristic = 0;
    for (auto chi : s.component_chi) s.euler_characteristic += chi;
    s.is_sphere_component.resize(num_components);
    for (std::size_t c = 0; c < num_components; ++c)
        s.is_sphere_component[c] = s.component_chi[c] == 2 && s.component_closed[c] && s.component_orientable[c];
    if (num_components == 0) {
        s.orientable = Orientability::Unknown;
    } else {
        bool all = true;
        for (bool o : s.component_orientable) all = all && o;
        s.orientable = all ? Orientability::Yes : Orientability::No;
    }
    s.edge_weights = edge_weights(sk, v);
    return out;
}

inline Reconstruction reconstruct_surface(const Triangulation& tri, const SurfaceVector& v) {
    return reconstruct_surface(tri, compute_skeleton(tri), v);
}

}  // namespace normalhst
