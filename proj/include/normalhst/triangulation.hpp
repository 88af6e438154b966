#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "normalhst/detail/union_find.hpp"
#include "normalhst/errors.hpp"
#include "normalhst/tetrahedron.hpp"

namespace normalhst {

/// Face `face` of tetrahedron `tet` is identified with face `perm[source face]`
/// of `tet`; `perm` sends the corners of the source tetrahedron to the target.
struct Gluing {
    std::size_t tet = 0;
    tet::Perm4 perm;

    int face(int source_face) const { return perm[source_face]; }
    friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// A (possibly bounded, possibly pseudo-manifold) simplicial 3-complex given by face pairings.
/// Immutable after construction; gluings are involutive and never fold a face onto itself.
class Triangulation {
public:
    using FaceGluings = std::array<std::optional<Gluing>, 4>;

    Triangulation() = default;

    /// Validates involutivity, ranges and bijectivity; throws ValidationError otherwise.
    explicit Triangulation(std::vector<FaceGluings> gluings) : gluings_(std::move(gluings)) { validate(); }

    std::size_t size() const noexcept { return gluings_.size(); }
    const std::optional<Gluing>& gluing(std::size_t t, int f) const { return gluings_.at(t)[static_cast<std::size_t>(f)]; }
    bool is_boundary_face(std::size_t t, int f) const { return !gluing(t, f).has_value(); }
    const std::vector<FaceGluings>& gluings() const noexcept { return gluings_; }

    bool is_closed() const {
        for (const auto& g : gluings_)
            for (const auto& x : g)
                if (!x) return false;
        return true;
    }

    /// Serialises in the text format read by parse_triangulation (comment-free, canonical).
    std::string to_text() const {
        std::ostringstream os;
        os << gluings_.size() << '\n';
        for (const auto& g : gluings_) {
            for (int f = 0; f < 4; ++f) {
                if (f) os << ' ';
                const auto& x = g[static_cast<std::size_t>(f)];
                if (!x) {
                    os << '-';
                    continue;
                }
                os << x->tet << ':' << x->face(f) << ':';
                for (int v : tet::face_vertices(f)) os << (*x).perm[v];
            }
            os << '\n';
        }
        return os.str();
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;

private:
    void validate() const {
        if (gluings_.empty()) throw ValidationError("triangulation has no tetrahedra");
        for (std::size_t t = 0; t < gluings_.size(); ++t) {
            for (int f = 0; f < 4; ++f) {
                const auto& g = gluings_[t][static_cast<std::size_t>(f)];
                if (!g) continue;
                const std::string where = "tetrahedron " + std::to_string(t) + " face " + std::to_string(f);
                if (g->tet >= gluings_.size()) throw ValidationError(where + ": index out of range");
                if (!g->perm.is_bijection()) throw ValidationError(where + ": corner map not a bijection");
                const int tf = g->face(f);
                if (g->tet == t && tf == f) throw ValidationError(where + ": self-glued face");
                const auto& back = gluings_[g->tet][static_cast<std::size_t>(tf)];
                if (!back || back->tet != t || back->perm != g->perm.inverse())
                    throw ValidationError(where + ": non-involutive gluing");
            }
        }
    }

    std::vector<FaceGluings> gluings_;
};

namespace detail {

struct LineCursor {
    std::string_view line;
    std::size_t line_no;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    }
    bool at_end() {
        skip_space();
        return pos >= line.size();
    }
    /// Next whitespace-delimited token and its 1-based column.
    std::pair<std::string_view, std::size_t> token() {
        skip_space();
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        return {line.substr(start, pos - start), start + 1};
    }
};

inline std::optional<std::size_t> parse_index(std::string_view s) {
    if (s.empty() || s.size() > 12) return std::nullopt;
    std::size_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

}  // namespace detail

/// Reads the plain-text face-pairing format:
///
///     N
///     g0 g1 g2 g3      (one line per tetrahedron; gluing token per face)
///
/// A gluing token is `-` (boundary) or `t:f:abc`, where `abc` are the target corners of the
/// source face's corners taken in ascending order. `#` starts a comment.
inline Triangulation parse_triangulation(std::string_view text) {
    std::vector<detail::LineCursor> lines;
    {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            std::string_view line = text.substr(start, end - start);
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            detail::LineCursor cur{line, line_no};
            if (!cur.at_end()) lines.push_back(cur);
            start = end + 1;
        }
    }
    if (lines.empty()) throw ParseError("empty input; expected tetrahedron count", 1, 1);

    auto& head = lines.front();
    auto [count_tok, count_col] = head.token();
    auto count = detail::parse_index(count_tok);
    if (!count || *count == 0) throw ParseError("expected a positive tetrahedron count", head.line_no, count_col);
    if (!head.at_end()) {
        auto [extra, col] = head.token();
        throw ParseError("unexpected token '" + std::string(extra) + "' after tetrahedron count", head.line_no, col);
    }
    if (lines.size() - 1 != *count) {
        std::size_t ln = lines.size() > *count + 1 ? lines[*count + 1].line_no : lines.back().line_no;
        throw ParseError("expected " + std::to_string(*count) + " tetrahedron lines, found " +
                             std::to_string(lines.size() - 1),
                         ln, 1);
    }

    std::vector<Triangulation::FaceGluings> gluings(*count);
    for (std::size_t t = 0; t < *count; ++t) {
        auto& cur = lines[t + 1];
        for (int f = 0; f < 4; ++f) {
            auto [tok, col] = cur.token();
            if (tok.empty()) throw ParseError("expected 4 gluing tokens", cur.line_no, col);
            if (tok == "-") continue;
            auto c1 = tok.find(':');
            auto c2 = c1 == std::string_view::npos ? c1 : tok.find(':', c1 + 1);
            if (c2 == std::string_view::npos)
                throw ParseError("malformed gluing token '" + std::string(tok) + "'", cur.line_no, col);
            auto target = detail::parse_index(tok.substr(0, c1));
            auto tface = detail::parse_index(tok.substr(c1 + 1, c2 - c1 - 1));
            auto corners = tok.substr(c2 + 1);
            if (!target || !tface || corners.size() != 3)
                throw ParseError("malformed gluing token '" + std::string(tok) + "'", cur.line_no, col);
            if (*target >= *count)
                throw ParseError("index out of range: tetrahedron " + std::to_string(*target), cur.line_no, col);
            if (*tface > 3) throw ParseError("index out of range: face " + std::to_string(*tface), cur.line_no, col);
            std::array<std::uint8_t, 4> image{};
            image[static_cast<std::size_t>(f)] = static_cast<std::uint8_t>(*tface);
            auto src = tet::face_vertices(f);
            for (std::size_t i = 0; i < 3; ++i) {
                char c = corners[i];
                if (c < '0' || c > '3')
                    throw ParseError("corner map not a bijection: '" + std::string(corners) + "'", cur.line_no, col);
                image[static_cast<std::size_t>(src[i])] = static_cast<std::uint8_t>(c - '0');
            }
            tet::Perm4 perm(image);
            if (!perm.is_bijection())
                throw ParseError("corner map not a bijection: '" + std::string(corners) + "'", cur.line_no, col);
            if (*target == t && static_cast<int>(*tface) == f)
                throw ParseError("self-glued face", cur.line_no, col);
            gluings[t][static_cast<std::size_t>(f)] = Gluing{*target, perm};
        }
        if (!cur.at_end()) {
            auto [extra, col] = cur.token();
            throw ParseError("unexpected token '" + std::string(extra) + "'", cur.line_no, col);
        }
    }

    // Involutivity is a cross-line property; report it against the first offending line.
    for (std::size_t t = 0; t < *count; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings[t][static_cast<std::size_t>(f)];
            if (!g) continue;
            const auto& back = gluings[g->tet][static_cast<std::size_t>(g->face(f))];
            if (!back || back->tet != t || back->perm != g->perm.inverse())
                throw ParseError("non-involutive gluing of tetrahedron " + std::to_string(t) + " face " +
                                     std::to_string(f),
                                 lines[t + 1].line_no, 1);
        }
    }
    return Triangulation(std::move(gluings));
}

// ---------------------------------------------------------------------------
// Skeleton

/// A cell of one model tetrahedron: (tetrahedron, local vertex/edge/face index).
struct CellRef {
    std::size_t tet = 0;
    int index = 0;
    friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct Orbit {
    std::vector<CellRef> members;
    bool boundary = false;
};

struct Skeleton {
    std::vector<Orbit> vertices;
    std::vector<Orbit> edges;
    std::vector<Orbit> faces;
    std::size_t tetrahedra = 0;

    // (tet, local index) -> orbit id
    std::vector<std::array<std::size_t, 4>> vertex_of;
    std::vector<std::array<std::size_t, 6>> edge_of;
    std::vector<std::array<std::size_t, 4>> face_of;

    long long euler_characteristic() const {
        return static_cast<long long>(vertices.size()) - static_cast<long long>(edges.size()) +
               static_cast<long long>(faces.size()) - static_cast<long long>(tetrahedra);
    }
};

namespace detail {

template <std::size_t K>
std::vector<Orbit> collect_orbits(UnionFind& uf, std::size_t tets, std::vector<std::array<std::size_t, K>>& orbit_of) {
    std::size_t count = 0;
    auto labels = uf.labels(&count);
    std::vector<Orbit> orbits(count);
    orbit_of.assign(tets, {});
    for (std::size_t t = 0; t < tets; ++t) {
        for (std::size_t i = 0; i < K; ++i) {
            auto id = labels[t * K + i];
            orbit_of[t][i] = id;
            orbits[id].members.push_back({t, static_cast<int>(i)});
        }
    }
    return orbits;
}

}  // namespace detail

/// Vertex, edge and face orbits under the gluing identifications; a cell is a boundary
/// cell when it lies in some unglued face.
inline Skeleton compute_skeleton(const Triangulation& tri) {
    const std::size_t n = tri.size();
    detail::UnionFind verts(4 * n), edges(6 * n), faces(4 * n);
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            faces.unite(4 * t + static_cast<std::size_t>(f), 4 * g->tet + static_cast<std::size_t>(g->face(f)));
            for (int v : tet::face_vertices(f))
                verts.unite(4 * t + static_cast<std::size_t>(v), 4 * g->tet + static_cast<std::size_t>(g->perm[v]));
            auto fv = tet::face_vertices(f);
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    int e = tet::edge_index(fv[static_cast<std::size_t>(i)], fv[static_cast<std::size_t>(j)]);
                    edges.unite(6 * t + static_cast<std::size_t>(e), 6 * g->tet + static_cast<std::size_t>(g->perm.map_edge(e)));
                }
            }
        }
    }
    Skeleton sk;
    sk.tetrahedra = n;
    sk.vertices = detail::collect_orbits<4>(verts, n, sk.vertex_of);
    sk.edges = detail::collect_orbits<6>(edges, n, sk.edge_of);
    sk.faces = detail::collect_orbits<4>(faces, n, sk.face_of);
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_boundary_face(t, f)) continue;
            sk.faces[sk.face_of[t][static_cast<std::size_t>(f)]].boundary = true;
            auto fv = tet::face_vertices(f);
            for (int v : fv) sk.vertices[sk.vertex_of[t][static_cast<std::size_t>(v)]].boundary = true;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    sk.edges[sk.edge_of[t][static_cast<std::size_t>(tet::edge_index(fv[static_cast<std::size_t>(i)], fv[static_cast<std::size_t>(j)]))]]
                        .boundary = true;
        }
    }
    return sk;
}

/// Whether the tetrahedra can be oriented compatibly across every gluing.
inline bool is_orientable(const Triangulation& tri) {
    std::vector<int> orient(tri.size(), 0);
    for (std::size_t start = 0; start < tri.size(); ++start) {
        if (orient[start]) continue;
        orient[start] = 1;
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            std::size_t t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                // Compatible orientations see an odd gluing map between equally oriented tetrahedra.
                int want = -g->perm.sign() * orient[t];
                if (orient[g->tet] == 0) {
                    orient[g->tet] = want;
                    stack.push_back(g->tet);
                } else if (orient[g->tet] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Vertex links

struct VertexLinkReport {
    std::size_t vertex = 0;  // vertex orbit id
    long long triangles = 0;
    long long link_vertices = 0;
    long long link_edges = 0;
    long long euler_characteristic = 0;
    bool closed = true;  // no link boundary
    bool ok = false;     // sphere (interior vertex) or disk (boundary vertex)
};

struct ManifoldReport {
    bool is_manifold = false;
    bool orientable = false;
    std::vector<VertexLinkReport> links;
    std::vector<std::size_t> offending_vertices;
    std::vector<std::size_t> reversed_edges;  // edge orbits identified with themselves in reverse
};

/// Edge orbits that the gluings identify with themselves with the endpoints swapped.
inline std::vector<std::size_t> reversed_edges(const Triangulation& tri, const Skeleton& sk) {
    const std::size_t n = tri.size();
    // parity[t*6+e]: orientation of (t, e) relative to the first member of its orbit.
    std::vector<int> parity(6 * n, -1);
    std::vector<bool> bad(sk.edges.size(), false);
    for (std::size_t start = 0; start < 6 * n; ++start) {
        if (parity[start] >= 0) continue;
        parity[start] = 0;
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            std::size_t id = stack.back();
            stack.pop_back();
            const std::size_t t = id / 6;
            const int e = static_cast<int>(id % 6);
            const int a = tet::kEdgeVertices[static_cast<std::size_t>(e)][0];
            const int b = tet::kEdgeVertices[static_cast<std::size_t>(e)][1];
            for (int f = 0; f < 4; ++f) {
                if (f == a || f == b) continue;
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                const int flip = g->perm[a] < g->perm[b] ? 0 : 1;
                const std::size_t other = 6 * g->tet + static_cast<std::size_t>(g->perm.map_edge(e));
                const int want = parity[id] ^ flip;
                if (parity[other] < 0) {
                    parity[other] = want;
                    stack.push_back(other);
                } else if (parity[other] != want) {
                    bad[sk.edge_of[t][static_cast<std::size_t>(e)]] = true;
                }
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bad.size(); ++i)
        if (bad[i]) out.push_back(i);
    return out;
}

/// Builds each vertex link from the corner triangles of the incident tetrahedra and checks
/// that it is a 2-sphere (interior vertex) or a disk (boundary vertex); also rejects edges
/// folded onto themselves. Never throws on pseudo-manifolds; failures are reported.
inline ManifoldReport validate_manifold(const Triangulation& tri, const Skeleton& sk) {
    const std::size_t n = tri.size();
    // Link vertex (t, v, w), w != v, is the end of edge vw near v: index 16t + 4v + w.
    detail::UnionFind link_verts(16 * n);
    std::vector<long long> tris(sk.vertices.size(), 0), sides(sk.vertices.size(), 0);
    std::vector<bool> closed(sk.vertices.size(), true);

    for (std::size_t t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) {
            auto orbit = sk.vertex_of[t][static_cast<std::size_t>(v)];
            ++tris[orbit];
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                // Side of link triangle (t, v) lying in face f; joins link vertices w != v, f.
                const auto& g = tri.gluing(t, f);
                if (!g) {
                    ++sides[orbit];
                    closed[orbit] = false;
                    continue;
                }
                const int tf = g->face(f);
                const int tv = g->perm[v];
                // Count each glued pair of sides once, from its smaller end.
                if (std::make_tuple(t, v, f) < std::make_tuple(g->tet, tv, tf)) ++sides[orbit];
                for (int w = 0; w < 4; ++w) {
                    if (w == v || w == f) continue;
                    link_verts.unite(16 * t + 4 * static_cast<std::size_t>(v) + static_cast<std::size_t>(w),
                                     16 * g->tet + 4 * static_cast<std::size_t>(tv) + static_cast<std::size_t>(g->perm[w]));
                }
            }
        }
    }

    std::vector<long long> lverts(sk.vertices.size(), 0);
    {
        std::vector<bool> seen(16 * n, false);
        for (std::size_t t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                for (int w = 0; w < 4; ++w) {
                    if (w == v) continue;
                    std::size_t r = link_verts.find(16 * t + 4 * static_cast<std::size_t>(v) + static_cast<std::size_t>(w));
                    if (!seen[r]) {
                        seen[r] = true;
                        ++lverts[sk.vertex_of[t][static_cast<std::size_t>(v)]];
                    }
                }
    }

    ManifoldReport rep;
    rep.orientable = is_orientable(tri);
    rep.reversed_edges = reversed_edges(tri, sk);
    rep.is_manifold = rep.reversed_edges.empty();
    for (std::size_t i = 0; i < sk.vertices.size(); ++i) {
        VertexLinkReport r;
        r.vertex = i;
        r.triangles = tris[i];
        r.link_vertices = lverts[i];
        r.link_edges = sides[i];
        r.euler_characteristic = lverts[i] - sides[i] + tris[i];
        r.closed = closed[i];
        // Gluing triangles in pairs along sides always yields a connected surface here, so
        // chi 2 (closed) or chi 1 (bounded) pins down the sphere and the disk.
        r.ok = closed[i] ? r.euler_characteristic == 2 : r.euler_characteristic == 1;
        if (!r.ok) {
            rep.is_manifold = false;
            rep.offending_vertices.push_back(i);
        }
        rep.links.push_back(r);
    }
    return rep;
}

inline ManifoldReport validate_manifold(const Triangulation& tri) { return validate_manifold(tri, compute_skeleton(tri)); }

/// 64-bit FNV-1a of the canonical text form, as 16 hex digits.
inline std::string triangulation_hash(const Triangulation& tri) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : tri.to_text()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace normalhst
