#pragma once

// Combinatorics of one model tetrahedron with vertices 0..3.
//
//   face f        : the triangle opposite vertex f
//   edge e        : 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3); edge 5-e is opposite e
//   quad type q   : separates {0, q+1} from the other two vertices; it misses edges q and 5-q
//   octagon type k: same vertex split as quad k; crosses edges k and 5-k twice, the rest once
//   arc (f, v)    : normal arc on face f cutting off corner v (v != f)

#include <array>
#include <cassert>
#include <cstdint>
#include <string>

namespace normalhst::tet {

inline constexpr int kVertices = 4;
inline constexpr int kEdges = 6;
inline constexpr int kFaces = 4;
inline constexpr int kQuadTypes = 3;

inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b) {
    if (a > b) {
        int t = a;
        a = b;
        b = t;
    }
    // (0,1)=0 (0,2)=1 (0,3)=2 (1,2)=3 (1,3)=4 (2,3)=5
    return a == 0 ? b - 1 : a + b;
}

constexpr int opposite_edge(int e) { return 5 - e; }

/// Quad type that misses edge e (equivalently, the octagon type crossing e twice).
constexpr int quad_missing_edge(int e) { return e < 3 ? e : 5 - e; }

/// The vertex paired with v by the vertex split of quad type q.
constexpr int partner(int q, int v) { return v ^ (q + 1); }

/// Quad type whose arc on face f cuts off corner v.
constexpr int quad_cutting(int f, int v) { return (f ^ v) - 1; }

constexpr bool on_low_side(int q, int v) { return v == 0 || v == q + 1; }

/// Vertices of face f in ascending order.
constexpr std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f) out[static_cast<std::size_t>(k++)] = v;
    return out;
}

/// Position of corner v among the ascending vertices of face f.
constexpr int corner_slot(int f, int v) { return v < f ? v : v - 1; }

/// The face containing distinct vertices a, b, c.
constexpr int face_containing(int a, int b, int c) { return 6 - a - b - c; }

/// A permutation of {0,1,2,3}.
class Perm4 {
public:
    constexpr Perm4() : image_{0, 1, 2, 3} {}
    constexpr explicit Perm4(std::array<std::uint8_t, 4> image) : image_(image) {}

    constexpr int operator[](int i) const { return image_[static_cast<std::size_t>(i)]; }

    constexpr Perm4 inverse() const {
        std::array<std::uint8_t, 4> inv{};
        for (int i = 0; i < 4; ++i) inv[image_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
        return Perm4(inv);
    }

    /// (this ∘ other)(i) = this[other[i]]
    constexpr Perm4 compose(const Perm4& other) const {
        std::array<std::uint8_t, 4> out{};
        for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = image_[other.image_[static_cast<std::size_t>(i)]];
        return Perm4(out);
    }

    constexpr int sign() const {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (image_[static_cast<std::size_t>(i)] > image_[static_cast<std::size_t>(j)]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    constexpr bool is_bijection() const {
        unsigned seen = 0;
        for (auto x : image_) {
            if (x > 3) return false;
            seen |= 1u << x;
        }
        return seen == 0xF;
    }

    constexpr int map_edge(int e) const {
        return edge_index((*this)[kEdgeVertices[static_cast<std::size_t>(e)][0]],
                          (*this)[kEdgeVertices[static_cast<std::size_t>(e)][1]]);
    }

    constexpr const std::array<std::uint8_t, 4>& images() const { return image_; }

    friend constexpr bool operator==(const Perm4&, const Perm4&) = default;

    std::string str() const {
        std::string s;
        for (auto x : image_) s.push_back(static_cast<char>('0' + x));
        return s;
    }

    /// All 24 permutations in lexicographic order of their image strings.
    static constexpr std::array<Perm4, 24> all() {
        std::array<Perm4, 24> out{};
        std::size_t k = 0;
        for (std::uint8_t a = 0; a < 4; ++a)
            for (std::uint8_t b = 0; b < 4; ++b)
                for (std::uint8_t c = 0; c < 4; ++c)
                    for (std::uint8_t d = 0; d < 4; ++d) {
                        Perm4 p({a, b, c, d});
                        if (p.is_bijection()) out[k++] = p;
                    }
        return out;
    }

private:
    std::array<std::uint8_t, 4> image_;
};

}  // namespace normalhst::tet
