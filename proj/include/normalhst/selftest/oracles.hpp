#pragma once

// Independent reference computations used to check the main algorithms.
// They share input types with the library but none of its search or tracing code.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "normalhst/curve_patterns.hpp"
#include "normalhst/detail/union_find.hpp"
#include "normalhst/enumeration.hpp"
#include "normalhst/normal_surfaces.hpp"

namespace normalhst::oracle {

/// Rank of an integer matrix by fraction-free elimination.
inline std::size_t rank(std::vector<std::vector<Integer>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

/// A nonzero solution spans an extreme ray of {Ax = 0, x >= 0} iff the columns of A on
/// its support have a one-dimensional kernel.
inline bool is_extremal(const MatchingSystem& sys, const std::vector<Integer>& x) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] != 0) support.push_back(j);
    if (support.empty()) return false;
    std::vector<std::vector<Integer>> sub;
    for (const auto& row : sys.rows) {
        std::vector<Integer> r;
        for (auto j : support) r.push_back(row.coeffs[j]);
        sub.push_back(std::move(r));
    }
    return support.size() - rank(std::move(sub)) == 1;
}

inline bool is_primitive(const std::vector<Integer>& x) {
    Integer g = 0;
    for (const auto& v : x) g = gcd(g, abs(v));
    return g == 1;
}

/// Vertex surfaces with coordinate sum at most `bound`, from the bounded brute-force
/// solutions: primitive and extremal by the rank test.
inline std::vector<SurfaceVector> vertex_surfaces_by_rank(const Triangulation& tri, long long bound) {
    const auto sys = matching_system(tri);
    std::vector<SurfaceVector> out;
    for (auto& v : brute_force_enumerate(tri, bound)) {
        const auto x = v.standard_coordinates();
        if (is_primitive(x) && is_extremal(sys, x)) out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), surface_less);
    return out;
}

// ---------------------------------------------------------------------------
// Curves on the boundary of a tetrahedron

/// Number of loops in the realisation of a balanced pattern, by joining arc endpoints.
inline std::size_t loop_count(const CurvePattern& p) {
    if (!p.balanced()) return 0;
    auto edge_face = [](int a, int b) {
        int f = 0;
        while (f == a || f == b) ++f;
        return f;
    };
    auto weight = [&](int a, int b) { return p.at(edge_face(a, b), a) + p.at(edge_face(a, b), b); };
    // Points on edge (a, b), a < b, numbered by distance from a.
    std::map<std::pair<int, int>, std::size_t> first;
    std::size_t n = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            first[{a, b}] = n;
            n += static_cast<std::size_t>(weight(a, b));
        }
    auto point = [&](int c, int x, long long d) {
        const int a = std::min(c, x), b = std::max(c, x);
        return first[{a, b}] + static_cast<std::size_t>(c == a ? d : weight(a, b) - 1 - d);
    };
    detail::UnionFind uf(n);
    for (int f = 0; f < 4; ++f) {
        std::array<int, 3> vs{};
        std::size_t k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != f) vs[k++] = v;
        for (std::size_t i = 0; i < 3; ++i) {
            const int c = vs[i], x = vs[(i + 1) % 3], y = vs[(i + 2) % 3];
            for (long long d = 0; d < p.at(f, c); ++d) uf.unite(point(c, x, d), point(c, y, d));
        }
    }
    std::size_t count = 0;
    uf.labels(&count);
    return count;
}

/// Single-loop patterns of length <= max_length, enumerated over arc counts: faces 0 and 1
/// are free up to balance, face 2 has one free count, face 3 is forced.
inline std::map<long long, std::set<CurvePattern>> loops_by_arc_counts(long long max_length) {
    std::map<long long, std::set<CurvePattern>> out;
    const long long L = max_length;
    CurvePattern p;
    for (long long a1 = 0; a1 <= L; ++a1)
        for (long long a2 = 0; a1 + a2 <= L; ++a2)
            for (long long a3 = 0; a1 + a2 + a3 <= L; ++a3) {
                p.at(0, 1) = a1, p.at(0, 2) = a2, p.at(0, 3) = a3;
                const long long w12 = a1 + a2, w13 = a1 + a3, w23 = a2 + a3;
                for (long long b2 = 0; b2 <= w23; ++b2)
                    for (long long b0 = 0; a1 + a2 + a3 + w23 + b0 <= L; ++b0) {
                        p.at(1, 0) = b0, p.at(1, 2) = b2, p.at(1, 3) = w23 - b2;
                        const long long w02 = b0 + b2, w03 = b0 + (w23 - b2);
                        for (long long c3 = 0; c3 <= std::min(w13, w03); ++c3) {
                            p.at(2, 3) = c3, p.at(2, 1) = w13 - c3, p.at(2, 0) = w03 - c3;
                            const long long w01 = p.at(2, 0) + p.at(2, 1);
                            const long long d0 = w01 + w02 - w12, d1 = w01 + w12 - w02, d2 = w02 + w12 - w01;
                            if (d0 < 0 || d1 < 0 || d2 < 0 || d0 % 2 != 0) continue;
                            p.at(3, 0) = d0 / 2, p.at(3, 1) = d1 / 2, p.at(3, 2) = d2 / 2;
                            const long long total = p.total();
                            if (total == 0 || total > L) continue;
                            if (loop_count(p) == 1) out[total].insert(p);
                        }
                    }
            }
    return out;
}

/// Single-loop patterns reached by closed edge words of length <= max_length. Consecutive
/// edges share a vertex and the arc between them lies in the face they span; the two arcs
/// at each crossing lie in different faces.
inline std::map<long long, std::set<CurvePattern>> loops_by_words(long long max_length) {
    std::map<long long, std::set<CurvePattern>> out;
    const auto ev = tet::kEdgeVertices;
    auto shared = [&](int e1, int e2) {
        for (int u : ev[static_cast<std::size_t>(e1)])
            for (int w : ev[static_cast<std::size_t>(e2)])
                if (u == w) return u;
        return -1;
    };
    auto face_of = [&](int e1, int e2) {
        std::array<bool, 4> used{};
        for (int u : ev[static_cast<std::size_t>(e1)]) used[static_cast<std::size_t>(u)] = true;
        for (int u : ev[static_cast<std::size_t>(e2)]) used[static_cast<std::size_t>(u)] = true;
        for (int f = 0; f < 4; ++f)
            if (!used[static_cast<std::size_t>(f)]) return f;
        return -1;
    };
    std::vector<int> word;
    auto close = [&]() {
        CurvePattern p;
        for (std::size_t i = 0; i < word.size(); ++i) {
            const int a = word[i], b = word[(i + 1) % word.size()];
            ++p.at(face_of(a, b), shared(a, b));
        }
        if (loop_count(p) == 1) out[static_cast<long long>(word.size())].insert(p);
    };
    auto rec = [&](auto&& self) -> void {
        const std::size_t n = word.size();
        if (n >= 3 && word[n - 1] != word[0] && shared(word[n - 1], word[0]) >= 0 &&
            face_of(word[n - 2], word[n - 1]) != face_of(word[n - 1], word[0]) &&
            face_of(word[n - 1], word[0]) != face_of(word[0], word[1]))
            close();
        if (static_cast<long long>(n) == max_length) return;
        for (int e = 0; e < 6; ++e) {
            // Each curve is found from its least edge.
            if (e < word.front() || e == word.back() || shared(word.back(), e) < 0) continue;
            if (n >= 2 && face_of(word[n - 2], word[n - 1]) == face_of(word[n - 1], e)) continue;
            word.push_back(e);
            self(self);
            word.pop_back();
        }
    };
    for (int e = 0; e < 6; ++e) {
        word = {e};
        rec(rec);
    }
    return out;
}

/// Orbit sizes of a set of patterns under vertex permutations, generated here from
/// std::next_permutation.
inline std::vector<std::size_t> orbit_sizes(const std::set<CurvePattern>& patterns) {
    std::vector<std::array<int, 4>> perms;
    std::array<int, 4> s{0, 1, 2, 3};
    do perms.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    std::set<CurvePattern> left = patterns;
    std::vector<std::size_t> sizes;
    while (!left.empty()) {
        const CurvePattern p = *left.begin();
        std::set<CurvePattern> orbit;
        for (const auto& g : perms) {
            CurvePattern q;
            for (int f = 0; f < 4; ++f)
                for (int c = 0; c < 4; ++c)
                    if (c != f) q.at(g[static_cast<std::size_t>(f)], g[static_cast<std::size_t>(c)]) = p.at(f, c);
            orbit.insert(q);
        }
        for (const auto& q : orbit) left.erase(q);
        sizes.push_back(orbit.size());
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace normalhst::oracle
