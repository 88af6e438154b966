#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "normalhst/errors.hpp"
#include "normalhst/normal_surfaces.hpp"
#include "normalhst/reconstruction.hpp"
#include "normalhst/triangulation.hpp"

namespace normalhst {

struct EnumerationLimits {
    std::size_t max_rays = 200'000;        // double description, per intermediate cone
    long long max_bound = 12;              // brute force coordinate-sum bound
    std::size_t max_solutions = 2'000'000;  // brute force output size
};

struct SolutionCone {
    MatchingSystem system;
    std::vector<std::vector<Integer>> rays;  // primitive, lexicographically sorted
    std::vector<bool> quad_admissible;
};

/// Lexicographic order on (tri, quad, oct) per tetrahedron.
inline bool surface_less(const SurfaceVector& a, const SurfaceVector& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t t = 0; t < n; ++t) {
        const auto& x = a.tets[t];
        const auto& y = b.tets[t];
        for (std::size_t i = 0; i < 4; ++i)
            if (x.tri[i] != y.tri[i]) return x.tri[i] < y.tri[i];
        for (std::size_t i = 0; i < 3; ++i)
            if (x.quad[i] != y.quad[i]) return x.quad[i] < y.quad[i];
        for (std::size_t i = 0; i < 3; ++i)
            if (x.oct[i] != y.oct[i]) return x.oct[i] < y.oct[i];
    }
    return a.size() < b.size();
}

inline bool is_quad_admissible(const std::vector<Integer>& standard) {
    for (std::size_t t = 0; 7 * t < standard.size(); ++t) {
        int nonzero = 0;
        for (std::size_t q = 0; q < 3; ++q) nonzero += standard[7 * t + 4 + q] != 0 ? 1 : 0;
        if (nonzero > 1) return false;
    }
    return true;
}

inline Integer gcd_of(const std::vector<Integer>& x) {
    Integer g = 0;
    for (const auto& c : x) g = boost::multiprecision::gcd(g, c);
    return g;
}

inline void make_primitive(std::vector<Integer>& x) {
    Integer g = gcd_of(x);
    if (g > 1)
        for (auto& c : x) c /= g;
}

namespace detail {

struct DDRay {
    std::vector<Integer> x;
    boost::dynamic_bitset<> zero;  // coordinates where x vanishes
};

}  // namespace detail

/// Extreme rays of {x >= 0, matching x = 0} in triangle/quad coordinates by incremental
/// double description over exact integers. Equations are inserted by increasing support
/// size (ties by row index); rays are kept primitive. A pair of rays straddling the new
/// hyperplane is combined only if they are adjacent: no third ray vanishes on every
/// coordinate where both vanish.
inline SolutionCone solution_cone(const Triangulation& tri, const EnumerationLimits& limits = {}) {
    SolutionCone cone;
    cone.system = matching_system(tri);
    const std::size_t dim = cone.system.unknowns;

    std::vector<detail::DDRay> rays;
    for (std::size_t i = 0; i < dim; ++i) {
        detail::DDRay r;
        r.x.assign(dim, 0);
        r.x[i] = 1;
        r.zero.resize(dim);
        r.zero.set();
        r.zero.reset(i);
        rays.push_back(std::move(r));
    }

    std::vector<std::size_t> order(cone.system.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto support = [&](std::size_t r) {
        std::size_t s = 0;
        for (int c : cone.system.rows[r].coeffs) s += c != 0 ? 1 : 0;
        return s;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support(a) < support(b); });

    for (std::size_t ri : order) {
        const auto& coeffs = cone.system.rows[ri].coeffs;
        std::vector<std::pair<std::size_t, Integer>> nz;
        for (std::size_t c = 0; c < dim; ++c)
            if (coeffs[c] != 0) nz.push_back({c, Integer(coeffs[c])});
        if (nz.empty()) continue;

        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<detail::DDRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            Integer s = 0;
            for (const auto& [c, a] : nz) s += a * rays[i].x[c];
            value[i] = s;
            if (s > 0) pos.push_back(i);
            else if (s < 0) neg.push_back(i);
            else next.push_back(rays[i]);
        }
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                detail::DDRay combined;
                combined.x.resize(dim);
                const Integer a = value[p];
                const Integer b = -value[q];
                for (std::size_t c = 0; c < dim; ++c) combined.x[c] = b * rays[p].x[c] + a * rays[q].x[c];
                make_primitive(combined.x);
                combined.zero.resize(dim);
                for (std::size_t c = 0; c < dim; ++c) combined.zero[c] = combined.x[c] == 0;
                next.push_back(std::move(combined));
                if (next.size() > limits.max_rays)
                    throw ResourceError("double description exceeded the ray ceiling (" + std::to_string(limits.max_rays) + ")");
            }
        }
        rays = std::move(next);
    }

    for (auto& r : rays) cone.rays.push_back(std::move(r.x));
    std::sort(cone.rays.begin(), cone.rays.end());
    cone.rays.erase(std::unique(cone.rays.begin(), cone.rays.end()), cone.rays.end());
    for (const auto& r : cone.rays) cone.quad_admissible.push_back(is_quad_admissible(r));
    return cone;
}

/// Quad-admissible vertex normal surfaces, lexicographically ordered.
inline std::vector<SurfaceVector> enumerate_vertex_surfaces(const Triangulation& tri, const EnumerationLimits& limits = {}) {
    auto cone = solution_cone(tri, limits);
    std::vector<SurfaceVector> out;
    for (std::size_t i = 0; i < cone.rays.size(); ++i)
        if (cone.quad_admissible[i]) out.push_back(SurfaceVector::from_standard(cone.rays[i]));
    return out;
}

namespace detail {

/// Backtracking over the 7n triangle/quad coordinates in index order. Each matching row is
/// checked as soon as its last variable is set; the quad constraint is checked per quad.
/// `constants[r]` is added to row r (used to account for a fixed octagon); `frozen` columns
/// are held at zero.
inline std::vector<std::vector<long long>> bounded_solutions(const MatchingSystem& sys, const std::vector<long long>& constants,
                                                             const std::vector<bool>& frozen, long long bound,
                                                             const EnumerationLimits& limits) {
    const std::size_t dim = sys.unknowns;
    struct Sparse {
        std::vector<std::pair<std::size_t, long long>> terms;
        long long constant = 0;
    };
    std::vector<std::vector<Sparse>> closing(dim);  // rows keyed by their last variable
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        Sparse s;
        s.constant = constants.empty() ? 0 : constants[r];
        for (std::size_t c = 0; c < dim; ++c)
            if (sys.rows[r].coeffs[c] != 0) s.terms.push_back({c, sys.rows[r].coeffs[c]});
        if (s.terms.empty()) {
            if (s.constant != 0) return {};
            continue;
        }
        closing[s.terms.back().first].push_back(std::move(s));
    }

    std::vector<std::vector<long long>> out;
    std::vector<long long> x(dim, 0);
    long long used = 0;  // sum of x[0..j], counting the -1 sentinel

    auto row_ok = [&](const Sparse& s) {
        long long acc = s.constant;
        for (const auto& [c, a] : s.terms) acc += a * x[c];
        return acc == 0;
    };
    auto consistent_at = [&](std::size_t j) {
        if (j % 7 >= 4 && x[j] != 0) {
            const std::size_t base = j - j % 7;
            for (std::size_t q = base + 4; q < base + 7; ++q)
                if (q != j && x[q] != 0) return false;
        }
        for (const auto& s : closing[j])
            if (!row_ok(s)) return false;
        return true;
    };

    // Iterative DFS: position j holds the value currently tried.
    if (dim == 0) {
        out.push_back({});
        return out;
    }
    std::size_t j = 0;
    x[0] = -1;
    used = -1;
    while (true) {
        // advance value at j
        ++x[j];
        ++used;
        const long long cap = frozen[j] ? 0 : bound - (used - x[j]);
        if (x[j] > cap) {
            used -= x[j];
            x[j] = 0;
            if (j == 0) break;
            --j;
            continue;
        }
        if (!consistent_at(j)) continue;
        if (j + 1 == dim) {
            out.push_back(x);
            if (out.size() > limits.max_solutions)
                throw ResourceError("brute force exceeded the solution ceiling (" + std::to_string(limits.max_solutions) + ")");
            continue;
        }
        ++j;
        x[j] = -1;
        --used;  // x[j] == -1 is a sentinel, not a coordinate
    }
    return out;
}

inline void check_bound(long long bound, const EnumerationLimits& limits) {
    if (bound < 0) throw PreconditionError("negative coordinate-sum bound");
    if (bound > limits.max_bound)
        throw ResourceError("bound " + std::to_string(bound) + " exceeds the ceiling " + std::to_string(limits.max_bound));
}

}  // namespace detail

/// Every quad-admissible normal solution with coordinate sum at most `bound`, in
/// lexicographic order.
inline std::vector<SurfaceVector> brute_force_enumerate(const Triangulation& tri, long long bound,
                                                        const EnumerationLimits& limits = {}) {
    detail::check_bound(bound, limits);
    auto sys = matching_system(tri);
    std::vector<bool> frozen(sys.unknowns, false);
    auto sols = detail::bounded_solutions(sys, {}, frozen, bound, limits);
    std::vector<SurfaceVector> out;
    out.reserve(sols.size());
    for (const auto& s : sols) {
        std::vector<Integer> big(s.begin(), s.end());
        out.push_back(SurfaceVector::from_standard(big));
    }
    return out;
}

/// Octagon augmentation: for each (tetrahedron, octagon type), every quad-admissible normal
/// part with coordinate sum at most bound - 1 whose sum with that single octagon satisfies
/// the matching equations, the octagon's tetrahedron carrying no quads. Sorted
/// lexicographically.
inline std::vector<SurfaceVector> enumerate_octagon_surfaces(const Triangulation& tri, long long bound,
                                                             const EnumerationLimits& limits = {}) {
    detail::check_bound(bound, limits);
    std::vector<SurfaceVector> out;
    if (bound < 1) return out;
    auto sys = matching_system(tri);
    for (std::size_t t = 0; t < tri.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            auto oct_arcs = [&](std::size_t tt, int f, int c) -> long long {
                return tt == t && tet::quad_cutting(f, c) != k ? 1 : 0;
            };
            std::vector<long long> constants;
            for (const auto& row : sys.rows)
                constants.push_back(oct_arcs(row.tet, row.face, row.corner) - oct_arcs(row.other_tet, row.other_face, row.other_corner));
            std::vector<bool> frozen(sys.unknowns, false);
            for (int q = 0; q < 3; ++q) frozen[quad_column(t, q)] = true;
            for (const auto& s : detail::bounded_solutions(sys, constants, frozen, bound - 1, limits)) {
                std::vector<Integer> big(s.begin(), s.end());
                auto v = SurfaceVector::from_standard(big);
                v.tets[t].oct[static_cast<std::size_t>(k)] = 1;
                out.push_back(std::move(v));
            }
        }
    }
    std::sort(out.begin(), out.end(), surface_less);
    return out;
}

enum class SearchMethod { Vertex, Brute };

/// Candidates from the searched set whose reconstruction is a single component of Euler
/// characteristic 2. Complete only relative to that set.
inline std::vector<SurfaceVector> find_connected_chi2(const Triangulation& tri, SearchMethod method, long long bound = 0,
                                                      const EnumerationLimits& limits = {}) {
    auto sk = compute_skeleton(tri);
    auto candidates = method == SearchMethod::Vertex ? enumerate_vertex_surfaces(tri, limits)
                                                     : brute_force_enumerate(tri, bound, limits);
    std::vector<SurfaceVector> out;
    for (auto& v : candidates) {
        if (v.is_zero()) continue;
        auto rec = reconstruct_surface(tri, sk, v);
        if (rec.summary.component_count == 1 && rec.summary.component_chi[0] == 2) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace normalhst
