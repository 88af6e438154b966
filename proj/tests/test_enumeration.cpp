#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "normalhst/enumeration.hpp"
#include "normalhst/reconstruction.hpp"
#include "normalhst/selftest/corpus.hpp"
#include "normalhst/selftest/oracles.hpp"

using namespace normalhst;

namespace {

Triangulation corpus_tri(std::string_view name) { return parse_triangulation(corpus::text(name)); }

std::vector<SurfaceVector> sorted(std::vector<SurfaceVector> v) {
    std::sort(v.begin(), v.end(), surface_less);
    return v;
}

std::vector<SurfaceVector> vertex_up_to(const Triangulation& tri, long long bound) {
    std::vector<SurfaceVector> out;
    for (auto& v : enumerate_vertex_surfaces(tri))
        if (v.total() <= bound) out.push_back(std::move(v));
    return sorted(std::move(out));
}

bool contains(const std::vector<SurfaceVector>& set, const SurfaceVector& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

}  // namespace

TEST(VertexSurfaces, SingleTetrahedronUnitVectors) {
    const auto rays = enumerate_vertex_surfaces(corpus_tri("single_tet.tri"));
    ASSERT_EQ(rays.size(), 7u);
    std::set<std::vector<Integer>> got;
    for (const auto& v : rays) got.insert(v.standard_coordinates());
    for (std::size_t i = 0; i < 7; ++i) {
        std::vector<Integer> e(7, 0);
        e[i] = 1;
        EXPECT_TRUE(got.count(e)) << i;
    }
}

TEST(VertexSurfaces, DoubledTetrahedronMatchesRankOracle) {
    const auto tri = corpus_tri("doubled_tet.tri");
    const auto dd = vertex_up_to(tri, 6);
    EXPECT_EQ(dd, oracle::vertex_surfaces_by_rank(tri, 6));
    EXPECT_EQ(dd.size(), 7u);
    EXPECT_EQ(enumerate_vertex_surfaces(tri).size(), 7u);
}

TEST(VertexSurfaces, Simplex4ContainsVertexLinks) {
    const auto tri = corpus_tri("simplex4_boundary.tri");
    const auto sk = compute_skeleton(tri);
    const auto dd = enumerate_vertex_surfaces(tri);
    EXPECT_EQ(dd.size(), 15u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_TRUE(contains(dd, vertex_link(tri, sk, i))) << i;
}

TEST(VertexSurfaces, AgreeWithRankOracleOnCorpus) {
    for (const auto* name : {"single_tet.tri", "s3_one_tet.tri", "simplex4_boundary.tri"}) {
        const auto tri = corpus_tri(name);
        EXPECT_EQ(vertex_up_to(tri, 5), oracle::vertex_surfaces_by_rank(tri, 5)) << name;
    }
}

TEST(VertexSurfaces, RayCeilingRaisesResourceError) {
    EnumerationLimits limits;
    limits.max_rays = 3;
    EXPECT_THROW(enumerate_vertex_surfaces(corpus_tri("simplex4_boundary.tri"), limits), ResourceError);
}

TEST(BruteForce, BoundZeroIsZeroVector) {
    for (const auto* name : {"single_tet.tri", "doubled_tet.tri", "simplex4_boundary.tri"}) {
        const auto out = brute_force_enumerate(corpus_tri(name), 0);
        ASSERT_EQ(out.size(), 1u);
        EXPECT_TRUE(out[0].is_zero());
    }
}

TEST(BruteForce, SingleTetrahedronBoundOne) { EXPECT_EQ(brute_force_enumerate(corpus_tri("single_tet.tri"), 1).size(), 8u); }

TEST(BruteForce, FrozenCounts) {
    EXPECT_EQ(brute_force_enumerate(corpus_tri("single_tet.tri"), 6).size(), 966u);
    EXPECT_EQ(brute_force_enumerate(corpus_tri("doubled_tet.tri"), 6).size(), 98u);
    EXPECT_EQ(brute_force_enumerate(corpus_tri("simplex4_boundary.tri"), 6).size(), 16u);
}

TEST(BruteForce, DoubledTetrahedronSwapSymmetry) {
    const auto out = brute_force_enumerate(corpus_tri("doubled_tet.tri"), 4);
    std::vector<SurfaceVector> swapped;
    for (const auto& v : out) {
        SurfaceVector w(2);
        w.tets[0] = v.tets[1];
        w.tets[1] = v.tets[0];
        swapped.push_back(w);
    }
    EXPECT_EQ(sorted(swapped), sorted(out));
}

TEST(BruteForce, OutputIsAdmissibleAndSorted) {
    const auto tri = corpus_tri("simplex4_boundary.tri");
    const auto out = brute_force_enumerate(tri, 8);
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), surface_less));
    for (const auto& v : out) EXPECT_TRUE(check_admissible(tri, v, SurfaceMode::Normal).admissible());
}

TEST(BruteForce, CeilingsRaiseResourceError) {
    const auto tri = corpus_tri("single_tet.tri");
    EXPECT_THROW(brute_force_enumerate(tri, 1000), ResourceError);
    EnumerationLimits limits;
    limits.max_solutions = 10;
    EXPECT_THROW(brute_force_enumerate(tri, 4, limits), ResourceError);
    EXPECT_THROW(brute_force_enumerate(tri, -1), PreconditionError);
}

TEST(Octagons, FrozenCounts) {
    EXPECT_EQ(enumerate_octagon_surfaces(corpus_tri("s3_one_tet.tri"), 8).size(), 10u);
    EXPECT_EQ(enumerate_octagon_surfaces(corpus_tri("single_tet.tri"), 4).size(), 105u);
    EXPECT_EQ(enumerate_octagon_surfaces(corpus_tri("doubled_tet.tri"), 6).size(), 0u);
}

TEST(Octagons, EveryOutputIsOctagonAlmostNormal) {
    for (const auto* name : {"s3_one_tet.tri", "single_tet.tri"}) {
        const auto tri = corpus_tri(name);
        for (const auto& v : enumerate_octagon_surfaces(tri, 5)) {
            EXPECT_EQ(v.oct_total(), 1);
            EXPECT_EQ(classify(tri, v), SurfaceClass::AlmostNormalOctagon);
        }
    }
}

TEST(Octagons, CrossCheckAgainstFilteredSearch) {
    // Every normal part plus one octagon, filtered by check_admissible.
    const auto tri = corpus_tri("s3_one_tet.tri");
    std::vector<SurfaceVector> expected;
    for (const auto& base : brute_force_enumerate(tri, 7))
        for (std::size_t k = 0; k < 3; ++k) {
            auto v = base;
            v.tets[0].oct[k] = 1;
            if (check_admissible(tri, v, SurfaceMode::AlmostNormal).admissible()) expected.push_back(v);
        }
    EXPECT_EQ(sorted(expected), enumerate_octagon_surfaces(tri, 8));
}

TEST(ConnectedChi2, Simplex4ContainsVertexLinks) {
    const auto tri = corpus_tri("simplex4_boundary.tri");
    const auto sk = compute_skeleton(tri);
    const auto found = find_connected_chi2(tri, SearchMethod::Vertex);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_TRUE(contains(found, vertex_link(tri, sk, i)));
    for (const auto& v : found) EXPECT_FALSE(v.is_zero());
}

TEST(ConnectedChi2, NoneInSingleTetrahedron) {
    const auto tri = corpus_tri("single_tet.tri");
    EXPECT_TRUE(find_connected_chi2(tri, SearchMethod::Brute, 6).empty());
    // Exhaustive confirmation at the same bound.
    for (const auto& v : brute_force_enumerate(tri, 6)) {
        if (v.is_zero()) continue;
        const auto s = reconstruct_surface(tri, v).summary;
        EXPECT_FALSE(s.component_count == 1 && s.component_chi[0] == 2);
    }
}

TEST(ConnectedChi2, ZeroVectorNeverListed) {
    for (const auto& v : find_connected_chi2(corpus_tri("doubled_tet.tri"), SearchMethod::Brute, 4)) EXPECT_FALSE(v.is_zero());
}
