#include <gtest/gtest.h>

#include <set>

#include "normalhst/detail/union_find.hpp"
#include "normalhst/selftest/corpus.hpp"
#include "normalhst/triangulation.hpp"

using namespace normalhst;

namespace {

Triangulation corpus_tri(std::string_view name) { return parse_triangulation(corpus::text(name)); }

int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (tet::kEdgeVertices[static_cast<std::size_t>(e)] == std::array<int, 2>{a, b}) return e;
    return -1;
}

// Vertex and edge orbits by listing every identification a face gluing makes.
std::pair<std::size_t, std::size_t> orbit_counts_oracle(const Triangulation& tri) {
    const std::size_t n = tri.size();
    detail::UnionFind verts(4 * n), edges(6 * n);
    for (std::size_t t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            for (int a = 0; a < 4; ++a) {
                if (a == f) continue;
                verts.unite(4 * t + static_cast<std::size_t>(a), 4 * g->tet + static_cast<std::size_t>(g->perm[a]));
                for (int b = a + 1; b < 4; ++b) {
                    if (b == f) continue;
                    edges.unite(6 * t + static_cast<std::size_t>(edge_index(a, b)),
                                6 * g->tet + static_cast<std::size_t>(edge_index(g->perm[a], g->perm[b])));
                }
            }
        }
    std::size_t v = 0, e = 0;
    verts.labels(&v);
    edges.labels(&e);
    return {v, e};
}

}  // namespace

TEST(Parse, SingleTetrahedronHasBoundary) {
    const auto tri = corpus_tri("single_tet.tri");
    EXPECT_EQ(tri.size(), 1u);
    EXPECT_FALSE(tri.is_closed());
    for (int f = 0; f < 4; ++f) EXPECT_TRUE(tri.is_boundary_face(0, f));
}

TEST(Parse, DoubledTetrahedronIsClosed) {
    const auto tri = corpus_tri("doubled_tet.tri");
    EXPECT_EQ(tri.size(), 2u);
    EXPECT_TRUE(tri.is_closed());
    for (int f = 0; f < 4; ++f) {
        ASSERT_TRUE(tri.gluing(0, f));
        EXPECT_EQ(tri.gluing(0, f)->tet, 1u);
    }
}

TEST(Parse, SelfGluedFaceRejected) {
    try {
        parse_triangulation(corpus::text("selfglue.tri"));
        FAIL() << "expected an error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("self-glued face"), std::string::npos);
    }
}

TEST(Parse, MalformedInputReportsPosition) {
    EXPECT_THROW(parse_triangulation("1\n0:1:0x3 - - -\n"), ParseError);
    EXPECT_THROW(parse_triangulation("2\n- - - -\n"), ParseError);
    EXPECT_THROW(parse_triangulation("1\n- - -\n"), ParseError);
    EXPECT_THROW(parse_triangulation(""), ParseError);
    // Non-involutive: face 0 of tet 0 points at tet 1 face 0, which is unglued.
    EXPECT_THROW(parse_triangulation("2\n1:0:123 - - -\n- - - -\n"), ParseError);
}

TEST(Parse, TextRoundTrip) {
    for (const auto* name : {"single_tet.tri", "doubled_tet.tri", "simplex4_boundary.tri", "s3_one_tet.tri",
                             "pseudo_manifold.tri"}) {
        const auto tri = corpus_tri(name);
        EXPECT_EQ(parse_triangulation(tri.to_text()), tri) << name;
        EXPECT_EQ(triangulation_hash(parse_triangulation(tri.to_text())), triangulation_hash(tri)) << name;
    }
}

TEST(Skeleton, SingleTetrahedron) {
    const auto sk = compute_skeleton(corpus_tri("single_tet.tri"));
    EXPECT_EQ(sk.vertices.size(), 4u);
    EXPECT_EQ(sk.edges.size(), 6u);
    EXPECT_EQ(sk.faces.size(), 4u);
}

TEST(Skeleton, Simplex4Boundary) {
    const auto sk = compute_skeleton(corpus_tri("simplex4_boundary.tri"));
    EXPECT_EQ(sk.vertices.size(), 5u);
    EXPECT_EQ(sk.edges.size(), 10u);
    EXPECT_EQ(sk.faces.size(), 10u);
    EXPECT_EQ(sk.tetrahedra, 5u);
    EXPECT_EQ(sk.euler_characteristic(), 0);
}

TEST(Skeleton, DoubledTetrahedronMatchesUnionFindOracle) {
    const auto tri = corpus_tri("doubled_tet.tri");
    const auto sk = compute_skeleton(tri);
    const auto [v, e] = orbit_counts_oracle(tri);
    EXPECT_EQ(sk.vertices.size(), v);
    EXPECT_EQ(sk.edges.size(), e);
    // Frozen from the oracle.
    EXPECT_EQ(v, 4u);
    EXPECT_EQ(e, 6u);
    EXPECT_EQ(sk.faces.size(), 4u);
}

TEST(Skeleton, CorpusMatchesUnionFindOracle) {
    for (const auto* name : {"single_tet.tri", "simplex4_boundary.tri", "s3_one_tet.tri", "pseudo_manifold.tri"}) {
        const auto tri = corpus_tri(name);
        const auto sk = compute_skeleton(tri);
        const auto [v, e] = orbit_counts_oracle(tri);
        EXPECT_EQ(sk.vertices.size(), v) << name;
        EXPECT_EQ(sk.edges.size(), e) << name;
    }
}

TEST(Manifold, Simplex4BoundaryLinksAreSpheres) {
    const auto rep = validate_manifold(corpus_tri("simplex4_boundary.tri"));
    EXPECT_TRUE(rep.is_manifold);
    ASSERT_EQ(rep.links.size(), 5u);
    for (const auto& l : rep.links) {
        EXPECT_EQ(l.euler_characteristic, 2);
        EXPECT_TRUE(l.closed);
        EXPECT_EQ(l.triangles, 4);
    }
}

TEST(Manifold, SingleTetrahedronLinksAreDisks) {
    const auto rep = validate_manifold(corpus_tri("single_tet.tri"));
    EXPECT_TRUE(rep.is_manifold);
    ASSERT_EQ(rep.links.size(), 4u);
    for (const auto& l : rep.links) {
        EXPECT_EQ(l.euler_characteristic, 1);
        EXPECT_FALSE(l.closed);
    }
}

TEST(Manifold, PseudoManifoldNamesOffendingVertex) {
    const auto rep = validate_manifold(corpus_tri("pseudo_manifold.tri"));
    EXPECT_FALSE(rep.is_manifold);
    ASSERT_EQ(rep.offending_vertices, std::vector<std::size_t>{0});
    EXPECT_EQ(rep.links[0].euler_characteristic, 1);  // projective plane
    EXPECT_TRUE(rep.links[0].closed);
}

TEST(Manifold, OneTetrahedronSphereIsValid) {
    const auto tri = corpus_tri("s3_one_tet.tri");
    const auto rep = validate_manifold(tri);
    EXPECT_TRUE(rep.is_manifold);
    EXPECT_TRUE(rep.orientable);
    for (const auto& l : rep.links) EXPECT_EQ(l.euler_characteristic, 2);
}

TEST(Hash, DistinguishesCorpus) {
    std::set<std::string> hashes;
    for (const auto& f : corpus::kFiles) {
        const std::string_view name = f.name;
        if (name.size() < 4 || name.substr(name.size() - 4) != ".tri" || name == "selfglue.tri") continue;
        const auto h = triangulation_hash(corpus_tri(name));
        EXPECT_EQ(h.size(), 16u);
        hashes.insert(h);
    }
    EXPECT_EQ(hashes.size(), 5u);
}
