#pragma once

// Copies of the files under data/, so the self-test runs without a checkout.

#include <array>
#include <string_view>

namespace normalhst::corpus {

struct File {
    std::string_view name;
    std::string_view text;
};

inline constexpr std::array<File, 17> kFiles{{
    {"single_tet.tri", R"~(# one tetrahedron, all faces boundary
1
- - - -
)~"},
    {"doubled_tet.tri", R"~(# two tetrahedra glued along all four faces by the identity
2
1:0:123 1:1:023 1:2:013 1:3:012
0:0:123 0:1:023 0:2:013 0:3:012
)~"},
    {"simplex4_boundary.tri", R"~(# boundary of the 4-simplex; tetrahedron i omits vertex i
5
1:0:123 2:0:123 3:0:123 4:0:123
0:0:123 2:1:023 3:1:023 4:1:023
0:1:023 1:1:023 3:2:013 4:2:013
0:2:013 1:2:013 2:2:013 4:3:012
0:3:012 1:3:012 2:3:012 3:3:012
)~"},
    {"s3_one_tet.tri", R"~(# one-tetrahedron 3-sphere with two vertices
1
0:1:023 0:0:123 0:3:012 0:2:013
)~"},
    {"pseudo_manifold.tri", R"~(# closed one-tetrahedron pseudo-manifold; the vertex link is a projective plane
1
0:1:023 0:0:123 0:3:021 0:2:031
)~"},
    {"selfglue.tri", R"~(# face 0 of tetrahedron 0 glued to itself
1
0:0:123 - - -
)~"},
    {"doubled_tet_vertex_link.json", R"~({"tets":[{"tri":[1,0,0,0],"quad":[0,0,0]},{"tri":[1,0,0,0],"quad":[0,0,0]}],"tube":null}
)~"},
    {"s3_one_tet_octagon.json", R"~({"tets":[{"tri":[0,0,0,0],"quad":[0,0,0],"oct":[1,0,0]}],"tube":null}
)~"},
    {"single_tet_two_octagons.json", R"~({"tets":[{"tri":[0,0,0,0],"quad":[0,0,0],"oct":[1,1,0]}],"tube":null}
)~"},
    {"single_tet_tube.json", R"~({"tets":[{"tri":[2,0,0,0],"quad":[0,0,0],"oct":[0,0,0]}],
 "tube":{"tet":0,"a":{"kind":"tri","type":0,"index":0},"b":{"kind":"tri","type":0,"index":1}}}
)~"},
    {"genus2.json", R"~([[], [[-2, 0]], []]
)~"},
    {"torus.json", R"~([[], [[0, 0]], []]
)~"},
    {"product_torus.json", R"~([[[0, 0]], [[0, 0]], [[0, 0]]]
)~"},
    {"torus_with_spheres.json", R"~([[], [[0, 0], [2, 0]], [[0, 0]], [[0, 0], [2, 0]], []]
)~"},
    {"bridge.pres", R"~(# bridge position of the unknot with two maxima
B 0
B 0
D 0
D 0
)~"},
    {"stacked.pres", R"~(# two stacked unknots
B 0
D 0
B 0
D 0
)~"},
    {"exchange.pres", R"~(# the death at index 2 can move below the birth at index 1
B 0
B 2
D 0
B 0
D 0
D 0
)~"},
}};

inline std::string_view text(std::string_view name) {
    for (const auto& f : kFiles)
        if (f.name == name) return f.text;
    return {};
}

}  // namespace normalhst::corpus
