#pragma once

// JSON forms of the library's values. Key order is fixed (ordered_json) so that output
// is byte-stable.

#include <string>
#include <vector>

#include "json.hpp"

#include "normalhst/curve_patterns.hpp"
#include "normalhst/errors.hpp"
#include "normalhst/hst_complexity.hpp"
#include "normalhst/normal_surfaces.hpp"
#include "normalhst/reconstruction.hpp"
#include "normalhst/thin_position.hpp"
#include "normalhst/triangulation.hpp"

namespace normalhst::io {

using Json = nlohmann::ordered_json;

/// Numbers when they fit in 64 bits, decimal strings otherwise.
inline Json integer_json(const Integer& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Integer(s);
    }
    throw ValidationError(where + ": expected an integer");
}

// ---------------------------------------------------------------------------
// Triangulations

inline Json skeleton_json(const Skeleton& sk) {
    return Json{{"vertices", sk.vertices.size()},
                {"edges", sk.edges.size()},
                {"faces", sk.faces.size()},
                {"tetrahedra", sk.tetrahedra},
                {"euler_characteristic", sk.euler_characteristic()}};
}

inline Json manifold_json(const ManifoldReport& r) {
    Json links = Json::array();
    for (const auto& l : r.links)
        links.push_back(Json{{"vertex", l.vertex},
                             {"triangles", l.triangles},
                             {"euler_characteristic", l.euler_characteristic},
                             {"closed", l.closed},
                             {"ok", l.ok}});
    return Json{{"is_manifold", r.is_manifold},
                {"orientable", r.orientable},
                {"offending_vertices", r.offending_vertices},
                {"reversed_edges", r.reversed_edges},
                {"vertex_links", links}};
}

// ---------------------------------------------------------------------------
// Surface vectors

inline Json piece_ref_json(const PieceRef& p) {
    return Json{{"kind", to_string(p.kind)}, {"type", p.type}, {"index", integer_json(p.index)}};
}

inline PieceRef piece_ref_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("tube piece must be an object");
    PieceRef p;
    const auto kind = j.value("kind", std::string());
    if (kind == "tri") p.kind = PieceKind::Triangle;
    else if (kind == "quad") p.kind = PieceKind::Quad;
    else if (kind == "oct") p.kind = PieceKind::Octagon;
    else throw ValidationError("tube piece kind must be tri, quad or oct");
    if (!j.contains("type") || !j["type"].is_number_integer()) throw ValidationError("tube piece needs an integer type");
    p.type = j["type"].get<int>();
    const int limit = p.kind == PieceKind::Triangle ? 4 : 3;
    if (p.type < 0 || p.type >= limit) throw ValidationError("tube piece type out of range");
    p.index = integer_from_json(j.value("index", Json(0)), "tube piece index");
    return p;
}

inline Json surface_json(const SurfaceVector& v) {
    Json tets = Json::array();
    for (const auto& tc : v.tets) {
        Json t;
        Json tri = Json::array(), quad = Json::array(), oct = Json::array();
        for (const auto& x : tc.tri) tri.push_back(integer_json(x));
        for (const auto& x : tc.quad) quad.push_back(integer_json(x));
        for (const auto& x : tc.oct) oct.push_back(integer_json(x));
        t["tri"] = tri;
        t["quad"] = quad;
        t["oct"] = oct;
        tets.push_back(t);
    }
    Json tube = nullptr;
    if (v.tube)
        tube = Json{{"tet", v.tube->tet}, {"a", piece_ref_json(v.tube->first)}, {"b", piece_ref_json(v.tube->second)}};
    return Json{{"tets", tets}, {"tube", tube}};
}

inline SurfaceVector surface_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("tets") || !j["tets"].is_array())
        throw ValidationError("surface vector must be an object with a \"tets\" array");
    SurfaceVector v(j["tets"].size());
    for (std::size_t t = 0; t < v.size(); ++t) {
        const auto& jt = j["tets"][t];
        const std::string where = "tets[" + std::to_string(t) + "]";
        if (!jt.is_object()) throw ValidationError(where + " must be an object");
        auto read = [&](const char* key, auto& arr, bool required) {
            if (!jt.contains(key)) {
                if (required) throw ValidationError(where + " is missing \"" + key + "\"");
                return;
            }
            const auto& a = jt[key];
            if (!a.is_array() || a.size() != arr.size())
                throw ValidationError(where + "." + key + " must have " + std::to_string(arr.size()) + " entries");
            for (std::size_t i = 0; i < arr.size(); ++i) arr[i] = integer_from_json(a[i], where + "." + key);
        };
        read("tri", v.tets[t].tri, true);
        read("quad", v.tets[t].quad, true);
        read("oct", v.tets[t].oct, false);
    }
    if (j.contains("tube") && !j["tube"].is_null()) {
        const auto& jt = j["tube"];
        if (!jt.is_object() || !jt.contains("tet") || !jt["tet"].is_number_unsigned())
            throw ValidationError("tube needs a nonnegative \"tet\"");
        TubeAnnotation tube;
        tube.tet = jt["tet"].get<std::size_t>();
        if (tube.tet >= v.size()) throw ValidationError("tube tetrahedron out of range");
        if (!jt.contains("a") || !jt.contains("b")) throw ValidationError("tube needs pieces \"a\" and \"b\"");
        tube.first = piece_ref_from_json(jt["a"]);
        tube.second = piece_ref_from_json(jt["b"]);
        v.tube = tube;
    }
    return v;
}

inline Json summary_json(const SurfaceSummary& s) {
    Json comps = Json::array();
    for (std::size_t i = 0; i < s.component_count; ++i)
        comps.push_back(Json{{"euler_characteristic", s.component_chi[i]},
                             {"orientable", static_cast<bool>(s.component_orientable[i])},
                             {"closed", static_cast<bool>(s.component_closed[i])}});
    Json weights = Json::array();
    for (const auto& w : s.edge_weights) weights.push_back(integer_json(w));
    return Json{{"euler_characteristic", integer_json(s.euler_characteristic)},
                {"components", comps},
                {"orientable", to_string(s.orientable)},
                {"edge_weights", weights}};
}

// ---------------------------------------------------------------------------
// Curves

inline Json pattern_json(const CurvePattern& p) { return p.flat(); }

inline Json loop_json(const NormalLoop& l) { return Json{{"length", l.length}, {"word", l.word}}; }

inline Json decomposition_json(const LoopDecomposition& d) {
    Json loops = Json::array();
    for (const auto& l : d.loops) loops.push_back(loop_json(l));
    return Json{{"lengths", d.lengths()}, {"loops", loops}};
}

inline Json check348_json(const Check348Result& r) {
    return Json{{"pass", r.pass},
                {"lengths", r.decomposition.lengths()},
                {"length8_loops", r.length8_loops},
                {"witness", r.witness ? loop_json(*r.witness) : Json(nullptr)}};
}

// ---------------------------------------------------------------------------
// Splittings

inline Json surface_levels_json(const AbstractSurface& f) {
    Json out = Json::array();
    for (const auto& c : f.components()) out.push_back(Json::array({c.closed_chi, c.punctures}));
    return out;
}

inline Json splitting_json(const AbstractSplitting& s) {
    Json out = Json::array();
    for (const auto& level : s.levels()) out.push_back(surface_levels_json(level));
    return out;
}

inline AbstractSplitting splitting_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("splitting must be a JSON array of levels");
    std::vector<AbstractSurface> levels;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& lj = j[i];
        const std::string where = "level " + std::to_string(i);
        if (!lj.is_array()) throw ValidationError(where + " must be an array of [closed_chi, punctures] pairs");
        std::vector<SurfaceComponent> comps;
        for (const auto& cj : lj) {
            if (!cj.is_array() || cj.size() != 2 || !cj[0].is_number_integer() || !cj[1].is_number_integer())
                throw ValidationError(where + ": component must be [closed_chi, punctures]");
            comps.push_back({cj[0].get<long long>(), cj[1].get<long long>()});
        }
        levels.emplace_back(std::move(comps));
    }
    return AbstractSplitting(std::move(levels));
}

inline Json complexity_json(const ComplexityVector& c) { return c.entries(); }

inline Json compression_json(const CompressionMove& m) {
    Json j{{"component", m.component}, {"kind", to_string(m.kind)}};
    if (m.kind == CompressionKind::Separating) {
        j["chi1"] = m.chi1;
        j["chi2"] = m.chi2;
        j["punctures1"] = m.punctures1;
    }
    return j;
}

inline Json move_json(const MoveRecord& m) {
    Json j{{"move", m.kind == MoveRecord::Kind::Compress ? "compress" : "untangle"}, {"level", m.level}};
    if (m.kind == MoveRecord::Kind::Compress) {
        j["compression"] = compression_json(m.d);
    } else {
        j["d"] = compression_json(m.d);
        j["e"] = compression_json(*m.e);
        j["case"] = m.case_number;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Presentations

inline Json profile_json(const WidthProfile& w) {
    return Json{{"profile", w.counts},
                {"width", w.width},
                {"thick", w.thick},
                {"thin", w.thin},
                {"touches_zero", w.touches_zero}};
}

inline Json presentation_json(const MorsePresentation& p) {
    Json out = Json::array();
    for (const auto& e : p.events())
        out.push_back(std::string(e.kind == EventKind::Birth ? "B " : "D ") + std::to_string(e.position));
    return out;
}

}  // namespace normalhst::io
