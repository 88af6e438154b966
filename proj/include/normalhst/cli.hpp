#pragma once

// Command-line front end. `run_cli` takes the arguments after the program name and
// writes to the given streams, so it can be driven in-process.
//
// Exit codes: 0 success, 1 semantic failure, 2 input error, 3 resource ceiling.

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "normalhst/curve_patterns.hpp"
#include "normalhst/enumeration.hpp"
#include "normalhst/errors.hpp"
#include "normalhst/hst_complexity.hpp"
#include "normalhst/io.hpp"
#include "normalhst/normal_surfaces.hpp"
#include "normalhst/reconstruction.hpp"
#include "normalhst/selftest/acceptance.hpp"
#include "normalhst/selftest/oracles.hpp"
#include "normalhst/thin_position.hpp"
#include "normalhst/triangulation.hpp"

namespace normalhst::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kSemantic = 1, kInput = 2, kCeiling = 3 };

struct Ceilings {
    std::size_t rays = 200'000;
    long long bound = 12;
    std::size_t budget = 1'000'000;
    long long loop = 20;
};

/// NORMALHST_CEILING="rays=N,bound=N,budget=N,loop=N"; any subset of keys.
inline Ceilings parse_ceilings(const char* env) {
    Ceilings c;
    if (!env || !*env) return c;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("NORMALHST_CEILING: expected key=value, got '" + item + "'");
        const auto key = item.substr(0, eq);
        long long value = 0;
        try {
            std::size_t used = 0;
            value = std::stoll(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1 || value < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ValidationError("NORMALHST_CEILING: bad value for " + key);
        }
        if (key == "rays") c.rays = static_cast<std::size_t>(value);
        else if (key == "bound") c.bound = value;
        else if (key == "budget") c.budget = static_cast<std::size_t>(value);
        else if (key == "loop") c.loop = value;
        else throw ValidationError("NORMALHST_CEILING: unknown key '" + key + "'");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    auto scalar_array = [](const Json& a) {
        for (const auto& x : a)
            if (x.is_structured()) return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array() && !scalar_array(j)) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

}  // namespace detail

/// Table form of a JSON document: one `key  value` row per leaf, keys padded to align.
inline std::string render_table(const Json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    detail::flatten(j, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::string out;
    for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return out;
}

struct Output {
    std::string format = "json";
    std::ostream* out = nullptr;

    void document(const Json& j) const {
        if (format == "table") *out << render_table(j);
        else *out << j.dump(2) << "\n";
    }
    /// One record of a JSON-lines stream.
    void record(const Json& j) const {
        if (format == "table") *out << render_table(j) << "\n";
        else *out << j.dump() << "\n";
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": invalid JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_validate(const std::string& path, const Output& o) {
    const auto tri = parse_triangulation(read_file(path));
    const auto sk = compute_skeleton(tri);
    const auto rep = validate_manifold(tri, sk);
    o.document(Json{{"command", "validate"},
                    {"triangulation", triangulation_hash(tri)},
                    {"closed", tri.is_closed()},
                    {"skeleton", io::skeleton_json(sk)},
                    {"manifold", io::manifold_json(rep)},
                    {"status", rep.is_manifold ? "manifold" : "not a manifold"}});
    return rep.is_manifold ? kOk : kSemantic;
}

inline int cmd_surface(const std::string& tri_path, const std::string& vec_path, const std::string& mode_name,
                       const Output& o) {
    const auto tri = parse_triangulation(read_file(tri_path));
    const auto v = io::surface_from_json(read_json(vec_path));
    if (v.size() != tri.size())
        throw ValidationError("surface vector has " + std::to_string(v.size()) + " tetrahedra, triangulation has " +
                              std::to_string(tri.size()));
    std::string chosen = mode_name;
    if (chosen == "auto") chosen = v.oct_total() > 0 || v.tube ? "almost-normal" : "normal";
    const auto mode = chosen == "normal" ? SurfaceMode::Normal : SurfaceMode::AlmostNormal;
    const auto rep = check_admissible(tri, v, mode);
    Json doc{{"command", "surface"}, {"triangulation", triangulation_hash(tri)}, {"mode", chosen}};
    doc["admissible"] = rep.admissible();
    doc["violations"] = rep.violations;
    if (!rep.admissible()) {
        doc["class"] = "Inadmissible";
        doc["summary"] = "Inadmissible";
        o.document(doc);
        return kSemantic;
    }
    const auto cls = classify(tri, v);
    const auto sk = compute_skeleton(tri);
    const auto rec = reconstruct_surface(tri, sk, v);
    const auto c348 = check_348_surface(v);
    doc["class"] = to_string(cls);
    doc["surface"] = io::summary_json(rec.summary);
    Json per = Json::array();
    for (std::size_t t = 0; t < c348.per_tet.size(); ++t) {
        auto j = io::check348_json(c348.per_tet[t]);
        j["tet"] = t;
        per.push_back(j);
    }
    doc["check_348"] = Json{{"pass", c348.pass},
                            {"length8_total", c348.length8_total},
                            {"witness_tet", c348.witness_tet ? Json(*c348.witness_tet) : Json(nullptr)},
                            {"witness", c348.witness ? io::loop_json(*c348.witness) : Json(nullptr)},
                            {"tetrahedra", per}};
    const auto k = rec.summary.component_count;
    doc["summary"] = std::string(to_string(cls)) + ", " + std::to_string(k) + (k == 1 ? " component" : " components") +
                     ", χ=" + rec.summary.euler_characteristic.str() + ", 348: " + (c348.pass ? "pass" : "fail");
    o.document(doc);
    return c348.pass ? kOk : kSemantic;
}

struct EnumerateArgs {
    std::string method = "vertex";
    long long bound = 6;
    bool bound_given = false;
    bool cross_check = false;
};

inline Json surface_record(const Triangulation& tri, const Skeleton& sk, const SurfaceVector& v, std::size_t i) {
    return Json{{"kind", "surface"},
                {"index", i},
                {"total", io::integer_json(v.total())},
                {"class", to_string(classify(tri, v))},
                {"euler_characteristic", io::integer_json(euler_characteristic(tri, sk, v))},
                {"vector", io::surface_json(v)}};
}

inline int cmd_enumerate(const std::string& path, const EnumerateArgs& a, const Ceilings& c, const Output& o) {
    const auto tri = parse_triangulation(read_file(path));
    const auto sk = compute_skeleton(tri);
    EnumerationLimits limits;
    limits.max_rays = c.rays;
    limits.max_bound = c.bound;
    const bool bounded = a.method != "vertex" || a.cross_check || a.bound_given;
    if (bounded) normalhst::detail::check_bound(a.bound, limits);

    std::vector<SurfaceVector> found;
    if (a.method == "vertex") {
        for (auto& v : enumerate_vertex_surfaces(tri, limits))
            if (!a.bound_given || v.total() <= a.bound) found.push_back(std::move(v));
    } else if (a.method == "brute") {
        found = brute_force_enumerate(tri, a.bound, limits);
    } else {
        found = enumerate_octagon_surfaces(tri, a.bound, limits);
    }

    o.record(Json{{"kind", "header"},
                  {"triangulation", triangulation_hash(tri)},
                  {"method", a.method},
                  {"bound", bounded ? Json(a.bound) : Json(nullptr)},
                  {"cross_check", a.cross_check}});
    for (std::size_t i = 0; i < found.size(); ++i) o.record(surface_record(tri, sk, found[i], i));
    o.record(Json{{"kind", "summary"}, {"count", found.size()}});
    if (!a.cross_check) return kOk;

    std::vector<SurfaceVector> dd;
    for (auto& v : enumerate_vertex_surfaces(tri, limits))
        if (v.total() <= a.bound) dd.push_back(std::move(v));
    std::sort(dd.begin(), dd.end(), surface_less);
    const auto ref = oracle::vertex_surfaces_by_rank(tri, a.bound);
    const bool match = dd == ref;
    o.record(Json{{"kind", "cross_check"},
                  {"bound", a.bound},
                  {"vertex", dd.size()},
                  {"brute", ref.size()},
                  {"result", match ? "MATCH" : "MISMATCH"}});
    return match ? kOk : kSemantic;
}

inline int cmd_hst(const std::string& action, const std::string& path, std::size_t budget, bool relative,
                   const Ceilings& c, const Output& o) {
    const auto s = io::splitting_from_json(read_json(path));
    if (action == "complexity") {
        o.document(Json{{"command", "hst complexity"},
                        {"splitting", io::splitting_json(s)},
                        {"complexity", io::complexity_json(splitting_complexity(s, false))},
                        {"relative_complexity", io::complexity_json(splitting_complexity(s, true))}});
        return kOk;
    }
    if (action == "underlying") {
        const auto u = underlying_splitting(s);
        o.document(Json{{"command", "hst underlying"},
                        {"splitting", io::splitting_json(s)},
                        {"underlying", io::splitting_json(u.splitting)},
                        {"degenerate", u.degenerate}});
        return kOk;
    }
    if (budget > c.budget)
        throw ResourceError("budget " + std::to_string(budget) + " exceeds the ceiling " + std::to_string(c.budget));
    const auto r = is_minimal_reachable(s, budget, relative);
    Json trace = Json::array();
    for (const auto& m : r.trace) trace.push_back(io::move_json(m));
    o.document(Json{{"command", "hst search"},
                    {"relative", relative},
                    {"status", r.certified ? "certified" : "budget exhausted"},
                    {"expanded", r.expanded},
                    {"start_complexity", io::complexity_json(splitting_complexity(s, relative))},
                    {"best_complexity", io::complexity_json(r.best_complexity)},
                    {"best", io::splitting_json(r.best)},
                    {"trace", trace}});
    return kOk;
}

struct WidthArgs {
    std::string mode = "exchange";
    bool single_component = false;
    std::size_t budget = 100'000;
    std::size_t index = 0;
};

inline int cmd_width(const std::string& action, const std::string& path, const WidthArgs& a, const Ceilings& c,
                     const Output& o) {
    const auto p = parse_presentation(read_file(path));
    if (action == "width") {
        o.document(Json{{"command", "width width"}, {"events", io::presentation_json(p)}, {"width", io::profile_json(width(p))}});
        return kOk;
    }
    if (action == "split") {
        o.document(Json{{"command", "width split"},
                        {"width", io::profile_json(width(p))},
                        {"splitting", io::splitting_json(induced_splitting(p))}});
        return kOk;
    }
    if (action == "exchange") {
        const auto r = exchange_move(p, a.index + 1, a.index);
        o.document(Json{{"command", "width exchange"},
                        {"birth", a.index},
                        {"death", a.index + 1},
                        {"before", io::presentation_json(p)},
                        {"after", io::presentation_json(r.presentation)},
                        {"width_before", r.width_before},
                        {"width_after", r.width_after},
                        {"decrease", r.decrease()}});
        return kOk;
    }
    if (a.budget > c.budget)
        throw ResourceError("budget " + std::to_string(a.budget) + " exceeds the ceiling " + std::to_string(c.budget));
    ThinSearchOptions opt{a.mode == "all" ? ThinSearchMode::AllSequences : ThinSearchMode::Exchange, a.single_component,
                          a.budget};
    const auto r = thin_position_search(p, opt);
    o.document(Json{{"command", "width search"},
                    {"mode", a.mode},
                    {"single_component", a.single_component},
                    {"status", r.certified ? "certified" : "budget exhausted"},
                    {"explored", r.explored},
                    {"found", r.found},
                    {"min_width", r.found ? Json(r.min_width) : Json(nullptr)},
                    {"witness", r.found ? io::presentation_json(r.witness) : Json(nullptr)}});
    return r.found ? kOk : kSemantic;
}

inline int cmd_curve(const std::vector<long long>& counts, const Output& o) {
    if (counts.size() != 12) throw ValidationError("a curve pattern needs 12 integers, got " + std::to_string(counts.size()));
    std::array<long long, 12> flat{};
    std::copy(counts.begin(), counts.end(), flat.begin());
    const auto p = CurvePattern::from_flat(flat);
    if (!p.balanced()) throw ValidationError("curve pattern is not edge-balanced");
    const auto r = check_348(p);
    o.document(Json{{"command", "curve"},
                    {"pattern", io::pattern_json(p)},
                    {"decomposition", io::decomposition_json(r.decomposition)},
                    {"check_348", io::check348_json(r)}});
    return r.pass ? kOk : kSemantic;
}

inline int cmd_loops(long long max_length, const Ceilings& c, const Output& o) {
    const auto e = enumerate_normal_loops(max_length, c.loop);
    Json loops = Json::array();
    for (std::size_t i = 0; i < e.loops.size(); ++i) {
        const auto d = decompose_pattern(e.loops[i]);
        loops.push_back(Json{{"length", e.loop_lengths[i]}, {"pattern", io::pattern_json(e.loops[i])}, {"word", d.loops[0].word}});
    }
    Json classes = Json::array();
    for (const auto& k : e.classes)
        classes.push_back(Json{{"length", k.length}, {"size", k.members.size()}, {"representative", io::pattern_json(k.representative)}});
    o.document(Json{{"command", "loops"}, {"max_length", max_length}, {"loops", loops}, {"classes", classes}});
    return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int cmd_selftest(std::uint64_t seed, std::size_t runs, bool timing, const Output& o) {
    acceptance::Options opt;
    opt.seed = seed;
    opt.rewrite_runs = runs;
    opt.cli = [](const std::vector<std::string>& a, std::ostream& out, std::ostream& err) { return run_cli(a, out, err); };
    bool all = true;
    Json doc = Json::array();
    for (const auto& c : acceptance::criteria()) {
        const auto r = acceptance::run_criterion(c, opt);
        all = all && r.pass;
        if (o.format == "json")
            doc.push_back(Json{{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        else
            *o.out << acceptance::format_line(r, timing) << "\n" << std::flush;
    }
    if (o.format == "json") *o.out << doc.dump(2) << "\n";
    return all ? kOk : kSemantic;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Normal surfaces, curve patterns and splitting complexity", "normalhst"};
    app.require_subcommand(1);
    std::string format;  // empty: json, or table for selftest
    std::uint64_t seed = 20261016;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--seed", seed, "Seed for randomized suites");
    };
    std::string tri_path, vec_path, file_path, action, mode = "auto";
    EnumerateArgs ea;
    WidthArgs wa;
    std::size_t hst_budget = 10'000;
    bool relative = false;
    long long max_length = 8;
    std::vector<long long> counts;
    std::size_t runs = 10'000;
    bool timing = false;

    auto* validate = app.add_subcommand("validate", "Parse a triangulation and check it is a manifold");
    validate->add_option("triangulation", tri_path)->required();
    common(validate);

    auto* surface = app.add_subcommand("surface", "Classify a surface vector");
    surface->add_option("triangulation", tri_path)->required();
    surface->add_option("vector", vec_path)->required();
    surface->add_option("--mode", mode)->check(CLI::IsMember({"auto", "normal", "almost-normal"}));
    common(surface);

    auto* enumerate = app.add_subcommand("enumerate", "Enumerate vertex, bounded or octagon surfaces");
    enumerate->add_option("triangulation", tri_path)->required();
    enumerate->add_option("--method", ea.method)->check(CLI::IsMember({"vertex", "brute", "octagon"}));
    auto* bound_opt = enumerate->add_option("--bound", ea.bound, "Coordinate-sum bound");
    enumerate->add_flag("--cross-check", ea.cross_check, "Compare vertex surfaces with the brute-force oracle");
    common(enumerate);

    auto* hst = app.add_subcommand("hst", "Splitting complexity: complexity | underlying | search");
    hst->add_option("action", action)->required()->check(CLI::IsMember({"complexity", "underlying", "search"}));
    hst->add_option("splitting", file_path)->required();
    hst->add_option("--budget", hst_budget, "Expanded-state budget for search");
    hst->add_flag("--relative", relative, "Use punctured Euler characteristics");
    common(hst);

    auto* wid = app.add_subcommand("width", "Morse presentations: width | split | search | exchange");
    wid->add_option("action", action)->required()->check(CLI::IsMember({"width", "split", "search", "exchange"}));
    wid->add_option("presentation", file_path)->required();
    wid->add_option("--mode", wa.mode)->check(CLI::IsMember({"exchange", "all"}));
    wid->add_flag("--single-component", wa.single_component);
    wid->add_option("--budget", wa.budget);
    wid->add_option("--index", wa.index, "Birth index for exchange");
    common(wid);

    auto* curve = app.add_subcommand("curve", "Decompose a 12-integer curve pattern");
    curve->add_option("counts", counts)->required()->expected(12);
    common(curve);

    auto* loops = app.add_subcommand("loops", "Enumerate normal loops on a tetrahedron boundary");
    loops->add_option("--max-length", max_length);
    common(loops);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--runs", runs, "Randomized rewrite runs");
    selftest->add_flag("--timing", timing, "Append wall-clock times (output no longer reproducible)");
    common(selftest);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "normalhst: " << e.what() << "\n";
        return kInput;
    }
    if (format.empty()) format = selftest->parsed() ? "table" : "json";
    ea.bound_given = bound_opt->count() > 0;
    Output o{format, &out};

    try {
        const auto ceilings = parse_ceilings(std::getenv("NORMALHST_CEILING"));
        if (validate->parsed()) return cmd_validate(tri_path, o);
        if (surface->parsed()) return cmd_surface(tri_path, vec_path, mode, o);
        if (enumerate->parsed()) return cmd_enumerate(tri_path, ea, ceilings, o);
        if (hst->parsed()) return cmd_hst(action, file_path, hst_budget, relative, ceilings, o);
        if (wid->parsed()) return cmd_width(action, file_path, wa, ceilings, o);
        if (curve->parsed()) return cmd_curve(counts, o);
        if (loops->parsed()) return cmd_loops(max_length, ceilings, o);
        if (selftest->parsed()) return cmd_selftest(seed, runs, timing, o);
    } catch (const ParseError& e) {
        err << "normalhst: parse error: " << e.what() << "\n";
        return kInput;
    } catch (const ValidationError& e) {
        err << "normalhst: invalid input: " << e.what() << "\n";
        return kInput;
    } catch (const ResourceError& e) {
        err << "normalhst: ceiling exceeded: " << e.what() << "\n";
        return kCeiling;
    } catch (const PreconditionError& e) {
        err << "normalhst: " << e.what() << "\n";
        return kSemantic;
    } catch (const std::exception& e) {
        err << "normalhst: internal error: " << e.what() << "\n";
        return kSemantic;
    }
    return kInput;
}

}  // namespace normalhst::cli
