#pragma once

// Acceptance criteria, one function per criterion. Each returns pass/fail plus a short
// deterministic detail string; wall-clock time is measured by the caller.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "normalhst/curve_patterns.hpp"
#include "normalhst/enumeration.hpp"
#include "normalhst/hst_complexity.hpp"
#include "normalhst/normal_surfaces.hpp"
#include "normalhst/reconstruction.hpp"
#include "normalhst/selftest/corpus.hpp"
#include "normalhst/selftest/oracles.hpp"
#include "normalhst/thin_position.hpp"
#include "normalhst/triangulation.hpp"

namespace normalhst::acceptance {

using CliRunner = std::function<int(const std::vector<std::string>&, std::ostream&, std::ostream&)>;

struct Options {
    std::uint64_t seed = 20261016;
    std::size_t rewrite_runs = 10'000;
    CliRunner cli;  // needed by the determinism criterion
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id = 0;
    std::string name;
    double limit_seconds = 0;  // 0: no runtime limit
    std::function<Outcome(const Options&)> run;
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace detail {

inline Triangulation corpus_triangulation(std::string_view name) { return parse_triangulation(corpus::text(name)); }

inline const std::vector<std::string>& manifold_corpus() {
    static const std::vector<std::string> names{"single_tet.tri", "doubled_tet.tri", "simplex4_boundary.tri",
                                                "s3_one_tet.tri"};
    return names;
}

/// Uniform draw from [0, n); std distributions are not portable across standard libraries.
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace detail

// ---------------------------------------------------------------------------
// 1. Curve length law

inline Outcome curve_length_law(const Options&) {
    const long long L = 20;
    const auto lib = enumerate_normal_loops(L);
    std::map<long long, std::set<CurvePattern>> by_length;
    for (std::size_t i = 0; i < lib.loops.size(); ++i) by_length[lib.loop_lengths[i]].insert(lib.loops[i]);

    const std::set<long long> allowed{3, 4, 8, 12, 16, 20};
    std::ostringstream d;
    bool ok = true;
    for (const auto& [len, set] : by_length) {
        d << len << ":" << set.size() << " ";
        if (!allowed.count(len)) ok = false;
    }
    std::map<long long, std::vector<std::size_t>> class_sizes;
    for (const auto& c : lib.classes) class_sizes[c.length].push_back(c.members.size());
    ok = ok && class_sizes[3] == std::vector<std::size_t>{4} && class_sizes[4] == std::vector<std::size_t>{3} &&
         class_sizes[8] == std::vector<std::size_t>{3};

    const auto by_counts = oracle::loops_by_arc_counts(L);
    const auto by_words = oracle::loops_by_words(L);
    const bool agree = by_counts == by_length && by_words == by_length;
    bool orbits = true;
    for (long long len : {3, 4, 8}) {
        auto it = by_length.find(len);
        orbits = orbits && it != by_length.end() && oracle::orbit_sizes(it->second) == class_sizes[len];
    }
    d << "classes(3,4,8)=" << class_sizes[3].size() << "," << class_sizes[4].size() << "," << class_sizes[8].size()
      << " sizes=" << (class_sizes[3].empty() ? 0 : class_sizes[3][0]) << ","
      << (class_sizes[4].empty() ? 0 : class_sizes[4][0]) << "," << (class_sizes[8].empty() ? 0 : class_sizes[8][0])
      << " oracles " << (agree && orbits ? "agree" : "DISAGREE");
    return {ok && agree && orbits, d.str()};
}

// ---------------------------------------------------------------------------
// 2. 348 checker

inline Outcome checker_348(const Options&) {
    std::size_t vectors = 0, good = 0;
    for (const auto& name : detail::manifold_corpus()) {
        const auto tri = detail::corpus_triangulation(name);
        for (const auto& v : enumerate_octagon_surfaces(tri, 8)) {
            ++vectors;
            if (classify(tri, v) != SurfaceClass::AlmostNormalOctagon) continue;
            const auto r = check_348_surface(v);
            if (r.pass && r.length8_total == 1) ++good;
        }
    }
    // Hand-built violations.
    std::size_t rejected = 0, built = 0;
    const auto loops = enumerate_normal_loops(12);
    for (std::size_t i = 0; i < loops.loops.size(); ++i) {
        if (loops.loop_lengths[i] != 12) continue;
        ++built;
        const auto r = check_348(loops.loops[i]);
        if (!r.pass && r.witness && r.witness->length == 12) ++rejected;
    }
    {
        ++built;
        const auto twice = 2 * piece_pattern(PieceKind::Octagon, 0);
        const auto r = check_348(twice);
        if (!r.pass && r.witness && r.witness->length == 8) ++rejected;
    }
    {
        ++built;
        SurfaceVector v(2);
        v.tets[0].oct[0] = 1;
        v.tets[1].oct[1] = 1;
        const auto r = check_348_surface(v);
        if (!r.pass && r.witness_tet == 1u && r.witness && r.witness->length == 8) ++rejected;
    }
    std::ostringstream d;
    d << good << "/" << vectors << " augmented vectors pass; " << rejected << "/" << built << " violations rejected";
    return {vectors > 0 && good == vectors && rejected == built, d.str()};
}

// ---------------------------------------------------------------------------
// 3. Enumeration oracle agreement

inline Outcome enumeration_agreement(const Options&) {
    bool ok = true;
    std::ostringstream d;
    for (const char* name : {"single_tet.tri", "doubled_tet.tri", "simplex4_boundary.tri"}) {
        const auto tri = detail::corpus_triangulation(name);
        std::vector<SurfaceVector> dd;
        for (auto& v : enumerate_vertex_surfaces(tri))
            if (v.total() <= 6) dd.push_back(std::move(v));
        std::sort(dd.begin(), dd.end(), surface_less);
        const auto ref = oracle::vertex_surfaces_by_rank(tri, 6);
        const bool same = dd == ref;
        ok = ok && same;
        if (d.tellp() > 0) d << " ";
        d << name << ":" << dd.size() << (same ? "=" : "!=") << ref.size();
    }
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 4. Euler characteristic by two paths

inline Outcome chi_two_paths(const Options&) {
    std::size_t checked = 0, mismatched = 0, links = 0, bad_links = 0;
    for (const auto& name : detail::manifold_corpus()) {
        const auto tri = detail::corpus_triangulation(name);
        const auto sk = compute_skeleton(tri);
        auto vectors = brute_force_enumerate(tri, 6);
        for (auto& v : enumerate_octagon_surfaces(tri, 6)) vectors.push_back(std::move(v));
        for (const auto& v : vectors) {
            if (v.is_zero()) continue;
            ++checked;
            const auto counted = euler_characteristic(tri, sk, v);
            const auto rec = reconstruct_surface(tri, sk, v);
            long long summed = 0;
            for (auto c : rec.summary.component_chi) summed += c;
            if (counted != rec.summary.euler_characteristic || counted != summed) ++mismatched;
        }
        if (!tri.is_closed()) continue;
        for (std::size_t i = 0; i < sk.vertices.size(); ++i) {
            ++links;
            const auto rec = reconstruct_surface(tri, sk, vertex_link(tri, sk, i));
            if (rec.summary.component_count != 1 || rec.summary.component_chi[0] != 2) ++bad_links;
        }
    }
    std::ostringstream d;
    d << checked << " vectors, " << mismatched << " mismatches; " << links << " closed vertex links, " << bad_links
      << " not connected spheres";
    return {checked > 0 && mismatched == 0 && links > 0 && bad_links == 0, d.str()};
}

// ---------------------------------------------------------------------------
// 5. Descent and termination

inline AbstractSplitting random_splitting(std::mt19937_64& rng) {
    using detail::draw;
    const std::size_t thick = 1 + draw(rng, 3);
    std::vector<AbstractSurface> levels;
    auto thin = [&] {
        std::vector<SurfaceComponent> c;
        if (draw(rng, 2)) c.push_back({2 - 2 * static_cast<long long>(draw(rng, 3)), static_cast<long long>(draw(rng, 3))});
        return AbstractSurface(std::move(c));
    };
    levels.push_back(thin());
    for (std::size_t k = 0; k < thick; ++k) {
        std::vector<SurfaceComponent> c;
        const std::size_t n = 1 + draw(rng, 2);
        for (std::size_t i = 0; i < n; ++i)
            c.push_back({-2 * static_cast<long long>(draw(rng, 4)), static_cast<long long>(draw(rng, 5))});
        levels.emplace_back(std::move(c));
        levels.push_back(thin());
    }
    return AbstractSplitting(std::move(levels));
}

inline Outcome descent_and_termination(const Options& opt) {
    std::size_t compressions = 0, compress_fail = 0, untangles = 0, untangle_fail = 0;
    for (long long chi = -8; chi <= 0; chi += 2) {
        for (long long p = 0; p <= 6; ++p) {
            const AbstractSurface g({SurfaceComponent{chi, p}});
            const auto moves = legal_compressions(g, true);
            for (const auto& m : moves) {
                ++compressions;
                const auto h = compress(g, m);
                bool ok = c_surface(h, true) < c_surface(g, true);
                if (m.kind != CompressionKind::Relative) ok = ok && c_surface(h) < c_surface(g);
                if (!ok) ++compress_fail;
            }
            for (const auto& md : moves) {
                for (const auto& me : moves) {
                    UntangleMove um{1, md, me, std::nullopt, false, false};
                    const AbstractSplitting base({AbstractSurface(), g, AbstractSurface()});
                    if (untangle_surfaces_problem(base, um)) continue;
                    const auto surf = untangle_surfaces(base, um);
                    for (int shape = 0; shape < 4; ++shape) {
                        const AbstractSplitting s({shape & 1 ? surf.g_d : AbstractSurface(), g,
                                                   shape & 2 ? surf.g_e : AbstractSurface()});
                        const auto r = untangle_step(s, with_computed_flags(s, um));
                        ++untangles;
                        bool ok = splitting_complexity(r.splitting, true) < splitting_complexity(s, true);
                        if (md.kind != CompressionKind::Relative && me.kind != CompressionKind::Relative)
                            ok = ok && splitting_complexity(r.splitting) < splitting_complexity(s);
                        if (!ok) ++untangle_fail;
                    }
                }
            }
        }
    }

    std::mt19937_64 rng(opt.seed);
    std::size_t terminated = 0, longest = 0, descent_fail = 0;
    const std::size_t step_cap = 100'000;
    for (std::size_t run = 0; run < opt.rewrite_runs; ++run) {
        auto s = random_splitting(rng);
        std::size_t steps = 0;
        for (; steps < step_cap; ++steps) {
            std::vector<std::size_t> movable;
            for (std::size_t p = 1; p < s.size(); p += 2)
                if (!legal_compressions(s[p], true).empty()) movable.push_back(p);
            if (movable.empty()) break;
            const std::size_t p = movable[detail::draw(rng, movable.size())];
            const auto moves = legal_compressions(s[p], true);
            const auto& d = moves[detail::draw(rng, moves.size())];
            const auto& e = moves[detail::draw(rng, moves.size())];
            AbstractSplitting next;
            UntangleMove um{p, d, e, std::nullopt, false, false};
            if (detail::draw(rng, 2) && !untangle_surfaces_problem(s, um)) {
                next = untangle_step(s, with_computed_flags(s, um)).splitting;
            } else {
                auto lv = s.levels();
                lv[p] = compress(s[p], d);
                next = AbstractSplitting(std::move(lv));
            }
            if (!(splitting_complexity(next, true) < splitting_complexity(s, true))) ++descent_fail;
            s = std::move(next);
        }
        if (steps < step_cap) ++terminated;
        longest = std::max(longest, steps);
    }
    std::ostringstream d;
    d << compressions << " compressions (" << compress_fail << " non-descending), " << untangles << " untangle steps ("
      << untangle_fail << " non-descending), " << terminated << "/" << opt.rewrite_runs
      << " random runs terminated (longest " << longest << " moves, " << descent_fail << " non-descending)";
    return {compress_fail == 0 && untangle_fail == 0 && descent_fail == 0 && terminated == opt.rewrite_runs &&
                compressions > 0 && untangles > 0,
            d.str()};
}

// ---------------------------------------------------------------------------
// 6. Width arithmetic

inline Outcome width_arithmetic(const Options&) {
    const auto bd = width(parse_presentation("B 0\nD 0\n")).width;
    const auto bbdd = width(parse_presentation("B 0\nB 0\nD 0\nD 0\n")).width;
    const auto probe = parse_presentation("B 0\nB 0\nD 0\nD 0\n");
    const auto free_min = thin_position_search(probe, {ThinSearchMode::AllSequences, false, 1'000'000});
    const auto single_min = thin_position_search(probe, {ThinSearchMode::AllSequences, true, 1'000'000});

    std::size_t exchanges = 0, failures = 0, presentations = 0;
    for (std::size_t births = 1; births <= 3; ++births) {
        for_each_presentation(births, [&](const MorsePresentation& p) {
            ++presentations;
            for (auto b : legal_exchanges(p)) {
                ++exchanges;
                try {
                    const auto r = exchange_move(p, b + 1, b);
                    if (r.decrease() <= 0) ++failures;
                } catch (const std::exception&) {
                    ++failures;
                }
            }
            // Iterated exchanges from here must stop.
            auto cur = p;
            for (std::size_t steps = 0;; ++steps) {
                const auto legal = legal_exchanges(cur);
                if (legal.empty()) break;
                if (steps > 64) {
                    ++failures;
                    break;
                }
                cur = exchange_move(cur, legal.front() + 1, legal.front()).presentation;
            }
            return true;
        });
    }
    std::ostringstream d;
    d << "[B,D]=" << bd << " [B,B,D,D]=" << bbdd << " min4=" << free_min.min_width
      << (free_min.certified ? " certified" : " uncertified") << " min4(single)=" << single_min.min_width
      << (single_min.certified ? " certified" : " uncertified") << "; " << exchanges << " exchanges over "
      << presentations << " presentations, " << failures << " failures";
    const bool ok = bd == 2 && bbdd == 8 && free_min.found && free_min.certified && free_min.min_width == 4 &&
                    single_min.found && single_min.certified && single_min.min_width == 8 && exchanges > 0 &&
                    failures == 0;
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 7. Determinism

/// Every documented command except selftest, relative to a directory holding the corpus.
inline std::vector<std::vector<std::string>> documented_commands(const std::filesystem::path& dir) {
    auto f = [&](const char* name) { return (dir / name).string(); };
    std::vector<std::vector<std::string>> cmds{
        {"validate", f("simplex4_boundary.tri")},
        {"validate", f("pseudo_manifold.tri")},
        {"validate", f("selfglue.tri")},
        {"validate", f("doubled_tet.tri"), "--format", "table"},
        {"surface", f("doubled_tet.tri"), f("doubled_tet_vertex_link.json")},
        {"surface", f("s3_one_tet.tri"), f("s3_one_tet_octagon.json"), "--mode", "almost-normal"},
        {"surface", f("single_tet.tri"), f("single_tet_two_octagons.json"), "--mode", "almost-normal"},
        {"surface", f("single_tet.tri"), f("single_tet_tube.json"), "--mode", "almost-normal", "--format", "table"},
        {"enumerate", f("doubled_tet.tri"), "--cross-check", "--bound", "6"},
        {"enumerate", f("single_tet.tri"), "--method", "vertex"},
        {"enumerate", f("s3_one_tet.tri"), "--method", "octagon", "--bound", "6"},
        {"enumerate", f("simplex4_boundary.tri"), "--method", "brute", "--bound", "5", "--format", "table"},
        {"enumerate", f("single_tet.tri"), "--method", "brute", "--bound", "1000"},
        {"hst", "complexity", f("genus2.json")},
        {"hst", "underlying", f("torus_with_spheres.json")},
        {"hst", "search", f("torus.json")},
        {"hst", "search", f("genus2.json"), "--budget", "0"},
        {"width", "width", f("bridge.pres")},
        {"width", "split", f("exchange.pres")},
        {"width", "search", f("stacked.pres"), "--mode", "all", "--single-component"},
        {"width", "exchange", f("exchange.pres"), "--index", "1"},
        {"curve", "0", "0", "0", "1", "0", "0", "1", "0", "0", "1", "0", "0"},
        {"loops", "--max-length", "8"},
    };
    return cmds;
}

inline void write_corpus(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& file : corpus::kFiles) std::ofstream(dir / std::string(file.name)) << file.text;
}

inline Outcome determinism(const Options& opt) {
    if (!opt.cli) return {false, "no command runner"};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("normalhst-selftest-" + std::to_string(std::random_device{}()));
    write_corpus(dir);
    std::size_t same = 0;
    const auto cmds = documented_commands(dir);
    for (auto cmd : cmds) {
        cmd.push_back("--seed");
        cmd.push_back(std::to_string(opt.seed));
        std::ostringstream o1, e1, o2, e2;
        const int c1 = opt.cli(cmd, o1, e1);
        const int c2 = opt.cli(cmd, o2, e2);
        if (c1 == c2 && o1.str() == o2.str() && e1.str() == e2.str() && (!o1.str().empty() || !e1.str().empty())) ++same;
    }
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
    std::ostringstream d;
    d << same << "/" << cmds.size() << " commands byte-identical across two runs";
    return {same == cmds.size(), d.str()};
}

// ---------------------------------------------------------------------------

inline std::vector<Criterion> criteria() {
    return {
        {1, "curve length law", 60, curve_length_law},
        {2, "348 checker", 0, checker_348},
        {3, "enumeration oracle agreement", 300, enumeration_agreement},
        {4, "euler characteristic two-path agreement", 0, chi_two_paths},
        {5, "descent and termination", 60, descent_and_termination},
        {6, "width arithmetic", 0, width_arithmetic},
        {7, "determinism", 0, determinism},
    };
}

inline Result run_criterion(const Criterion& c, const Options& opt) {
    Result r{c.id, c.name, false, {}, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto o = c.run(opt);
        r.pass = o.pass;
        r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && r.seconds >= c.limit_seconds) {
        r.pass = false;
        r.detail += "; exceeded " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    return r;
}

/// One line per criterion. Timings are shown only on request so that the default output
/// is reproducible.
inline std::string format_line(const Result& r, bool timing) {
    std::ostringstream o;
    o << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail;
    if (timing) o << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
    return o.str();
}

}  // namespace normalhst::acceptance
