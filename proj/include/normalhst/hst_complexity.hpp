#pragma once

// Complexity calculus for abstract thin/thick splittings.
//
// Surfaces are multisets of closed components, each carrying a closed Euler
// characteristic and a puncture count. Compressions, untangling and the search all act
// on these counts only.

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "normalhst/errors.hpp"

namespace normalhst {

struct SurfaceComponent {
    long long closed_chi = 2;
    long long punctures = 0;

    long long punctured_chi() const { return closed_chi - punctures; }
    bool is_sphere() const { return closed_chi == 2; }
    friend auto operator<=>(const SurfaceComponent&, const SurfaceComponent&) = default;
};

inline std::optional<std::string> component_problem(const SurfaceComponent& c) {
    if (c.closed_chi > 2) return "closed_chi " + std::to_string(c.closed_chi) + " exceeds 2";
    if (c.closed_chi % 2 != 0) return "closed_chi " + std::to_string(c.closed_chi) + " is odd";
    if (c.punctures < 0) return "negative puncture count";
    return std::nullopt;
}

class AbstractSurface {
public:
    AbstractSurface() = default;
    explicit AbstractSurface(std::vector<SurfaceComponent> components) : components_(std::move(components)) {
        for (const auto& c : components_)
            if (auto p = component_problem(c)) throw ValidationError("invalid surface component: " + *p);
    }

    const std::vector<SurfaceComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    bool empty() const { return components_.empty(); }
    const SurfaceComponent& operator[](std::size_t i) const { return components_[i]; }

    std::vector<SurfaceComponent> sorted() const {
        auto out = components_;
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Multiset equality: component order is not significant.
    friend bool operator==(const AbstractSurface& a, const AbstractSurface& b) { return a.sorted() == b.sorted(); }

private:
    std::vector<SurfaceComponent> components_;
};

inline AbstractSurface sphere_with_punctures(long long punctures) {
    return AbstractSurface({SurfaceComponent{2, punctures}});
}

/// Sum over components of (2 - chi)^2; chi is the punctured characteristic when relative.
inline long long c_surface(const AbstractSurface& f, bool relative = false) {
    long long s = 0;
    for (const auto& c : f.components()) {
        const long long d = 2 - (relative ? c.punctured_chi() : c.closed_chi);
        s += d * d;
    }
    return s;
}

class ComplexityVector {
public:
    ComplexityVector() = default;
    explicit ComplexityVector(std::vector<long long> entries) : entries_(std::move(entries)) {
        for (auto x : entries_)
            if (x < 0) throw ValidationError("complexity entries must be nonnegative");
        std::sort(entries_.begin(), entries_.end(), std::greater<>());
    }

    const std::vector<long long>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    friend bool operator==(const ComplexityVector&, const ComplexityVector&) = default;

private:
    std::vector<long long> entries_;
};

enum class Ordering { Less, Equal, Greater };

inline std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

/// Lexicographic; a proper prefix is smaller.
inline Ordering compare_complexity(const ComplexityVector& a, const ComplexityVector& b) {
    const auto& x = a.entries();
    const auto& y = b.entries();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] < y[i]) return Ordering::Less;
        if (x[i] > y[i]) return Ordering::Greater;
    }
    if (x.size() == y.size()) return Ordering::Equal;
    return x.size() < y.size() ? Ordering::Less : Ordering::Greater;
}

inline bool operator<(const ComplexityVector& a, const ComplexityVector& b) {
    return compare_complexity(a, b) == Ordering::Less;
}

/// Levels G_0..G_n; even indices thin, odd indices thick. The sequence starts and ends
/// with a thin level, and every thick level is nonempty.
class AbstractSplitting {
public:
    AbstractSplitting() : levels_(1) {}
    explicit AbstractSplitting(std::vector<AbstractSurface> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw ValidationError("splitting has no levels");
        if (levels_.size() % 2 == 0) throw ValidationError("splitting must start and end with a thin level");
        for (std::size_t i = 1; i < levels_.size(); i += 2)
            if (levels_[i].empty()) throw ValidationError("thick level " + std::to_string(i) + " is empty");
    }

    const std::vector<AbstractSurface>& levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    const AbstractSurface& operator[](std::size_t i) const { return levels_[i]; }
    static bool is_thick(std::size_t i) { return i % 2 == 1; }
    std::size_t thick_count() const { return levels_.size() / 2; }

    friend bool operator==(const AbstractSplitting&, const AbstractSplitting&) = default;

private:
    std::vector<AbstractSurface> levels_;
};

inline ComplexityVector splitting_complexity(const AbstractSplitting& s, bool relative = false) {
    std::vector<long long> v;
    for (std::size_t i = 1; i < s.size(); i += 2) v.push_back(c_surface(s[i], relative));
    return ComplexityVector(std::move(v));
}

// ---------------------------------------------------------------------------
// Compression

enum class CompressionKind { Nonseparating, Separating, Relative };

inline std::string to_string(CompressionKind k) {
    switch (k) {
        case CompressionKind::Nonseparating: return "nonseparating";
        case CompressionKind::Separating: return "separating";
        case CompressionKind::Relative: return "relative";
    }
    return "?";
}

struct CompressionMove {
    std::size_t component = 0;
    CompressionKind kind = CompressionKind::Nonseparating;
    long long chi1 = 0, chi2 = 0;  // separating only
    long long punctures1 = 0;      // separating only: punctures kept by the first piece

    friend auto operator<=>(const CompressionMove&, const CompressionMove&) = default;
};

/// Why `m` cannot be applied to `f`, or nullopt if it can.
inline std::optional<std::string> compress_problem(const AbstractSurface& f, const CompressionMove& m) {
    if (m.component >= f.size())
        return "component " + std::to_string(m.component) + " out of range (" + std::to_string(f.size()) + " components)";
    const auto& c = f[m.component];
    switch (m.kind) {
        case CompressionKind::Nonseparating:
            if (c.closed_chi > 0) return "essentiality: nonseparating compression needs closed_chi <= 0";
            return std::nullopt;
        case CompressionKind::Separating:
            if (m.chi1 + m.chi2 != c.closed_chi + 2)
                return "separating compression needs chi1 + chi2 = closed_chi + 2";
            if (m.chi1 % 2 != 0 || m.chi2 % 2 != 0) return "separating compression needs even chi1, chi2";
            if (m.chi1 > 0 || m.chi2 > 0) return "essentiality: separating compression would cut off a sphere";
            if (m.punctures1 < 0 || m.punctures1 > c.punctures)
                return "separating compression puncture split out of range";
            return std::nullopt;
        case CompressionKind::Relative:
            if (c.punctures < 2) return "relative compression needs at least 2 punctures";
            if (c.punctured_chi() > 0) return "essentiality: relative compression needs punctured chi <= 0";
            return std::nullopt;
    }
    return "unknown compression kind";
}

/// Separating compressions keep the first piece in place and append the second.
inline AbstractSurface compress(const AbstractSurface& f, const CompressionMove& m) {
    if (auto p = compress_problem(f, m)) throw PreconditionError(*p);
    auto comps = f.components();
    auto& c = comps[m.component];
    switch (m.kind) {
        case CompressionKind::Nonseparating: c.closed_chi += 2; break;
        case CompressionKind::Separating: {
            const long long rest = c.punctures - m.punctures1;
            c = SurfaceComponent{m.chi1, m.punctures1};
            comps.push_back(SurfaceComponent{m.chi2, rest});
            break;
        }
        case CompressionKind::Relative: c.punctures -= 2; break;
    }
    return AbstractSurface(std::move(comps));
}

/// Every legal compression of `f`, in a fixed order. Relative moves only when requested.
inline std::vector<CompressionMove> legal_compressions(const AbstractSurface& f, bool include_relative) {
    std::vector<CompressionMove> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& c = f[i];
        if (c.closed_chi <= 0) out.push_back({i, CompressionKind::Nonseparating, 0, 0, 0});
        for (long long chi1 = 0; chi1 >= c.closed_chi + 2; chi1 -= 2) {
            const long long chi2 = c.closed_chi + 2 - chi1;
            if (chi2 > 0) continue;
            for (long long p1 = 0; p1 <= c.punctures; ++p1) out.push_back({i, CompressionKind::Separating, chi1, chi2, p1});
        }
        if (include_relative && c.punctures >= 2 && c.punctured_chi() <= 0)
            out.push_back({i, CompressionKind::Relative, 0, 0, 0});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Untangling

struct UntangleMove {
    std::size_t p = 1;
    CompressionMove d, e;
    /// E as applied to G_D when computing G_DE; defaults to `e` itself.
    std::optional<CompressionMove> e_after_d;
    bool d_equals_prev = false;
    bool e_equals_next = false;
};

struct UntangleResult {
    AbstractSplitting splitting;
    int case_number = 0;
    AbstractSurface g_d, g_e, g_de;
};

struct UntangleSurfaces {
    AbstractSurface g_d, g_e, g_de;
};

inline std::optional<std::string> untangle_surfaces_problem(const AbstractSplitting& s, const UntangleMove& m) {
    if (m.p % 2 == 0) return "untangle index " + std::to_string(m.p) + " is not a thick level";
    if (m.p + 1 >= s.size()) return "untangle index " + std::to_string(m.p) + " out of range";
    const auto& g = s[m.p];
    if (auto pr = compress_problem(g, m.d)) return "invalid D move: " + *pr;
    if (auto pr = compress_problem(g, m.e)) return "invalid E move: " + *pr;
    if (auto pr = compress_problem(compress(g, m.d), m.e_after_d.value_or(m.e))) return "invalid E move on G_D: " + *pr;
    return std::nullopt;
}

inline UntangleSurfaces untangle_surfaces(const AbstractSplitting& s, const UntangleMove& m) {
    if (auto pr = untangle_surfaces_problem(s, m)) throw PreconditionError(*pr);
    const auto& g = s[m.p];
    UntangleSurfaces out{compress(g, m.d), compress(g, m.e), {}};
    out.g_de = compress(out.g_d, m.e_after_d.value_or(m.e));
    return out;
}

/// One untangling step at thick level p.
///   case 1: G_p -> G_D, G_DE, G_E
///   case 2: {G_{p-1}, G_p} -> {G_DE, G_E}       (G_D = G_{p-1})
///   case 3: {G_p, G_{p+1}} -> {G_D, G_DE}       (G_E = G_{p+1})
///   case 4: {G_{p-1}, G_p, G_{p+1}} -> G_DE     (both)
inline UntangleResult untangle_step(const AbstractSplitting& s, const UntangleMove& m) {
    auto surf = untangle_surfaces(s, m);
    const bool eq_d = surf.g_d == s[m.p - 1];
    const bool eq_e = surf.g_e == s[m.p + 1];
    if (eq_d != m.d_equals_prev)
        throw PreconditionError(std::string("inconsistent flag: G_D ") + (eq_d ? "equals" : "differs from") + " G_{p-1}");
    if (eq_e != m.e_equals_next)
        throw PreconditionError(std::string("inconsistent flag: G_E ") + (eq_e ? "equals" : "differs from") + " G_{p+1}");

    const auto& old = s.levels();
    const auto p = static_cast<std::ptrdiff_t>(m.p);
    std::vector<AbstractSurface> lv(old.begin(), old.begin() + p - 1);
    int which = 0;
    if (!eq_d && !eq_e) {
        which = 1;
        lv.insert(lv.end(), {old[m.p - 1], surf.g_d, surf.g_de, surf.g_e, old[m.p + 1]});
    } else if (eq_d && !eq_e) {
        which = 2;
        lv.insert(lv.end(), {surf.g_de, surf.g_e, old[m.p + 1]});
    } else if (!eq_d && eq_e) {
        which = 3;
        lv.insert(lv.end(), {old[m.p - 1], surf.g_d, surf.g_de});
    } else {
        which = 4;
        lv.push_back(surf.g_de);
    }
    lv.insert(lv.end(), old.begin() + p + 2, old.end());
    return {AbstractSplitting(std::move(lv)), which, surf.g_d, surf.g_e, surf.g_de};
}

/// Untangle move with both equality flags filled in from the computed surfaces.
inline UntangleMove with_computed_flags(const AbstractSplitting& s, UntangleMove m) {
    auto surf = untangle_surfaces(s, m);
    m.d_equals_prev = surf.g_d == s[m.p - 1];
    m.e_equals_next = surf.g_e == s[m.p + 1];
    return m;
}

// ---------------------------------------------------------------------------
// Underlying splitting

struct UnderlyingResult {
    AbstractSplitting splitting;
    bool degenerate = false;  // no thick level survives
};

namespace detail {

inline AbstractSurface strip_spheres(const AbstractSurface& f) {
    std::vector<SurfaceComponent> keep;
    for (const auto& c : f.components())
        if (!c.is_sphere()) keep.push_back({c.closed_chi, 0});
    std::sort(keep.begin(), keep.end());
    return AbstractSurface(std::move(keep));
}

}  // namespace detail

/// Drops sphere components and punctures, merges consecutive equal levels, then keeps the
/// longest subsequence from the first level that alternates thin < thick > thin in c.
/// Ties prefer ending at the final level, then the lexicographically least index list.
inline UnderlyingResult underlying_splitting(const AbstractSplitting& s) {
    std::vector<AbstractSurface> merged;
    for (const auto& level : s.levels()) {
        auto f = detail::strip_spheres(level);
        if (merged.empty() || !(merged.back() == f)) merged.push_back(std::move(f));
    }
    const std::size_t n = merged.size();
    std::vector<long long> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = c_surface(merged[i]);

    // best[i][r]: (length, ends at last) of the best chain starting at i in role r (0 thin,
    // 1 thick) that ends on a thin level.
    using Score = std::pair<std::size_t, bool>;
    const Score none{0, false};
    std::vector<std::array<Score, 2>> best(n, {none, none});
    std::vector<std::array<std::size_t, 2>> next(n, {n, n});
    for (std::size_t i = n; i-- > 0;) {
        for (int r = 0; r < 2; ++r) {
            Score b = r == 0 ? Score{1, i + 1 == n} : none;
            std::size_t nx = n;
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool ok = r == 0 ? c[j] > c[i] : c[j] < c[i];
                const auto& sub = best[j][1 - r];
                if (!ok || sub.first == 0) continue;
                const Score cand{sub.first + 1, sub.second};
                if (cand > b) {
                    b = cand;
                    nx = j;
                }
            }
            best[i][static_cast<std::size_t>(r)] = b;
            next[i][static_cast<std::size_t>(r)] = nx;
        }
    }
    std::vector<AbstractSurface> out;
    for (std::size_t i = 0, r = 0; i < n; i = next[i][r], r = 1 - r) out.push_back(merged[i]);
    UnderlyingResult res{AbstractSplitting(std::move(out)), false};
    res.degenerate = res.splitting.thick_count() == 0;
    return res;
}

// ---------------------------------------------------------------------------
// Search for a minimal reachable splitting

struct MoveRecord {
    enum class Kind { Compress, Untangle } kind = Kind::Compress;
    std::size_t level = 0;
    CompressionMove d;
    std::optional<CompressionMove> e;  // untangle only
    int case_number = 0;               // untangle only
};

struct SearchResult {
    AbstractSplitting best;
    ComplexityVector best_complexity;
    std::vector<MoveRecord> trace;  // from the input to `best`
    bool certified = false;         // false: budget exhausted first
    std::size_t expanded = 0;
};

inline std::string splitting_key(const AbstractSplitting& s) {
    std::string k;
    for (const auto& level : s.levels()) {
        k += '[';
        for (const auto& c : level.sorted()) k += std::to_string(c.closed_chi) + ':' + std::to_string(c.punctures) + ',';
        k += ']';
    }
    return k;
}

/// Every single move from `s`, each paired with its result, in a fixed order.
inline std::vector<std::pair<MoveRecord, AbstractSplitting>> successor_moves(const AbstractSplitting& s, bool relative) {
    std::vector<std::pair<MoveRecord, AbstractSplitting>> out;
    for (std::size_t p = 1; p < s.size(); p += 2) {
        const auto moves = legal_compressions(s[p], relative);
        for (const auto& m : moves) {
            auto lv = s.levels();
            lv[p] = compress(s[p], m);
            out.push_back({MoveRecord{MoveRecord::Kind::Compress, p, m, std::nullopt, 0}, AbstractSplitting(std::move(lv))});
        }
        for (const auto& d : moves) {
            for (const auto& e : moves) {
                UntangleMove um{p, d, e, std::nullopt, false, false};
                if (untangle_surfaces_problem(s, um)) continue;
                um = with_computed_flags(s, um);
                auto r = untangle_step(s, um);
                out.push_back({MoveRecord{MoveRecord::Kind::Untangle, p, d, e, r.case_number}, std::move(r.splitting)});
            }
        }
    }
    return out;
}

/// Breadth-first search over compressions and untangling steps. The budget caps the number
/// of expanded states; every move strictly lowers the complexity, so an unbounded search
/// always finishes.
inline SearchResult is_minimal_reachable(const AbstractSplitting& start, std::size_t budget, bool relative = false) {
    struct Node {
        AbstractSplitting s;
        std::size_t parent;
        MoveRecord move;
    };
    std::vector<Node> nodes{{start, 0, {}}};
    std::unordered_map<std::string, std::size_t> seen{{splitting_key(start), 0}};
    std::deque<std::size_t> queue{0};
    std::size_t best = 0;
    auto best_c = splitting_complexity(start, relative);
    SearchResult res;
    while (!queue.empty()) {
        if (res.expanded >= budget) break;
        const std::size_t cur = queue.front();
        queue.pop_front();
        ++res.expanded;
        for (auto& [move, next] : successor_moves(nodes[cur].s, relative)) {
            auto key = splitting_key(next);
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), nodes.size());
            auto c = splitting_complexity(next, relative);
            if (c < best_c) {
                best_c = c;
                best = nodes.size();
            }
            nodes.push_back({std::move(next), cur, move});
            queue.push_back(nodes.size() - 1);
        }
    }
    res.certified = queue.empty();
    res.best = nodes[best].s;
    res.best_complexity = best_c;
    for (std::size_t i = best; i != 0; i = nodes[i].parent) res.trace.push_back(nodes[i].move);
    std::reverse(res.trace.begin(), res.trace.end());
    return res;
}

}  // namespace normalhst
