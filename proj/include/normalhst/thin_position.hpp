#pragma once

// Morse presentations of links: births and deaths of strands read bottom to top.
//
// Strands at a regular level are numbered 0..c-1 from the left. `B i` inserts two new
// strands at slots i, i+1; `D i` joins strands i and i+1.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normalhst/errors.hpp"
#include "normalhst/hst_complexity.hpp"

namespace normalhst {

enum class EventKind { Birth, Death };

struct MorseEvent {
    EventKind kind = EventKind::Birth;
    long long position = 0;
    friend auto operator<=>(const MorseEvent&, const MorseEvent&) = default;
};

/// Why the event list is not a valid presentation, or nullopt.
inline std::optional<std::string> presentation_problem(const std::vector<MorseEvent>& events) {
    long long c = 0;
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto& ev = events[k];
        const std::string at = "event " + std::to_string(k) + ": ";
        if (ev.kind == EventKind::Birth) {
            if (ev.position < 0 || ev.position > c)
                return at + "birth position " + std::to_string(ev.position) + " outside 0.." + std::to_string(c);
            c += 2;
        } else {
            if (c < 2) return at + "death needs at least 2 strands, have " + std::to_string(c);
            if (ev.position < 0 || ev.position > c - 2)
                return at + "death position " + std::to_string(ev.position) + " outside 0.." + std::to_string(c - 2);
            c -= 2;
        }
    }
    if (c != 0) return "presentation ends with " + std::to_string(c) + " strands";
    return std::nullopt;
}

class MorsePresentation {
public:
    MorsePresentation() = default;
    explicit MorsePresentation(std::vector<MorseEvent> events) : events_(std::move(events)) {
        if (auto p = presentation_problem(events_)) throw ValidationError("invalid presentation: " + *p);
    }

    const std::vector<MorseEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    const MorseEvent& operator[](std::size_t i) const { return events_[i]; }

    std::string to_text() const {
        std::string out;
        for (const auto& e : events_) out += (e.kind == EventKind::Birth ? "B " : "D ") + std::to_string(e.position) + "\n";
        return out;
    }

    friend auto operator<=>(const MorsePresentation&, const MorsePresentation&) = default;

private:
    std::vector<MorseEvent> events_;
};

/// One event per line, `B i` or `D i`; `#` starts a comment.
inline MorsePresentation parse_presentation(std::string_view text) {
    std::vector<MorseEvent> events;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        const auto col = line.find_first_not_of(" \t") + 1;
        if (kind != "B" && kind != "D") throw ParseError("expected B or D, got '" + kind + "'", line_no, col);
        long long pos = 0;
        if (!(ls >> pos)) throw ParseError("missing or malformed position", line_no, col + kind.size() + 1);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no, line.find(extra) + 1);
        events.push_back({kind == "B" ? EventKind::Birth : EventKind::Death, pos});
    }
    return MorsePresentation(std::move(events));
}

struct WidthProfile {
    std::vector<long long> counts;  // strands in each gap between consecutive events
    long long width = 0;
    std::vector<std::size_t> thick;  // strict local maxima (0 beyond the ends)
    std::vector<std::size_t> thin;   // strict interior local minima
    bool touches_zero = false;       // an interior gap has no strands
};

inline WidthProfile width(const MorsePresentation& p) {
    WidthProfile w;
    long long c = 0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        c += p[k].kind == EventKind::Birth ? 2 : -2;
        w.counts.push_back(c);
    }
    const std::size_t n = w.counts.size();
    auto at = [&](std::ptrdiff_t i) { return i < 0 || i >= static_cast<std::ptrdiff_t>(n) ? 0LL : w.counts[static_cast<std::size_t>(i)]; };
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::ptrdiff_t>(i);
        w.width += w.counts[i];
        if (at(j) > at(j - 1) && at(j) > at(j + 1)) w.thick.push_back(i);
        if (i > 0 && i + 1 < n && at(j) < at(j - 1) && at(j) < at(j + 1)) w.thin.push_back(i);
        if (w.counts[i] == 0) w.touches_zero = true;
    }
    return w;
}

/// Thin and thick levels become punctured spheres, bracketed by empty levels.
inline AbstractSplitting induced_splitting(const MorsePresentation& p) {
    const auto w = width(p);
    if (w.thick.empty()) throw PreconditionError("presentation has no thick level");
    std::vector<std::size_t> extremes;
    std::merge(w.thick.begin(), w.thick.end(), w.thin.begin(), w.thin.end(), std::back_inserter(extremes));
    std::vector<AbstractSurface> levels{AbstractSurface()};
    for (auto i : extremes) levels.push_back(sphere_with_punctures(w.counts[i]));
    levels.emplace_back();
    return AbstractSplitting(std::move(levels));
}

struct ExchangeResult {
    MorsePresentation presentation;
    long long width_before = 0;
    long long width_after = 0;
    long long decrease() const { return width_before - width_after; }
};

/// Moves the death at index `death` below the birth immediately before it. The birth's
/// new strands and the strands the death joins must occupy disjoint slots.
inline ExchangeResult exchange_move(const MorsePresentation& p, std::size_t death, std::size_t birth) {
    if (death >= p.size() || birth >= p.size()) throw PreconditionError("event index out of range");
    if (death != birth + 1) throw PreconditionError("exchange needs a birth immediately followed by a death");
    if (p[birth].kind != EventKind::Birth || p[death].kind != EventKind::Death)
        throw PreconditionError("exchange needs a birth immediately followed by a death");
    const long long i = p[birth].position, j = p[death].position;
    if (j + 1 >= i && j <= i + 1) throw PreconditionError("events are interleaved: death joins a strand just born");
    MorseEvent d{EventKind::Death, j >= i + 2 ? j - 2 : j};
    MorseEvent b{EventKind::Birth, j >= i + 2 ? i : i - 2};
    auto ev = p.events();
    ev[birth] = d;
    ev[death] = b;
    ExchangeResult r{MorsePresentation(std::move(ev)), width(p).width, 0};
    r.width_after = width(r.presentation).width;
    if (r.width_after >= r.width_before) throw std::logic_error("exchange move did not reduce width");
    return r;
}

/// Birth indices b such that (b, b+1) is a legal exchange.
inline std::vector<std::size_t> legal_exchanges(const MorsePresentation& p) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b + 1 < p.size(); ++b) {
        if (p[b].kind != EventKind::Birth || p[b + 1].kind != EventKind::Death) continue;
        const long long i = p[b].position, j = p[b + 1].position;
        if (j + 1 >= i && j <= i + 1) continue;
        out.push_back(b);
    }
    return out;
}

inline constexpr std::size_t kMaxSearchEvents = 16;

/// Every valid presentation with exactly `births` births and as many deaths.
/// Calls `visit` for each; stops early when it returns false.
template <class Visit>
bool for_each_presentation(std::size_t births, Visit&& visit) {
    std::vector<MorseEvent> ev;
    auto rec = [&](auto&& self, std::size_t b, std::size_t d, long long c) -> bool {
        if (b == births && d == births) return visit(MorsePresentation(ev));
        if (b < births) {
            for (long long i = 0; i <= c; ++i) {
                ev.push_back({EventKind::Birth, i});
                const bool go = self(self, b + 1, d, c + 2);
                ev.pop_back();
                if (!go) return false;
            }
        }
        if (d < b) {
            for (long long i = 0; i + 2 <= c; ++i) {
                ev.push_back({EventKind::Death, i});
                const bool go = self(self, b, d + 1, c - 2);
                ev.pop_back();
                if (!go) return false;
            }
        }
        return true;
    };
    return rec(rec, 0, 0, 0);
}

enum class ThinSearchMode { Exchange, AllSequences };

struct ThinSearchOptions {
    ThinSearchMode mode = ThinSearchMode::Exchange;
    bool single_component = false;  // reject interior gaps with no strands
    std::size_t budget = 100'000;   // presentations examined
};

struct ThinSearchResult {
    bool found = false;  // some examined presentation met the flag
    MorsePresentation witness;
    long long min_width = 0;
    bool certified = false;
    std::size_t explored = 0;
};

/// Minimum width among presentations reachable by exchange moves, or among all
/// presentations with the same number of births and deaths.
inline ThinSearchResult thin_position_search(const MorsePresentation& p, const ThinSearchOptions& opt = {}) {
    if (p.size() > kMaxSearchEvents)
        throw ResourceError("presentation has " + std::to_string(p.size()) + " events; search ceiling is " +
                            std::to_string(kMaxSearchEvents));
    ThinSearchResult r;
    auto consider = [&](const MorsePresentation& q) {
        ++r.explored;
        const auto w = width(q);
        if (opt.single_component && w.touches_zero) return;
        if (!r.found || w.width < r.min_width) {
            r.found = true;
            r.min_width = w.width;
            r.witness = q;
        }
    };
    if (opt.mode == ThinSearchMode::AllSequences) {
        r.certified = for_each_presentation(p.size() / 2, [&](const MorsePresentation& q) {
            if (r.explored >= opt.budget) return false;
            consider(q);
            return true;
        });
        return r;
    }
    std::set<MorsePresentation> seen{p};
    std::deque<MorsePresentation> queue{p};
    while (!queue.empty() && r.explored < opt.budget) {
        auto cur = std::move(queue.front());
        queue.pop_front();
        consider(cur);
        for (auto b : legal_exchanges(cur)) {
            auto next = exchange_move(cur, b + 1, b).presentation;
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    r.certified = queue.empty();
    return r;
}

}  // namespace normalhst
