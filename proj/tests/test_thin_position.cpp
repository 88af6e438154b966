#include <gtest/gtest.h>

#include "normalhst/thin_position.hpp"

using namespace normalhst;

namespace {

MorsePresentation pres(std::string_view text) {
    std::string lines;
    for (char ch : text) lines += ch == ',' ? '\n' : ch;
    return parse_presentation(lines);
}

AbstractSplitting punctured(std::vector<long long> ps) {
    std::vector<AbstractSurface> lv{AbstractSurface()};
    for (auto p : ps) lv.push_back(sphere_with_punctures(p));
    lv.emplace_back();
    return AbstractSplitting(std::move(lv));
}

MorsePresentation stack(std::size_t k) {
    std::string t;
    for (std::size_t i = 0; i < k; ++i) t += "B 0,D 0,";
    return pres(t);
}

}  // namespace

TEST(ThinParse, RejectsMalformedInput) {
    EXPECT_THROW(parse_presentation("X 0\n"), ParseError);
    EXPECT_THROW(parse_presentation("B\n"), ParseError);
    EXPECT_THROW(parse_presentation("B 0 1\n"), ParseError);
    EXPECT_THROW(parse_presentation("B 0\n"), ValidationError);
    EXPECT_THROW(parse_presentation("D 0\n"), ValidationError);
    EXPECT_THROW(parse_presentation("B 1\nD 0\n"), ValidationError);
}

TEST(ThinParse, TextRoundTrip) {
    const auto p = pres("B 0,B 2,D 0,B 0,D 0,D 0");
    EXPECT_EQ(parse_presentation(p.to_text()), p);
    EXPECT_EQ(parse_presentation("# comment\nB 0 # birth\n\nD 0\n"), pres("B 0,D 0"));
}

TEST(ThinWidth, SingleUnknot) {
    const auto w = width(pres("B 0,D 0"));
    EXPECT_EQ(w.counts, std::vector<long long>{2});
    EXPECT_EQ(w.width, 2);
    EXPECT_EQ(w.thick.size(), 1u);
    EXPECT_FALSE(w.touches_zero);
}

TEST(ThinWidth, BridgeShape) {
    const auto w = width(pres("B 0,B 0,D 0,D 0"));
    EXPECT_EQ(w.counts, (std::vector<long long>{2, 4, 2}));
    EXPECT_EQ(w.width, 8);
    EXPECT_EQ(w.thick, std::vector<std::size_t>{1});
    EXPECT_TRUE(w.thin.empty());
}

TEST(ThinWidth, StackedComponentsFlagged) {
    const auto w = width(pres("B 0,D 0,B 0,D 0"));
    EXPECT_EQ(w.counts, (std::vector<long long>{2, 0, 2}));
    EXPECT_EQ(w.width, 4);
    EXPECT_TRUE(w.touches_zero);
}

TEST(ThinSplit, SingleUnknot) { EXPECT_EQ(induced_splitting(pres("B 0,D 0")), punctured({2})); }

TEST(ThinSplit, TwoThickLevels) {
    const auto p = pres("B 0,B 2,D 0,B 0,D 0,D 0");
    EXPECT_EQ(width(p).counts, (std::vector<long long>{2, 4, 2, 4, 2}));
    EXPECT_EQ(induced_splitting(p), punctured({4, 2, 4}));
}

TEST(ThinSplit, BridgePosition) { EXPECT_EQ(induced_splitting(pres("B 0,B 0,D 0,D 0")), punctured({4})); }

TEST(ThinSplit, EmptyPresentationHasNoThickLevel) {
    EXPECT_THROW(induced_splitting(MorsePresentation()), PreconditionError);
}

TEST(ThinExchange, LowersWidthByFour) {
    const auto p = pres("B 0,B 2,D 0,B 0,D 0,D 0");
    EXPECT_EQ(legal_exchanges(p), std::vector<std::size_t>{1});
    const auto r = exchange_move(p, 2, 1);
    EXPECT_EQ(r.width_before, 14);
    EXPECT_EQ(r.width_after, 10);
    EXPECT_EQ(r.presentation, pres("B 0,D 0,B 0,B 0,D 0,D 0"));
}

TEST(ThinExchange, InterleavedRejected) {
    // The death joins one of the strands just born.
    EXPECT_THROW(exchange_move(pres("B 0,B 1,D 2,D 0"), 2, 1), PreconditionError);
    EXPECT_THROW(exchange_move(pres("B 0,B 0,D 0,D 0"), 2, 1), PreconditionError);
}

TEST(ThinExchange, NoPairInSingleUnknot) {
    const auto p = pres("B 0,D 0");
    EXPECT_TRUE(legal_exchanges(p).empty());
    EXPECT_THROW(exchange_move(p, 1, 0), PreconditionError);
    EXPECT_THROW(exchange_move(p, 0, 1), PreconditionError);
}

TEST(ThinExchange, EveryLegalExchangeLowersWidthUpToEightEvents) {
    std::size_t moves = 0;
    for (std::size_t b = 1; b <= 4; ++b)
        for_each_presentation(b, [&](const MorsePresentation& p) {
            for (auto i : legal_exchanges(p)) {
                const auto r = exchange_move(p, i + 1, i);
                EXPECT_EQ(r.decrease(), 4);
                ++moves;
            }
            return true;
        });
    EXPECT_GT(moves, 0u);
}

TEST(ThinEnumerate, SmallCounts) {
    std::vector<std::size_t> counts;
    for (std::size_t b = 1; b <= 3; ++b) {
        std::size_t n = 0;
        for_each_presentation(b, [&](const MorsePresentation&) {
            ++n;
            return true;
        });
        counts.push_back(n);
    }
    EXPECT_EQ(counts[0], 1u);
    // BBDD: 1 * 3 * 3 * 1; BDBD: 1.
    EXPECT_EQ(counts[1], 10u);
}

TEST(ThinSearch, TwoBirthsUnconstrainedAndSingleComponent) {
    const auto p = pres("B 0,B 0,D 0,D 0");
    ThinSearchOptions all{ThinSearchMode::AllSequences, false, 100000};
    auto r = thin_position_search(p, all);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.min_width, 4);
    EXPECT_EQ(r.witness, pres("B 0,D 0,B 0,D 0"));
    all.single_component = true;
    r = thin_position_search(p, all);
    EXPECT_EQ(r.min_width, 8);
}

TEST(ThinSearch, OneBirth) {
    const auto r = thin_position_search(pres("B 0,D 0"), {ThinSearchMode::AllSequences, false, 100});
    EXPECT_EQ(r.min_width, 2);
}

TEST(ThinSearch, MonotoneStack) {
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto r = thin_position_search(stack(k), {ThinSearchMode::AllSequences, false, 1'000'000});
        EXPECT_TRUE(r.certified);
        EXPECT_EQ(r.min_width, static_cast<long long>(2 * k));
    }
}

TEST(ThinSearch, ExchangeModeReachesThinnerPresentation) {
    const auto r = thin_position_search(pres("B 0,B 2,D 0,B 0,D 0,D 0"), {});
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.min_width, 10);
}

TEST(ThinSearch, BudgetAndCeiling) {
    const auto r = thin_position_search(pres("B 0,B 0,D 0,D 0"), {ThinSearchMode::AllSequences, false, 3});
    EXPECT_FALSE(r.certified);
    EXPECT_EQ(r.explored, 3u);
    EXPECT_THROW(thin_position_search(stack(9), {}), ResourceError);
}
