#include <gtest/gtest.h>

#include <random>

#include "normalhst/hst_complexity.hpp"
#include "normalhst/selftest/acceptance.hpp"

using namespace normalhst;

namespace {

AbstractSurface surface(std::vector<SurfaceComponent> c) { return AbstractSurface(std::move(c)); }
const SurfaceComponent kSphere{2, 0}, kTorus{0, 0}, kGenus2{-2, 0};

AbstractSplitting splitting(std::vector<AbstractSurface> levels) { return AbstractSplitting(std::move(levels)); }

ComplexityVector cv(std::vector<long long> x) { return ComplexityVector(std::move(x)); }

}  // namespace

TEST(Complexity, SurfaceFormula) {
    EXPECT_EQ(c_surface(surface({kSphere})), 0);
    EXPECT_EQ(c_surface(surface({kTorus})), 4);
    EXPECT_EQ(c_surface(surface({kGenus2})), 16);
    EXPECT_EQ(c_surface(surface({{0, 3}}), true), 25);
    EXPECT_EQ(c_surface(surface({{0, 3}}), false), 4);
    EXPECT_EQ(c_surface(surface({kTorus, kGenus2})), 20);
    EXPECT_EQ(c_surface(AbstractSurface()), 0);
}

TEST(Complexity, InvalidComponentsRejected) {
    EXPECT_THROW(surface({{4, 0}}), ValidationError);
    EXPECT_THROW(surface({{-1, 0}}), ValidationError);
    EXPECT_THROW(surface({{0, -1}}), ValidationError);
}

TEST(Complexity, Compare) {
    EXPECT_EQ(compare_complexity(cv({4}), cv({4, 0})), Ordering::Less);
    EXPECT_EQ(compare_complexity(cv({16, 4}), cv({16, 3, 3})), Ordering::Greater);
    EXPECT_EQ(compare_complexity(cv({4, 4}), cv({4, 4})), Ordering::Equal);
    EXPECT_EQ(compare_complexity(cv({}), cv({0})), Ordering::Less);
}

TEST(Complexity, EntriesSortedNonIncreasing) { EXPECT_EQ(cv({3, 16, 4}).entries(), (std::vector<long long>{16, 4, 3})); }

TEST(Complexity, CompareIsTotalOrder) {
    std::mt19937_64 rng(3);
    std::vector<ComplexityVector> xs;
    for (int i = 0; i < 60; ++i) {
        std::vector<long long> e(rng() % 4);
        for (auto& x : e) x = static_cast<long long>(rng() % 4);
        xs.push_back(cv(e));
    }
    for (const auto& a : xs)
        for (const auto& b : xs) {
            const auto ab = compare_complexity(a, b), ba = compare_complexity(b, a);
            EXPECT_EQ(ab == Ordering::Equal, a == b);
            EXPECT_EQ(ab == Ordering::Less, ba == Ordering::Greater);
            for (const auto& c : xs)
                if (a < b && b < c) {
                    EXPECT_TRUE(a < c);
                }
        }
}

TEST(Splitting, Complexity) {
    EXPECT_EQ(splitting_complexity(splitting({{}, surface({kGenus2}), {}})).entries(), std::vector<long long>{16});
    const auto f = surface({kTorus});
    EXPECT_EQ(splitting_complexity(splitting({f, f, f})).entries(), std::vector<long long>{4});
    EXPECT_EQ(splitting_complexity(splitting({{}, surface({kTorus}), {}, surface({kSphere}), {}})).entries(),
              (std::vector<long long>{4, 0}));
}

TEST(Splitting, Validation) {
    EXPECT_THROW(splitting({}), ValidationError);
    EXPECT_THROW(splitting({{}, surface({kTorus})}), ValidationError);
    EXPECT_THROW(splitting({{}, {}, {}}), ValidationError);
    EXPECT_EQ(AbstractSplitting().size(), 1u);
}

TEST(Splitting, RelativeEqualsAbsoluteWithoutPunctures) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        std::vector<AbstractSurface> lv;
        const std::size_t n = 2 * (rng() % 4) + 1;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<SurfaceComponent> comps(rng() % 3 + (k % 2));
            for (auto& c : comps) c = {2 - 2 * static_cast<long long>(rng() % 4), 0};
            lv.emplace_back(std::move(comps));
        }
        const auto s = splitting(std::move(lv));
        EXPECT_EQ(splitting_complexity(s, true), splitting_complexity(s, false));
    }
}

TEST(Compress, TorusNonseparating) {
    const auto f = surface({kTorus});
    const auto g = compress(f, {0, CompressionKind::Nonseparating});
    EXPECT_EQ(g, surface({kSphere}));
    EXPECT_EQ(c_surface(f), 4);
    EXPECT_EQ(c_surface(g), 0);
}

TEST(Compress, Genus2SeparatingIntoTori) {
    const auto g = compress(surface({kGenus2}), {0, CompressionKind::Separating, 0, 0, 0});
    EXPECT_EQ(g, surface({kTorus, kTorus}));
    EXPECT_EQ(c_surface(g), 8);
}

TEST(Compress, RelativeRemovesTwoPunctures) {
    const auto f = surface({{0, 2}});
    const auto g = compress(f, {0, CompressionKind::Relative});
    EXPECT_EQ(g, surface({kTorus}));
    EXPECT_EQ(c_surface(f, true), 16);
    EXPECT_EQ(c_surface(g, true), 4);
}

TEST(Compress, EssentialityEnforced) {
    EXPECT_THROW(compress(surface({kSphere}), {0, CompressionKind::Nonseparating}), PreconditionError);
    EXPECT_THROW(compress(surface({kTorus}), {0, CompressionKind::Separating, 2, 0, 0}), PreconditionError);
    EXPECT_THROW(compress(surface({{2, 1}}), {0, CompressionKind::Relative}), PreconditionError);
    EXPECT_THROW(compress(surface({kTorus}), {1, CompressionKind::Nonseparating}), PreconditionError);
    const auto why = compress_problem(surface({kSphere}), {0, CompressionKind::Nonseparating});
    ASSERT_TRUE(why);
    EXPECT_NE(why->find("essentiality"), std::string::npos);
}

TEST(Compress, EveryLegalMoveLowersComplexity) {
    for (long long chi = 2; chi >= -8; chi -= 2)
        for (long long p = 0; p <= 5; ++p) {
            const auto f = surface({{chi, p}, kTorus});
            for (bool rel : {false, true})
                for (const auto& m : legal_compressions(f, rel)) EXPECT_LT(c_surface(compress(f, m), rel), c_surface(f, rel));
        }
}

TEST(Untangle, CaseFourCollapses) {
    const auto t = surface({kTorus});
    const auto s = splitting({t, surface({kGenus2}), t});
    UntangleMove m{1, {0, CompressionKind::Nonseparating}, {0, CompressionKind::Nonseparating}, std::nullopt, true, true};
    const auto r = untangle_step(s, m);
    EXPECT_EQ(r.case_number, 4);
    EXPECT_EQ(r.splitting.size(), 1u);
    EXPECT_EQ(r.splitting[0], surface({kSphere}));
    EXPECT_TRUE(splitting_complexity(r.splitting) < splitting_complexity(s));
}

TEST(Untangle, CaseOneInsertsLevels) {
    const auto s = splitting({{}, surface({kGenus2}), {}});
    UntangleMove m{1, {0, CompressionKind::Nonseparating}, {0, CompressionKind::Separating, 0, 0, 0}, std::nullopt, false,
                   false};
    // G_D is a torus; E cannot act on it as a genus-2 separation, so it is overridden.
    m.e_after_d = CompressionMove{0, CompressionKind::Nonseparating};
    const auto r = untangle_step(s, m);
    EXPECT_EQ(r.case_number, 1);
    EXPECT_EQ(r.splitting.size(), 5u);
    EXPECT_EQ(r.splitting[1], surface({kTorus}));
    EXPECT_EQ(r.splitting[2], surface({kSphere}));
    EXPECT_EQ(r.splitting[3], surface({kTorus, kTorus}));
    EXPECT_EQ(splitting_complexity(r.splitting).entries(), (std::vector<long long>{8, 4}));
}

TEST(Untangle, EvenIndexRejected) {
    const auto t = surface({kTorus});
    const auto s = splitting({t, surface({kGenus2}), t});
    UntangleMove m{2, {0, CompressionKind::Nonseparating}, {0, CompressionKind::Nonseparating}, std::nullopt, false, false};
    EXPECT_THROW(untangle_step(s, m), PreconditionError);
}

TEST(Untangle, InconsistentFlagsRejected) {
    const auto t = surface({kTorus});
    const auto s = splitting({t, surface({kGenus2}), t});
    UntangleMove m{1, {0, CompressionKind::Nonseparating}, {0, CompressionKind::Nonseparating}, std::nullopt, false, true};
    EXPECT_THROW(untangle_step(s, m), PreconditionError);
    EXPECT_TRUE(with_computed_flags(s, m).d_equals_prev);
}

TEST(Underlying, AllSpheresDegenerate) {
    const auto s = splitting({surface({kSphere}), surface({kSphere, {2, 3}}), surface({kSphere})});
    const auto u = underlying_splitting(s);
    EXPECT_TRUE(u.degenerate);
    EXPECT_EQ(u.splitting, AbstractSplitting());
}

TEST(Underlying, SpheresRemovedAndRepeatsMerged) {
    const auto t = surface({kTorus});
    const auto ts = surface({kTorus, kSphere});
    const auto u = underlying_splitting(splitting({{}, ts, t, ts, {}}));
    EXPECT_FALSE(u.degenerate);
    EXPECT_EQ(u.splitting, splitting({{}, t, {}}));
}

TEST(Underlying, CleanSplittingUnchanged) {
    const auto s = splitting({{}, surface({kGenus2}), surface({kTorus}), surface({kGenus2}), {}});
    EXPECT_EQ(underlying_splitting(s).splitting, s);
}

TEST(Underlying, Idempotent) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 2000; ++i) {
        const auto s = acceptance::random_splitting(rng);
        const auto once = underlying_splitting(s).splitting;
        EXPECT_EQ(underlying_splitting(once).splitting, once);
    }
}

TEST(Search, TorusReachesSphere) {
    const auto r = is_minimal_reachable(splitting({{}, surface({kTorus}), {}}), 1000);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.best_complexity.entries(), std::vector<long long>{0});
    ASSERT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.trace[0].kind, MoveRecord::Kind::Compress);
}

TEST(Search, NoMovesReturnsInput) {
    const auto s = splitting({{}, surface({kSphere}), {}});
    const auto r = is_minimal_reachable(s, 1000);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.best, s);
    EXPECT_TRUE(r.trace.empty());
}

TEST(Search, ZeroBudgetNotCertified) {
    const auto r = is_minimal_reachable(splitting({{}, surface({kGenus2}), {}}), 0);
    EXPECT_FALSE(r.certified);
    EXPECT_EQ(r.expanded, 0u);
}

TEST(Search, SuccessorsStrictlyDescend) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        const auto s = acceptance::random_splitting(rng);
        for (bool rel : {false, true}) {
            const auto c = splitting_complexity(s, rel);
            for (const auto& [move, next] : successor_moves(s, rel)) EXPECT_TRUE(splitting_complexity(next, rel) < c);
        }
    }
}

TEST(Search, TraceReplaysToBest) {
    const auto start = splitting({{}, surface({kGenus2}), {}});
    const auto r = is_minimal_reachable(start, 100000);
    EXPECT_TRUE(r.certified);
    auto cur = start;
    for (const auto& m : r.trace) {
        bool found = false;
        for (auto& [move, next] : successor_moves(cur, false)) {
            if (move.level == m.level && move.kind == m.kind && move.d == m.d && move.e == m.e) {
                cur = next;
                found = true;
                break;
            }
        }
        ASSERT_TRUE(found);
    }
    EXPECT_EQ(cur, r.best);
    EXPECT_EQ(r.best_complexity.entries(), std::vector<long long>{0});
}
