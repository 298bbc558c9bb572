#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qq;

TEST(BuildQuiver, SmallestCase) {
    auto q = build_quiver(DynkinType::A, 2, {{1, 2}});
    EXPECT_EQ(q.sinks(), std::vector<int>{2});
    EXPECT_EQ(q.sources(), std::vector<int>{1});
}

TEST(BuildQuiver, RunningA4Quiver) {
    auto q = oracle::a4_running_quiver();
    EXPECT_EQ(q.sinks(), std::vector<int>{3});
    EXPECT_TRUE(q.has_path(1, 3));
    EXPECT_FALSE(q.has_path(4, 1));
}

TEST(BuildQuiver, RejectsCycle) {
    try {
        build_quiver(DynkinType::A, 3, {{1, 2}, {2, 3}, {3, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::WrongShape);
    }
}

TEST(BuildQuiver, RejectsReorientation) {
    try {
        build_quiver(DynkinType::A, 3, {{1, 2}, {2, 1}, {2, 3}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Reorientation);
    }
}

TEST(BuildQuiver, DLabellingForksAtNMinus2) {
    auto q = orientation(DynkinType::D, 5, 0);
    EXPECT_EQ(q.neighbors(3), (std::vector<int>{2, 4, 5}));
}

TEST(DefaultHeight, A2) {
    auto q = build_quiver(DynkinType::A, 2, {{1, 2}});
    EXPECT_EQ(default_height(q, std::pair{1, 1}).xi, (std::vector<int>{1, 0}));
}

TEST(DefaultHeight, A4Running) {
    EXPECT_EQ(default_height(oracle::a4_running_quiver(), std::pair{1, 1}).xi, (std::vector<int>{1, 0, -1, 0}));
}

TEST(DefaultHeight, ParityViolation) {
    auto q = build_quiver(DynkinType::A, 2, {{1, 2}});
    try {
        default_height(q, std::pair{1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ParityViolation);
    }
}

TEST(DefaultHeight, AdaptedOnEveryOrientation) {
    for (auto [t, n] : {std::pair{DynkinType::A, 5}, std::pair{DynkinType::D, 5}})
        for (std::uint64_t m = 0; m < orientation_count(t, n); ++m) {
            auto q = orientation(t, n, m);
            auto xi = default_height(q);
            for (auto [s, d] : q.arrows()) EXPECT_EQ(xi(d), xi(s) - 1);
        }
}

TEST(PositiveRoots, MatchReflectionClosure) {
    for (auto [c, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'D', 4},
                                                          {'D', 5}, {'D', 6}}) {
        auto q = orientation(c == 'A' ? DynkinType::A : DynkinType::D, n, 0);
        std::set<oracle::Vec> mine;
        for (auto& r : positive_roots(q)) mine.insert(r.a);
        EXPECT_EQ(mine, oracle::reflection_roots(c, n)) << c << n;
        EXPECT_EQ(int(mine.size()), c == 'A' ? n * (n + 1) / 2 : n * (n - 1));
    }
}

TEST(PositiveRoots, SortedByHeightThenLex) {
    auto roots = positive_roots(orientation(DynkinType::D, 4, 3));
    EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end()));
    EXPECT_EQ(roots.size(), 12u);
}

TEST(BetaCombinatorics, A2Sum) {
    auto q = build_quiver(DynkinType::A, 2, {{1, 2}});
    auto xi = default_height(q);
    auto d = beta_combinatorics(q, xi, Root({1, 1}));
    EXPECT_EQ(d.M, (std::vector<int>{1, 2}));
    EXPECT_EQ(d.r_beta, (std::vector<int>{1, 0}));
    EXPECT_EQ(d.I, std::vector<int>{2});
    EXPECT_EQ(d.dimP[0], Root({1, 1}));
    EXPECT_EQ(d.dimI[1], Root({1, 1}));
}

TEST(BetaCombinatorics, A1) {
    auto q = build_quiver(DynkinType::A, 1, {});
    auto d = beta_combinatorics(q, default_height(q), Root(std::vector<int>{1}));
    EXPECT_EQ(d.I, std::vector<int>{1});
    EXPECT_EQ(d.out[0], std::vector<int>{1});
    EXPECT_EQ(d.dimP[0], Root(std::vector<int>{1}));
}

TEST(BetaCombinatorics, EmptySupport) {
    auto q = build_quiver(DynkinType::A, 2, {{1, 2}});
    try {
        beta_combinatorics(q, default_height(q), Root(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptySupport);
    }
}

TEST(BetaCombinatorics, SinksHaveZeroR) {
    for (std::uint64_t m = 0; m < orientation_count(DynkinType::D, 5); ++m) {
        auto q = orientation(DynkinType::D, 5, m);
        auto r = sink_distances(q, default_height(q));
        for (int i = 1; i <= 5; ++i) EXPECT_EQ(r[i - 1] == 0, q.is_sink(i));
        for (auto [s, t] : q.arrows()) EXPECT_LT(r[t - 1], r[s - 1]);
    }
}

TEST(BetaCombinatorics, NestedIndexSets) {
    for (std::uint64_t m = 0; m < orientation_count(DynkinType::A, 4); ++m) {
        auto q = orientation(DynkinType::A, 4, m);
        auto xi = default_height(q);
        for (auto& beta : positive_roots(q)) {
            auto d = beta_combinatorics(q, xi, beta);
            ASSERT_FALSE(d.I.empty());
            for (int i : d.I) EXPECT_NE(std::find(d.M.begin(), d.M.end(), i), d.M.end());
            for (int i : d.M) EXPECT_GT(beta[i], 0);
            for (int i : d.supp) EXPECT_GE(d.dimP[i - 1].height(), 1);
        }
    }
}
