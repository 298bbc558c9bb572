#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qq;

TEST(Repetition, ArrowsRaisePByOne) {
    RepetitionQuiver zq(oracle::a4_running_quiver());
    auto out = zq.out_neighbors({2, 0});
    EXPECT_EQ(out, (std::vector<ZVertex>{{1, 1}, {3, 1}}));
    auto in = zq.in_neighbors({2, 0});
    EXPECT_EQ(in, (std::vector<ZVertex>{{1, -1}, {3, -1}}));
}

TEST(Repetition, Tau) {
    EXPECT_EQ(RepetitionQuiver::tau({3, 1}), (ZVertex{3, -1}));
    EXPECT_EQ(RepetitionQuiver::tau({3, 1}, -2), (ZVertex{3, 5}));
}

TEST(Repetition, SectionShape) {
    RepetitionQuiver zq(oracle::a4_running_quiver());
    Section s = zq.section_through({3, -1});
    EXPECT_EQ(s.p, (std::vector<int>{1, 0, -1, 0}));
}

TEST(Repetition, SigmaSquaredIsTauToMinusH) {
    for (auto [t, n] : {std::pair{DynkinType::A, 4}, std::pair{DynkinType::A, 5}, std::pair{DynkinType::D, 4},
                        std::pair{DynkinType::D, 5}}) {
        RepetitionQuiver zq(orientation(t, n, 1));
        int h = zq.coxeter();
        for (auto& x : zq.window(-3, 3)) {
            EXPECT_EQ(zq.sigma(zq.sigma(x)), RepetitionQuiver::tau(x, -h));
            EXPECT_EQ(zq.serre(x), RepetitionQuiver::tau(zq.sigma(x)));
        }
    }
}

TEST(Repetition, NakayamaParity) {
    for (auto [t, n] : {std::pair{DynkinType::A, 2}, std::pair{DynkinType::A, 3}, std::pair{DynkinType::A, 4},
                        std::pair{DynkinType::D, 4}, std::pair{DynkinType::D, 5}}) {
        RepetitionQuiver zq(orientation(t, n, 0));
        for (int i = 1; i <= n; ++i) EXPECT_EQ(zq.eps(zq.nu(i)), floor_mod2(zq.eps(i) + zq.coxeter()));
        for (auto& x : zq.window(-4, 4)) {
            EXPECT_TRUE(zq.valid(zq.sigma(x)));
            EXPECT_TRUE(zq.valid(zq.serre(x)));
        }
    }
}

TEST(Repetition, DotWindow) {
    RepetitionQuiver zq(build_quiver(DynkinType::A, 2, {{1, 2}}));
    std::string dot = zq_dot(zq, 0, 2, {}, {{1, 1}});
    EXPECT_NE(dot.find("\"v1_1\" [label=\"(1,1)\""), std::string::npos);
    EXPECT_NE(dot.find("\"v1_1\" -> \"v2_2\""), std::string::npos);
    EXPECT_NE(dot.find("fillcolor=red"), std::string::npos);
}
