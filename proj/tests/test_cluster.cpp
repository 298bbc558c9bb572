#include "oracles.hpp"

#include <gtest/gtest.h>

#include <deque>

using namespace qq;

namespace {

DynkinQuiver a2() { return build_quiver(DynkinType::A, 2, {{1, 2}}); }

/// Breadth-first closure from an arbitrary starting seed; returns the set of
/// mutable variables met (printed form).
std::set<std::string> closure_from(const Seed& start) {
    std::set<std::string> vars;
    std::set<std::string> seen;
    std::deque<Seed> todo{start};
    auto key = [](const Seed& s) {
        std::vector<std::string> k;
        for (int i = 0; i < s.n; ++i) k.push_back(s.cluster[i].str());
        std::sort(k.begin(), k.end());
        std::string r;
        for (auto& x : k) r += x + ";";
        return r;
    };
    seen.insert(key(start));
    while (!todo.empty()) {
        Seed s = todo.front();
        todo.pop_front();
        for (int i = 0; i < s.n; ++i) vars.insert(s.cluster[i].str());
        for (int k = 1; k <= s.n; ++k) {
            Seed m = mutate(s, k);
            if (seen.insert(key(m)).second) todo.push_back(m);
        }
    }
    return vars;
}

} // namespace

TEST(Cluster, A1Seed) {
    Seed s = initial_seed(build_quiver(DynkinType::A, 1, {}));
    EXPECT_EQ(s.B, (std::vector<std::vector<int>>{{0, 1}, {-1, 0}}));
}

TEST(Cluster, A2SeedArrows) {
    Seed s = initial_seed(a2());
    // mutable (i,0) -> frozen (i,1); Q-arrow 1->2 gives (2,0)->(1,0), (2,1)->(1,1), (1,1)->(2,0)
    std::vector<std::vector<int>> want{{0, -1, 1, 0}, {1, 0, -1, 1}, {-1, 1, 0, -1}, {0, -1, 1, 0}};
    EXPECT_EQ(s.B, want);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(s.B[a][b], -s.B[b][a]);
}

TEST(Cluster, MutateA1) {
    Seed s = mutate(initial_seed(build_quiver(DynkinType::A, 1, {})), 1);
    LaurentPoly x = LaurentPoly::var(Var::x_(1)), X = LaurentPoly::var(Var::X_(1));
    EXPECT_EQ(s.cluster[0] * x, X + LaurentPoly(1));
    EXPECT_EQ(s.B[0][1], -1);
}

TEST(Cluster, MutationIsInvolution) {
    for (auto q : {a2(), oracle::a4_running_quiver(), orientation(DynkinType::D, 4, 3)}) {
        Seed s = initial_seed(q);
        for (int k = 1; k <= q.rank(); ++k) {
            Seed back = mutate(mutate(s, k), k);
            EXPECT_EQ(back.B, s.B);
            for (std::size_t c = 0; c < s.cluster.size(); ++c) EXPECT_EQ(back.cluster[c], s.cluster[c]);
        }
    }
}

TEST(Cluster, MutateFrozenRejected) {
    try {
        mutate(initial_seed(a2()), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadInput);
    }
}

TEST(Cluster, CountsAndDVectors) {
    for (auto [t, n] : {std::pair{DynkinType::A, 1}, std::pair{DynkinType::A, 2}, std::pair{DynkinType::A, 3},
                        std::pair{DynkinType::D, 4}})
        for (std::uint64_t m = 0; m < orientation_count(t, n); ++m) {
            auto q = orientation(t, n, m);
            ClusterTable tab = enumerate_cluster_variables(q);
            EXPECT_TRUE(tab.problems.empty());
            auto roots = oracle::reflection_roots(type_char(t), n);
            EXPECT_EQ(tab.vars.size(), roots.size() + std::size_t(n));
            std::set<oracle::Vec> want = roots;
            for (int i = 0; i < n; ++i) {
                oracle::Vec v(n, 0);
                v[i] = -1;
                want.insert(v);
            }
            std::set<oracle::Vec> got;
            for (auto& [d, p] : tab.vars) got.insert(d.a);
            EXPECT_EQ(got, want) << q.str();
        }
}

TEST(Cluster, Positivity) {
    for (std::uint64_t m = 0; m < orientation_count(DynkinType::A, 4); ++m)
        for (auto& [d, p] : enumerate_cluster_variables(orientation(DynkinType::A, 4, m)).vars) EXPECT_TRUE(p.all_positive());
}

TEST(Cluster, IndependentOfStartingSeed) {
    for (auto q : {a2(), build_quiver(DynkinType::A, 3, {{1, 2}, {3, 2}})}) {
        std::set<std::string> table;
        for (auto& [d, p] : enumerate_cluster_variables(q).vars) table.insert(p.str());
        for (int k = 1; k <= q.rank(); ++k) EXPECT_EQ(closure_from(mutate(initial_seed(q), k)), table);
    }
}

TEST(Cluster, DVector) {
    LaurentPoly x1 = LaurentPoly::var(Var::x_(1)), x2 = LaurentPoly::var(Var::x_(2));
    EXPECT_EQ(d_vector(x1, 2), Root({-1, 0}));
    LaurentPoly p = (x2 + LaurentPoly(1)).divide_exact(LaurentPoly(1)) * LaurentPoly(Monomial(Var::x_(1), -1));
    EXPECT_EQ(d_vector(p, 2), Root({1, 0}));
}
