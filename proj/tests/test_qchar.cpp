#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qq;
using oracle::sum;
using oracle::Y;

namespace {

DynkinQuiver a2() { return build_quiver(DynkinType::A, 2, {{1, 2}}); }

} // namespace

TEST(Qchar, VariableA) {
    Context ctx(a2());
    EXPECT_EQ(variable_A(ctx, 1), Y({{1, -1, 1}, {1, 1, 1}, {2, 0, -1}}));
    EXPECT_EQ(variable_A(ctx, 2), Y({{2, -2, 1}, {2, 0, 1}, {1, -1, -1}}));
    Context a1(build_quiver(DynkinType::A, 1, {}));
    EXPECT_EQ(variable_A(a1, 1), Y({{1, -1, 1}, {1, 1, 1}}));
}

TEST(Qchar, DominantMonomial) {
    Context ctx(a2());
    EXPECT_EQ(dominant_monomial(ctx, Root({1, 0})), Y({{1, -1, 1}}));
    EXPECT_EQ(dominant_monomial(ctx, Root({1, 1})), Y({{2, -2, 1}}));
    EXPECT_EQ(dominant_monomial(ctx, Root({0, 1})), Y({{2, -2, 1}, {1, 1, 1}}));
}

TEST(Qchar, ClusterRouteA2) {
    Context ctx(a2());
    ClusterTable t = enumerate_cluster_variables(ctx.quiver());
    EXPECT_EQ(qchar_cluster(ctx, t, Root({1, 0})), sum({Y({{1, -1, 1}}), Y({{2, 0, 1}, {1, 1, -1}})}));
    EXPECT_EQ(qchar_cluster(ctx, t, Root({-1, 0})), sum({Y({{1, 1, 1}})}));
    try {
        qchar_cluster(ctx, t, Root({2, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnknownRoot);
    }
}

TEST(Qchar, RecursionGolden) {
    Context a1(build_quiver(DynkinType::A, 1, {}));
    QcharRecursion r1(a1);
    EXPECT_EQ(r1(Root(std::vector<int>{1})), sum({Y({{1, -1, 1}}), Y({{1, 1, -1}})}));
    Context ctx(a2());
    QcharRecursion r(ctx);
    EXPECT_EQ(r(Root({1, 0})), sum({Y({{1, -1, 1}}), Y({{2, 0, 1}, {1, 1, -1}})}));
    EXPECT_EQ(r(Root({1, 1})), sum({Y({{2, -2, 1}}), Y({{1, -1, 1}, {2, 0, -1}}), Y({{1, 1, -1}})}));
}

TEST(Qchar, ClusterToYIsMultiplicative) {
    Context ctx(oracle::a4_running_quiver());
    ClusterTable t = enumerate_cluster_variables(ctx.quiver());
    std::vector<LaurentPoly> vs;
    for (auto& [d, p] : t.vars) vs.push_back(p);
    for (std::size_t a = 0; a < vs.size(); a += 3)
        for (std::size_t b = 0; b < vs.size(); b += 4)
            EXPECT_EQ(cluster_to_Y(ctx, vs[a] * vs[b]), cluster_to_Y(ctx, vs[a]) * cluster_to_Y(ctx, vs[b]));
    for (int i = 1; i <= 4; ++i) EXPECT_EQ(cluster_to_Y(ctx, LaurentPoly::var(Var::X_(i))), LaurentPoly(frozen_class(ctx, i)));
}

TEST(Qchar, ExchangeRelationsMatchRecursion) {
    Context ctx(oracle::a4_running_quiver());
    Seed s = initial_seed(ctx.quiver());
    QcharRecursion r(ctx);
    for (int k = 1; k <= 4; ++k) {
        Seed m = mutate(s, k);
        Root d = d_vector(m.cluster[k - 1], 4);
        EXPECT_EQ(cluster_to_Y(ctx, m.cluster[k - 1]), r(d)) << d.str();
    }
}

TEST(Qchar, NakajimaOrder) {
    Context ctx(a2());
    Monomial m = Y({{1, -1, 1}});
    Monomial lower = m * variable_A(ctx, 1).inverse();
    EXPECT_TRUE(nakajima_leq(ctx, lower, m));
    EXPECT_FALSE(nakajima_leq(ctx, m, lower));
    EXPECT_TRUE(nakajima_leq(ctx, m, m));
    auto e = nakajima_exponents(ctx, lower * variable_A(ctx, 2).inverse(), m);
    ASSERT_TRUE(e);
    EXPECT_EQ(*e, (std::vector<int>{1, 1}));
    EXPECT_FALSE(nakajima_exponents(ctx, m, Y({{2, 0, 1}})));
}

TEST(Qchar, ExtremalMonomials) {
    Context ctx(a2());
    LaurentPoly p = sum({Y({{2, -2, 1}}), Y({{1, -1, 1}, {2, 0, -1}}), Y({{1, 1, -1}})});
    auto ex = extremal_monomials(ctx, p);
    EXPECT_EQ(ex.highest, Y({{2, -2, 1}}));
    EXPECT_EQ(ex.lowest, Y({{1, 1, -1}}));
    try {
        extremal_monomials(ctx, sum({Y({{1, -1, 1}}), Y({{2, 0, 1}})}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Incomparable);
    }
}

TEST(Qchar, VerifyBetaAllA3) {
    for (std::uint64_t m = 0; m < orientation_count(DynkinType::A, 3); ++m) {
        Context ctx(orientation(DynkinType::A, 3, m));
        ComplexBuilder b(ctx);
        QcharRecursion r(ctx);
        ClusterTable t = enumerate_cluster_variables(ctx.quiver());
        for (auto& beta : positive_roots(ctx.quiver())) {
            BetaReport rep = verify_beta(ctx, b, r, t, beta);
            EXPECT_TRUE(rep.ok()) << ctx.quiver().str() << " " << beta.str() << " " << rep.error;
        }
    }
}

TEST(Qchar, PolyFormats) {
    LaurentPoly p = sum({Y({{1, -1, 1}}), Y({{1, 1, -1}})});
    EXPECT_EQ(poly_json(p).size(), 2u);
    std::string t = poly_tsv(p);
    EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 2);
    EXPECT_NE(t.find("Y[1,-1]"), std::string::npos);
}
