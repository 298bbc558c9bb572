#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qq;

namespace {

DynkinQuiver a2() { return build_quiver(DynkinType::A, 2, {{1, 2}}); }

/// Nonnegative vectors of the given rank with height in [1, hmax].
std::vector<Root> orthant(int n, int hmax) {
    std::vector<Root> r;
    Root cur(n);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k > n) {
            if (!cur.is_zero()) r.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[k] = v;
            rec(k + 1, left - v);
        }
        cur[k] = 0;
    };
    rec(1, hmax);
    return r;
}

} // namespace

TEST(Objects, HammockMultisets) {
    Context a1(build_quiver(DynkinType::A, 1, {}));
    EXPECT_EQ(hammock_object(a1, {1, 1}).ms, (Multiset{{{1, 1}, 1}}));
    Context ctx(a2());
    EXPECT_EQ(hammock_object(ctx, {1, 1}).ms, (Multiset{{{1, 1}, 1}, {{2, 2}, 1}}));
}

TEST(Objects, FObjectA1) {
    Context ctx(build_quiver(DynkinType::A, 1, {}));
    Obj f = object_F(ctx, 1);
    EXPECT_EQ(f.ms, (Multiset{{{1, -1}, 1}, {{1, 1}, 1}}));
    EXPECT_TRUE(f.fun.is_zero());
    ASSERT_TRUE(f.kclass);
    EXPECT_EQ(*f.kclass, Monomial(Var::f_(1)));
}

TEST(Objects, TensorUnitAndClasses) {
    Context ctx(oracle::a4_running_quiver());
    for (int i = 1; i <= 4; ++i) {
        Obj k = object_K(ctx, i);
        EXPECT_TRUE(is_iso(ctx, tensor(unit_object(), k), k));
        ASSERT_TRUE(k.kclass);
        EXPECT_EQ(*k.kclass, frozen_class(ctx, i));
    }
    Obj a = tensor(object_H(ctx, 1), object_K(ctx, 2)), b = tensor(object_K(ctx, 2), object_H(ctx, 1));
    EXPECT_TRUE(is_iso(ctx, a, b));
}

TEST(Objects, SerreTilt) {
    Context ctx(a2());
    Obj k = object_K(ctx, 1);
    ZVertex t = ctx.tx(1);
    Obj m = serre_tilt(ctx, k, {{t, 1}});
    EXPECT_EQ(m.ms.count(t), 0u);
    EXPECT_EQ(m.ms.at(ctx.zq().serre(t)), k.ms.count(ctx.zq().serre(t)) ? k.ms.at(ctx.zq().serre(t)) + 1 : 1);
    EXPECT_EQ(m.fun.deltas.at(t), -1);
    EXPECT_FALSE(m.kclass);
    try {
        serre_tilt(ctx, k, {{{2, 10}, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotContained);
    }
}

TEST(Objects, MutationOfK1InA2) {
    Context ctx(a2());
    Obj lhs = serre_tilt(ctx, object_K(ctx, 1), {{ctx.tx(1), 1}});
    Obj rhs = tensor(object_F(ctx, 1), hammock_object(ctx, ctx.x(2)));
    EXPECT_TRUE(is_iso(ctx, lhs, rhs));
    EXPECT_GE(hom_dim_MQ(ctx, object_K(ctx, 1), lhs), 1);
    EXPECT_EQ(hom_dim_MQ(ctx, lhs, object_K(ctx, 1)), 0);
}

TEST(Objects, MutationIdentityOnWindows) {
    for (auto q : {a2(), oracle::a4_running_quiver(), orientation(DynkinType::D, 4, 5), orientation(DynkinType::D, 5, 3)}) {
        Context ctx(q);
        int h = ctx.zq().coxeter();
        for (auto& x : ctx.zq().window(-h, h)) {
            Obj lhs = serre_tilt(ctx, tensor(hammock_object(ctx, x), hammock_object(ctx, RepetitionQuiver::tau(x, -1))),
                                 {{x, 1}});
            Obj rhs = f_object(ctx, x);
            for (auto& y : ctx.zq().out_neighbors(x)) rhs = tensor(rhs, hammock_object(ctx, y));
            EXPECT_TRUE(is_iso(ctx, lhs, rhs)) << q.str() << " x=" << x.str();
        }
    }
}

TEST(Objects, OmegaRoundTrip) {
    for (auto q : {a2(), orientation(DynkinType::A, 3, 2), orientation(DynkinType::D, 4, 6)}) {
        Context ctx(q);
        for (auto& beta : orthant(q.rank(), 6)) EXPECT_EQ(omega(ctx, leading_object(ctx, beta)), beta) << beta.str();
        for (int i = 1; i <= q.rank(); ++i) EXPECT_TRUE(omega(ctx, object_K(ctx, i)).is_zero());
        EXPECT_TRUE(omega(ctx, unit_object()).is_zero());
    }
}

TEST(Objects, OmegaRejectsTilted) {
    Context ctx(a2());
    Obj m = serre_tilt(ctx, object_K(ctx, 1), {{ctx.tx(1), 1}});
    try {
        omega(ctx, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotDominant);
    }
}

TEST(Objects, AbsorbFrontierAndTiltLeading) {
    for (auto q : {a2(), oracle::a4_running_quiver(), orientation(DynkinType::D, 4, 1)}) {
        Context ctx(q);
        for (auto& beta : positive_roots(q)) {
            auto bd = beta_combinatorics(q, ctx.xi(), beta);
            for (int i : bd.supp) {
                Obj lhs = tensor(leading_object(ctx, beta), object_H(ctx, i));
                auto ab = absorb_frontier(ctx, beta, i);
                EXPECT_EQ(ab.gamma, beta - bd.dimI[i - 1]);
                Obj rhs = tensor_power(object_K(ctx, i), ab.eps);
                for (int l = 1; l <= q.rank(); ++l) rhs = tensor(rhs, tensor_power(object_H(ctx, l), ab.H_exp[l - 1]));
                rhs = tensor(rhs, leading_object(ctx, ab.gamma));
                EXPECT_TRUE(is_iso(ctx, lhs, rhs)) << q.str() << " " << beta.str() << " i=" << i;

                auto f = tilt_leading(ctx, beta, i);
                Obj tilted = serre_tilt(ctx, lhs, tilt_leading_set(ctx, beta, i));
                EXPECT_TRUE(is_iso(ctx, tilted, rebuild(ctx, f))) << q.str() << " " << beta.str() << " i=" << i;
                EXPECT_EQ(f.remainder, beta - bd.dimP[i - 1]);
            }
            try {
                Root zero_at = beta;
                int k = 0;
                for (int v = 1; v <= q.rank(); ++v)
                    if (beta[v] == 0) k = v;
                if (!k) continue;
                absorb_frontier(ctx, zero_at, k);
                ADD_FAILURE();
            } catch (const Error& e) {
                EXPECT_EQ(e.code(), Errc::NotInSupport);
            }
        }
    }
}

TEST(Objects, PositivityAlongAdmissibleTilts) {
    for (std::uint64_t m = 0; m < orientation_count(DynkinType::A, 3); ++m) {
        Context ctx(orientation(DynkinType::A, 3, m));
        for (auto& beta : positive_roots(ctx.quiver())) {
            std::vector<Obj> layer{leading_object(ctx, beta)};
            for (int depth = 0; depth < 3; ++depth) {
                std::vector<Obj> next;
                for (auto& a : layer) {
                    DefectMap d = ctx.defect(a.fun);
                    Multiset need;
                    for (int i = 1; i <= ctx.rank(); ++i) {
                        long long v = d.count(ctx.tx(i)) ? d.at(ctx.tx(i)) : 0;
                        EXPECT_GE(v, 0);
                        for (auto& [z, k] : frontier_set(ctx, i)) need[z] += int(k * v);
                    }
                    EXPECT_TRUE(contains(a.ms, need));
                    for (int i : tiltable(ctx, a)) next.push_back(serre_tilt(ctx, a, {{ctx.tx(i), 1}}));
                }
                layer = std::move(next);
            }
        }
    }
}

TEST(Objects, AnchorObject) {
    Context ctx(oracle::a4_running_quiver());
    ZVertex x = anchor_object(ctx);
    for (int i = 1; i <= 4; ++i) EXPECT_GE(ctx.dim_hom(ctx.tx(i), x), 1);
}

TEST(Objects, HomDimBound) {
    Context ctx(a2());
    Obj big = tensor_power(object_K(ctx, 1), 5);
    try {
        hom_dim_MQ(ctx, big, big);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TooLarge);
    }
}
