#pragma once

#include "qq/cluster.hpp"
#include "qq/complexes.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qq {

/// A_i = A_{i, xi(i)-1} = Y[i,xi-2] Y[i,xi] prod_{j ~ i} Y[j, xi(i)-1]^{-1}.
inline Monomial variable_A(const Context& ctx, int i) {
    int xi = ctx.xi()(i);
    Monomial m = Monomial(Var::Y_(i, xi - 2)) * Monomial(Var::Y_(i, xi));
    for (int j : ctx.quiver().neighbors(i)) m *= Monomial(Var::Y_(j, xi - 1), -1);
    return m;
}

/// Class of K_i, the image of the frozen X_i.
inline Monomial frozen_class(const Context& ctx, int i) {
    return Monomial(Var::Y_(i, ctx.xi()(i) - 2)) * Monomial(Var::Y_(i, ctx.xi()(i)));
}

inline Monomial dominant_monomial(const Context& ctx, const Root& beta) {
    auto e = leading_exponents(ctx, beta);
    return dominant_class(ctx, e.c, e.d);
}

inline LaurentPoly qchar_euler(ComplexBuilder& b, const Root& beta) {
    return euler_char(b.context(), b.build(beta), -1);
}

/// x_i -> Y[i,xi(i)], X_i -> Y[i,xi(i)-2] Y[i,xi(i)].
inline LaurentPoly cluster_to_Y(const Context& ctx, const LaurentPoly& p) {
    return p.substitute([&](const Var& v) -> std::optional<LaurentPoly> {
        if (v.kind == Var::Kind::x) return LaurentPoly(Monomial(Var::Y_(v.i, ctx.xi()(v.i))));
        if (v.kind == Var::Kind::X) return LaurentPoly(frozen_class(ctx, v.i));
        return std::nullopt;
    });
}

inline LaurentPoly qchar_cluster(const Context& ctx, const ClusterTable& t, const Root& beta) {
    Root key = beta;
    if (int i = beta.negative_simple()) key = Root(ctx.rank()), key[i] = -1;
    auto it = t.vars.find(key);
    if (it == t.vars.end()) throw Error(Errc::UnknownRoot, beta.str() + " is not an almost positive root");
    return cluster_to_Y(ctx, it->second);
}

/// Direct recursion on truncated q-characters, memoised by root.
class QcharRecursion {
public:
    explicit QcharRecursion(const Context& ctx) : ctx_(ctx) {}

    LaurentPoly operator()(const Root& beta) {
        {
            std::lock_guard<std::mutex> lock(m_);
            if (auto it = memo_.find(beta); it != memo_.end()) return it->second;
        }
        LaurentPoly r = compute(beta);
        std::lock_guard<std::mutex> lock(m_);
        memo_.emplace(beta, r);
        return r;
    }

private:
    LaurentPoly compute(const Root& beta) {
        if (beta.is_zero()) return LaurentPoly(1);
        if (int i = beta.negative_simple()) return LaurentPoly(Monomial(Var::Y_(i, ctx_.xi()(i))));
        auto bd = beta_combinatorics(ctx_.quiver(), ctx_.xi(), beta);
        int i = bd.pick;
        auto ab = absorb_frontier(ctx_, beta, i);
        auto fac = tilt_leading(ctx_, beta, i);
        Monomial hk;
        for (int k = 1; k <= ctx_.rank(); ++k) {
            hk *= Monomial(Var::Y_(k, ctx_.xi()(k)), fac.H_exp[k - 1]);
            hk *= frozen_class(ctx_, k).pow(fac.K_exp[k - 1]);
        }
        Monomial ki = frozen_class(ctx_, i).pow(ab.eps);
        for (int k = 1; k <= ctx_.rank(); ++k) ki *= Monomial(Var::Y_(k, ctx_.xi()(k)), ab.H_exp[k - 1]);
        LaurentPoly num = LaurentPoly(ki) * (*this)(ab.gamma) +
                          LaurentPoly(hk) * (*this)(fac.remainder);
        return num.divide_exact(LaurentPoly(Monomial(Var::Y_(i, ctx_.xi()(i)))));
    }

    const Context& ctx_;
    std::mutex m_;
    std::map<Root, LaurentPoly> memo_;
};

/// Exponents n with m'/m = prod A_i^{n_i}, if such exist.
inline std::optional<std::vector<int>> nakajima_exponents(const Context& ctx, const Monomial& m, const Monomial& mp) {
    const auto& q = ctx.quiver();
    int n = ctx.rank();
    Monomial r = mp / m;
    auto rk = sink_distances(q, ctx.xi());
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k + 1;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rk[a - 1] < rk[b - 1]; });
    // exponent of Y[i, xi-2] in prod A^n is n_i - sum_{i->k} n_k
    std::vector<int> e(n, 0);
    for (int i : order) {
        int v = r.exponent(Var::Y_(i, ctx.xi()(i) - 2));
        for (int k : q.succ(i)) v += e[k - 1];
        e[i - 1] = v;
    }
    Monomial prod;
    for (int i = 1; i <= n; ++i) prod *= variable_A(ctx, i).pow(e[i - 1]);
    if (!(prod == r)) return std::nullopt;
    return e;
}

inline bool nakajima_leq(const Context& ctx, const Monomial& m, const Monomial& mp) {
    auto e = nakajima_exponents(ctx, m, mp);
    return e && std::all_of(e->begin(), e->end(), [](int v) { return v >= 0; });
}

struct Extremal {
    Monomial highest, lowest;
};

inline Extremal extremal_monomials(const Context& ctx, const LaurentPoly& P) {
    if (P.is_zero()) throw Error(Errc::BadInput, "zero polynomial");
    std::vector<Monomial> ms;
    for (auto& [m, c] : P.terms()) ms.push_back(m);
    auto find = [&](bool top) -> Monomial {
        for (auto& cand : ms) {
            bool ok = true;
            for (auto& o : ms)
                if (!(top ? nakajima_leq(ctx, o, cand) : nakajima_leq(ctx, cand, o))) {
                    ok = false;
                    break;
                }
            if (ok) return cand;
        }
        throw Error(Errc::Incomparable, std::string("no unique ") + (top ? "highest" : "lowest") + " monomial");
    };
    return {find(true), find(false)};
}

struct BetaReport {
    Root beta;
    LaurentPoly euler, cluster, recursion;
    bool routes_equal = false;
    bool highest_ok = false;
    bool lowest_ok = false;
    bool positive = false;
    bool top_one = false;
    std::string error;
    bool ok() const { return error.empty() && routes_equal && highest_ok && lowest_ok && positive && top_one; }
};

inline BetaReport verify_beta(const Context& ctx, ComplexBuilder& b, QcharRecursion& rec, const ClusterTable& t,
                              const Root& beta) {
    BetaReport r;
    r.beta = beta;
    try {
        r.euler = qchar_euler(b, beta);
        r.cluster = qchar_cluster(ctx, t, beta);
        r.recursion = rec(beta);
        r.routes_equal = r.euler == r.cluster && r.cluster == r.recursion;
        Monomial mb = dominant_monomial(ctx, beta);
        auto ex = extremal_monomials(ctx, r.euler);
        r.highest_ok = ex.highest == mb;
        Monomial low = mb;
        for (int i = 1; i <= ctx.rank(); ++i) low *= variable_A(ctx, i).pow(-beta[i]);
        r.lowest_ok = ex.lowest == low;
        r.positive = r.euler.all_positive();
        auto it = r.euler.terms().find(mb);
        r.top_one = it != r.euler.terms().end() && it->second == 1;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

inline nlohmann::json poly_json(const LaurentPoly& p) {
    nlohmann::json j = nlohmann::json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        j.push_back({{"coeff", it->second}, {"mono", monomial_json(it->first)}});
    return j;
}

inline std::string poly_tsv(const LaurentPoly& p) {
    std::string s;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        s += std::to_string(it->second) + "\t" + it->first.str() + "\n";
    return s;
}

} // namespace qq
