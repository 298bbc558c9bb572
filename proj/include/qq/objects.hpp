#pragma once

#include "qq/hammock.hpp"
#include "qq/laurent.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qq {

using Multiset = std::map<ZVertex, int>;

inline int multiset_size(const Multiset& m) {
    int s = 0;
    for (auto& [v, k] : m) s += k;
    return s;
}

inline bool contains(const Multiset& big, const Multiset& small) {
    for (auto& [v, k] : small) {
        auto it = big.find(v);
        if (k > 0 && (it == big.end() || it->second < k)) return false;
    }
    return true;
}

/// Indecomposable object (X, h) with its tracked Grothendieck class.
struct Obj {
    Multiset ms;
    QFun fun;
    std::optional<Monomial> kclass = Monomial{};
};

inline Obj unit_object() { return {}; }

inline Obj tensor(const Obj& a, const Obj& b) {
    Obj r = a;
    for (auto& [v, k] : b.ms) r.ms[v] += k;
    r.fun += b.fun;
    if (a.kclass && b.kclass) r.kclass = *a.kclass * *b.kclass;
    else r.kclass.reset();
    return r;
}

inline Obj tensor_power(const Obj& a, int k) {
    Obj r = unit_object();
    for (int t = 0; t < k; ++t) r = tensor(r, a);
    return r;
}

inline Obj hammock_object(const Context& ctx, const ZVertex& x) {
    return {ctx.hammock_multiset(x), QFun::hammock(x), Monomial(Var::Y_(x.i, x.p))};
}

/// F(x) = ({Sx, Sigma x}, 0); F(tau x_i) has class f_i, other F's a symbolic class.
inline Obj f_object(const Context& ctx, const ZVertex& x) {
    Obj r;
    r.ms[ctx.zq().serre(x)] += 1;
    r.ms[ctx.zq().sigma(x)] += 1;
    r.kclass = x == ctx.tx(x.i) ? Monomial(Var::f_(x.i)) : Monomial(Var::F_(x.i, x.p));
    return r;
}

inline Obj object_H(const Context& ctx, int i) { return hammock_object(ctx, ctx.x(i)); }
inline Obj object_K(const Context& ctx, int i) {
    return tensor(hammock_object(ctx, ctx.tx(i)), hammock_object(ctx, ctx.x(i)));
}
inline Obj object_F(const Context& ctx, int i) { return f_object(ctx, ctx.tx(i)); }

/// Replace every z in Z by Sz and subtract delta_z.
inline Obj serre_tilt(const Context& ctx, const Obj& a, const Multiset& Z) {
    if (!contains(a.ms, Z)) throw Error(Errc::NotContained, "tilting set is not a sub-multiset");
    Obj r = a;
    for (auto& [z, k] : Z) {
        if (k <= 0) continue;
        if ((r.ms[z] -= k) == 0) r.ms.erase(z);
        r.ms[ctx.zq().serre(z)] += k;
        r.fun -= QFun::delta(z, k);
    }
    if (!Z.empty()) r.kclass.reset();
    return r;
}

inline bool is_iso(const Context& ctx, const Obj& a, const Obj& b) {
    return a.ms == b.ms && ctx.equal(a.fun, b.fun);
}

/// Exponents c_i, d_i of a dominant object; throws NotDominant otherwise.
struct DominantExponents {
    std::vector<int> c, d;
};

inline DominantExponents dominant_exponents(const Context& ctx, const Obj& a) {
    int n = ctx.rank();
    DominantExponents e{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    if (!a.fun.deltas.empty()) throw Error(Errc::NotDominant, "object carries delta corrections");
    for (auto& [x, c] : a.fun.gens) {
        if (c < 0) throw Error(Errc::NotDominant, "negative hammock coefficient");
        if (x == ctx.tx(x.i)) e.c[x.i - 1] = static_cast<int>(c);
        else if (x == ctx.x(x.i)) e.d[x.i - 1] = static_cast<int>(c);
        else throw Error(Errc::NotDominant, "hammock generator off the frontier at " + x.str());
    }
    return e;
}

/// a_i = max(0, c_i - d_i + sum_{i->j} a_j), processed by increasing r_i.
inline Root omega_from_exponents(const Context& ctx, const std::vector<int>& c, const std::vector<int>& d) {
    const auto& q = ctx.quiver();
    int n = ctx.rank();
    auto r = sink_distances(q, ctx.xi());
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k + 1;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r[a - 1] < r[b - 1]; });
    Root w(n);
    std::vector<char> done(n, 0);
    for (int i : order) {
        int s = c[i - 1] - d[i - 1];
        for (int j : q.succ(i)) {
            if (!done[j - 1] || r[j - 1] >= r[i - 1])
                throw Error(Errc::BadInput, "r is not decreasing along an arrow");
            s += w[j];
        }
        w[i] = std::max(0, s);
        done[i - 1] = 1;
    }
    return w;
}

inline Root omega(const Context& ctx, const Obj& a) {
    auto e = dominant_exponents(ctx, a);
    return omega_from_exponents(ctx, e.c, e.d);
}

inline std::vector<int> supp(const Context& ctx, const Obj& a) { return omega(ctx, a).support(); }

/// Sigma(X,h) = { i : tau x_i in X and defect(tau x_i) > 0 }.
inline std::vector<int> tiltable(const Context& ctx, const Obj& a) {
    DefectMap d = ctx.defect(a.fun);
    std::vector<int> r;
    for (int i = 1; i <= ctx.rank(); ++i) {
        ZVertex t = ctx.tx(i);
        auto it = d.find(t);
        if (a.ms.count(t) && it != d.end() && it->second > 0) r.push_back(i);
    }
    return r;
}

/// b_i = a_i - sum_{i->j} a_j, c = b_+, d = b_-.
inline DominantExponents leading_exponents(const Context& ctx, const Root& beta) {
    int n = ctx.rank();
    DominantExponents e{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    for (int i = 1; i <= n; ++i) {
        int b = beta[i];
        for (int j : ctx.quiver().succ(i)) b -= beta[j];
        e.c[i - 1] = std::max(b, 0);
        e.d[i - 1] = std::max(-b, 0);
    }
    return e;
}

inline Obj dominant_object(const Context& ctx, const std::vector<int>& c, const std::vector<int>& d) {
    Obj r = unit_object();
    for (int i = 1; i <= ctx.rank(); ++i) {
        if (c[i - 1]) r = tensor(r, tensor_power(hammock_object(ctx, ctx.tx(i)), c[i - 1]));
        if (d[i - 1]) r = tensor(r, tensor_power(hammock_object(ctx, ctx.x(i)), d[i - 1]));
    }
    return r;
}

/// Y[beta].
inline Obj leading_object(const Context& ctx, const Root& beta) {
    if (!beta.is_nonnegative()) throw Error(Errc::BadInput, "beta outside the positive orthant");
    auto e = leading_exponents(ctx, beta);
    return dominant_object(ctx, e.c, e.d);
}

/// Class of the dominant object with exponents (c, d).
inline Monomial dominant_class(const Context& ctx, const std::vector<int>& c, const std::vector<int>& d) {
    Monomial m;
    for (int i = 1; i <= ctx.rank(); ++i) {
        m *= Monomial(Var::Y_(i, ctx.xi()(i) - 2), c[i - 1]);
        m *= Monomial(Var::Y_(i, ctx.xi()(i)), d[i - 1]);
    }
    return m;
}

struct Factorization {
    std::vector<int> F_list;
    std::vector<int> K_exp;
    std::vector<int> H_exp;
    Root remainder;
};

/// Object F(tau x_j)^{F} (x) K^{K} (x) Y(x_l)^{H} (x) Y[remainder].
inline Obj rebuild(const Context& ctx, const Factorization& f) {
    Obj r = unit_object();
    for (int j : f.F_list) r = tensor(r, object_F(ctx, j));
    for (int i = 1; i <= ctx.rank(); ++i) {
        if (!f.K_exp.empty() && f.K_exp[i - 1]) r = tensor(r, tensor_power(object_K(ctx, i), f.K_exp[i - 1]));
        if (!f.H_exp.empty() && f.H_exp[i - 1]) r = tensor(r, tensor_power(object_H(ctx, i), f.H_exp[i - 1]));
    }
    return tensor(r, leading_object(ctx, f.remainder));
}

/// K_exp[i] = min(c_i, d_i), remainder = omega, and H_exp the frontier
/// factors Y(x_l) lost where omega clips at zero.
inline Factorization factor_exponents(const Context& ctx, const std::vector<int>& c, const std::vector<int>& d) {
    int n = ctx.rank();
    Factorization f;
    f.K_exp.assign(n, 0);
    f.H_exp.assign(n, 0);
    for (int i = 0; i < n; ++i) f.K_exp[i] = std::min(c[i], d[i]);
    f.remainder = omega_from_exponents(ctx, c, d);
    auto lead = leading_exponents(ctx, f.remainder);
    for (int i = 0; i < n; ++i) {
        int c1 = c[i] - f.K_exp[i], d1 = d[i] - f.K_exp[i];
        if (c1 != lead.c[i] || d1 < lead.d[i]) throw Error(Errc::NotDominant, "residual is not a frontier factor");
        f.H_exp[i] = d1 - lead.d[i];
    }
    return f;
}

inline Factorization factor_dominant(const Context& ctx, const Obj& a) {
    auto e = dominant_exponents(ctx, a);
    return factor_exponents(ctx, e.c, e.d);
}

struct Absorption {
    int eps = 0;
    Root gamma;
    std::vector<int> H_exp;
};

/// Y[beta] (x) Y(x_i) = K_i^{eps} (x) prod Y(x_l)^{H_exp[l]} (x) Y[beta - dimI_i].
inline Absorption absorb_frontier(const Context& ctx, const Root& beta, int i) {
    if (i < 1 || i > ctx.rank() || beta[i] <= 0) throw Error(Errc::NotInSupport, "vertex outside Supp(beta)");
    auto bd = beta_combinatorics(ctx.quiver(), ctx.xi(), beta);
    auto e = leading_exponents(ctx, beta);
    e.d[i - 1] += 1;
    Factorization f = factor_exponents(ctx, e.c, e.d);
    Absorption a{e.c[i - 1] > 0 ? 1 : 0, beta - bd.dimI[i - 1], f.H_exp};
    for (int k = 1; k <= ctx.rank(); ++k)
        if (f.K_exp[k - 1] != (k == i ? a.eps : 0)) throw Error(Errc::NotDominant, "unexpected frozen factor");
    if (!(f.remainder == a.gamma)) throw Error(Errc::NotDominant, "remainder differs from beta - dimI");
    return a;
}

/// Factorisation of mu_Z(Y[beta] (x) Y(x_i)) with Z = { tau x_j : j in out(i) }.
inline Factorization tilt_leading(const Context& ctx, const Root& beta, int i) {
    if (i < 1 || i > ctx.rank() || beta[i] <= 0) throw Error(Errc::NotInSupport, "vertex outside Supp(beta)");
    const auto& q = ctx.quiver();
    int n = ctx.rank();
    auto bd = beta_combinatorics(q, ctx.xi(), beta);
    const auto& out = bd.out[i - 1];
    auto in_out = [&](int k) { return std::find(out.begin(), out.end(), k) != out.end(); };
    auto e = leading_exponents(ctx, beta);
    std::vector<int> c2 = e.c, d2 = e.d, H(n, 0);
    for (int k = 1; k <= n; ++k) {
        int to_out = 0, from_out = 0;
        for (int j : out) {
            if (q.has_arrow(k, j)) ++to_out;
            if (q.has_arrow(j, k)) ++from_out;
        }
        c2[k - 1] = e.c[k - 1] - (in_out(k) ? 1 : 0) + to_out;
        if (in_out(k) && k != i) d2[k - 1] = e.d[k - 1] - 1 + from_out;
        if (beta[k] == 0) H[k - 1] = from_out;
    }
    for (int k = 0; k < n; ++k)
        if (c2[k] < 0 || d2[k] < 0) throw Error(Errc::NotDominant, "negative exponent after tilting");
    Factorization f = factor_exponents(ctx, c2, d2);
    f.F_list = out;
    for (int k = 0; k < n; ++k) f.H_exp[k] += H[k];
    if (!(f.remainder == beta - bd.dimP[i - 1]))
        throw Error(Errc::NotDominant, "remainder differs from beta - dimP");
    return f;
}

/// Tilting set used by tilt_leading.
inline Multiset tilt_leading_set(const Context& ctx, const Root& beta, int i) {
    auto bd = beta_combinatorics(ctx.quiver(), ctx.xi(), beta);
    Multiset Z;
    for (int j : bd.out[i - 1]) Z[ctx.tx(j)] += 1;
    return Z;
}

/// If b is a Serre tilting of a, the tilting multiset.
inline std::optional<Multiset> tilting_between(const Context& ctx, const Obj& a, const Obj& b) {
    QFun diff = a.fun - b.fun;
    Multiset Z;
    for (auto& [v, k] : a.ms) {
        long long val = ctx.eval(diff, v);
        if (val < 0 || val > k) return std::nullopt;
        if (val) Z[v] = static_cast<int>(val);
    }
    QFun sum;
    for (auto& [z, k] : Z) sum += QFun::delta(z, k);
    if (!ctx.equal(diff, sum)) return std::nullopt;
    Obj t = serre_tilt(ctx, a, Z);
    if (t.ms != b.ms) return std::nullopt;
    return Z;
}

/// Dimension of Hom(a, b) in M_Q: permanent of dim_hom over bijections, zero
/// unless b is a Serre tilting of a.
inline long long hom_dim_MQ(const Context& ctx, const Obj& a, const Obj& b, int bound = 8) {
    int na = multiset_size(a.ms), nb = multiset_size(b.ms);
    if (na > bound || nb > bound) throw Error(Errc::TooLarge, "multiset larger than the bound");
    if (na != nb || !tilting_between(ctx, a, b)) return 0;
    std::vector<ZVertex> xs, ys;
    for (auto& [v, k] : a.ms) xs.insert(xs.end(), k, v);
    for (auto& [v, k] : b.ms) ys.insert(ys.end(), k, v);
    std::vector<int> perm(nb);
    for (int k = 0; k < nb; ++k) perm[k] = k;
    long long total = 0;
    do {
        long long prod = 1;
        for (int k = 0; k < na && prod; ++k) prod *= ctx.dim_hom(xs[k], ys[perm[k]]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// The anchor x: smallest p (then smallest i) with Hom(tau x_i, x) != 0 for all i.
inline ZVertex anchor_object(const Context& ctx) {
    int mn = *std::min_element(ctx.xi().xi.begin(), ctx.xi().xi.end());
    int h = ctx.zq().coxeter();
    for (int p = mn - 2; p <= mn + 2 * h; ++p)
        for (int j = 1; j <= ctx.rank(); ++j) {
            ZVertex y{j, p};
            if (!ctx.zq().valid(y)) continue;
            bool ok = true;
            for (int i = 1; i <= ctx.rank() && ok; ++i) ok = ctx.dim_hom(ctx.tx(i), y) >= 1;
            if (ok) return y;
        }
    throw Error(Errc::BadInput, "no anchor object in the search window");
}

/// H_i = { tau x_j : j ~> i }.
inline Multiset frontier_set(const Context& ctx, int i) {
    Multiset m;
    for (int j = 1; j <= ctx.rank(); ++j)
        if (ctx.quiver().has_path(j, i)) m[ctx.tx(j)] += 1;
    return m;
}

inline nlohmann::json monomial_json(const Monomial& m) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [v, e] : m.terms()) j[v.key()] = e;
    return j;
}

inline nlohmann::json to_json(const Obj& a) {
    nlohmann::json j;
    j["multiset"] = nlohmann::json::array();
    for (auto& [v, k] : a.ms) j["multiset"].push_back({v.str(), k});
    j["gens"] = nlohmann::json::array();
    for (auto& [v, c] : a.fun.gens) j["gens"].push_back({v.str(), c});
    j["deltas"] = nlohmann::json::array();
    for (auto& [v, c] : a.fun.deltas) j["deltas"].push_back({v.str(), c});
    j["kclass"] = a.kclass ? monomial_json(*a.kclass) : nlohmann::json(nullptr);
    return j;
}

} // namespace qq
