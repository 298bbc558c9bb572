#pragma once

#include "qq/repetition.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace qq {

using DefectMap = std::map<ZVertex, long long>;

namespace detail {
inline void add_coeff(std::map<ZVertex, long long>& m, const ZVertex& x, long long c) {
    if (!c) return;
    auto [it, fresh] = m.emplace(x, c);
    if (!fresh) {
        it->second = checked_add(it->second, c);
        if (!it->second) m.erase(it);
    }
}
} // namespace detail

/// Quasi-additive function presented as sum gens[x] h_x + sum deltas[z] delta_z.
struct QFun {
    std::map<ZVertex, long long> gens;
    std::map<ZVertex, long long> deltas;

    static QFun hammock(const ZVertex& x) {
        QFun f;
        f.gens[x] = 1;
        return f;
    }
    static QFun delta(const ZVertex& x, long long c = 1) {
        QFun f;
        detail::add_coeff(f.deltas, x, c);
        return f;
    }

    bool is_zero() const { return gens.empty() && deltas.empty(); }

    QFun& operator+=(const QFun& o) {
        for (auto& [x, c] : o.gens) detail::add_coeff(gens, x, c);
        for (auto& [x, c] : o.deltas) detail::add_coeff(deltas, x, c);
        return *this;
    }
    QFun& operator-=(const QFun& o) {
        for (auto& [x, c] : o.gens) detail::add_coeff(gens, x, -c);
        for (auto& [x, c] : o.deltas) detail::add_coeff(deltas, x, -c);
        return *this;
    }
    friend QFun operator+(QFun a, const QFun& b) { return a += b; }
    friend QFun operator-(QFun a, const QFun& b) { return a -= b; }
    QFun scaled(long long k) const {
        QFun r;
        for (auto& [x, c] : gens) detail::add_coeff(r.gens, x, checked_mul(c, k));
        for (auto& [x, c] : deltas) detail::add_coeff(r.deltas, x, checked_mul(c, k));
        return r;
    }
    bool operator==(const QFun&) const = default;
};

/// A quiver with its height function and repetition quiver, plus the knitting
/// caches shared by everything built on top. Caches are guarded by a mutex and
/// never change observable results.
class Context {
public:
    Context(DynkinQuiver q, std::optional<HeightFunction> xi = {})
        : q_(std::move(q)), xi_(xi ? *xi : default_height(q_)), zq_(q_), caches_(std::make_shared<Caches>()) {
        for (int i = 1; i <= q_.rank(); ++i)
            if (floor_mod2(xi_(i)) != zq_.eps(i) || [&] {
                    for (int j : q_.succ(i))
                        if (xi_(j) != xi_(i) - 1) return true;
                    return false;
                }())
                throw Error(Errc::ParityViolation, "height function is not adapted at vertex " + std::to_string(i));
    }

    const DynkinQuiver& quiver() const { return q_; }
    const HeightFunction& xi() const { return xi_; }
    const RepetitionQuiver& zq() const { return zq_; }
    int rank() const { return q_.rank(); }

    /// Drop all caches and install different (nu, h) data.
    void override_serre_data(std::vector<int> nu, int h) {
        zq_.override_serre_data(std::move(nu), h);
        caches_ = std::make_shared<Caches>();
    }

    /// Frontier vertex x_i = (i, xi(i)) and its translate tau x_i.
    ZVertex x(int i) const { return {i, xi_(i)}; }
    ZVertex tx(int i) const { return {i, xi_(i) - 2}; }

    bool left_of(const ZVertex& y, const Section& s) const { return y.p < s(y.i); }
    bool right_of(const ZVertex& y, const Section& s) const { return y.p > s(y.i); }

    /// h_x(y).
    long long hammock_value(const ZVertex& x, const ZVertex& y) const { return knit(x, y, false); }

    /// dim Hom(x, y) in the derived category.
    long long dim_hom(const ZVertex& x, const ZVertex& y) const {
        if (!zq_.valid(x) || !zq_.valid(y)) return 0;
        if (left_of(y, zq_.section_through(x))) return 0;
        if (right_of(y, zq_.section_through(zq_.serre(x)))) return 0;
        return knit(x, y, true);
    }

    /// The knitted function g_x itself (no window cut), exposed for support checks.
    long long hom_function_value(const ZVertex& x, const ZVertex& y) const { return knit(x, y, true); }

    /// H(x): dim_hom(x, y) copies of every y.
    std::map<ZVertex, int> hammock_multiset(const ZVertex& x) const {
        std::map<ZVertex, int> ms;
        Section lo = zq_.section_through(x), hi = zq_.section_through(zq_.serre(x));
        for (int j = 1; j <= rank(); ++j)
            for (int p = lo(j); p <= hi(j); p += 2) {
                long long d = dim_hom(x, {j, p});
                if (d > 0) ms[{j, p}] += static_cast<int>(d);
            }
        return ms;
    }

    long long eval(const QFun& f, const ZVertex& y) const {
        if (!zq_.valid(y)) return 0;
        long long v = 0;
        for (auto& [x, c] : f.gens) v = checked_add(v, checked_mul(c, hammock_value(x, y)));
        if (auto it = f.deltas.find(y); it != f.deltas.end()) v = checked_add(v, it->second);
        return v;
    }

    /// Values on the window p in [pmin, pmax]; rows are vertices, absent entries
    /// (wrong parity) are nullopt.
    std::vector<std::vector<std::optional<long long>>> eval_window(const QFun& f, int pmin, int pmax) const {
        std::vector<std::vector<std::optional<long long>>> g(rank());
        for (int i = 1; i <= rank(); ++i)
            for (int p = pmin; p <= pmax; ++p)
                g[i - 1].push_back(zq_.valid({i, p}) ? std::optional<long long>(eval(f, {i, p})) : std::nullopt);
        return g;
    }

    /// Defect computed from the presentation.
    DefectMap defect(const QFun& f) const {
        DefectMap d;
        for (auto& [x, c] : f.gens) detail::add_coeff(d, x, c);
        for (auto& [z, c] : f.deltas) {
            detail::add_coeff(d, z, c);
            detail::add_coeff(d, RepetitionQuiver::tau(z, -1), c);
            for (auto& y : zq_.out_neighbors(z)) detail::add_coeff(d, y, -c);
        }
        return d;
    }

    /// Defect at one vertex computed from values: f(v) + f(tau v) - sum_{y -> v} f(y).
    long long defect_at(const QFun& f, const ZVertex& v) const {
        long long s = checked_add(eval(f, v), eval(f, RepetitionQuiver::tau(v)));
        for (auto& y : zq_.in_neighbors(v)) s = checked_add(s, -eval(f, y));
        return s;
    }

    /// Equal defects and equal values on a section left of all supports.
    bool equal(const QFun& f, const QFun& g) const {
        DefectMap df = defect(f), dg = defect(g);
        if (df != dg) return false;
        int pmin = 0;
        bool any = false;
        auto see = [&](const ZVertex& v) {
            pmin = any ? std::min(pmin, v.p) : v.p;
            any = true;
        };
        for (auto* m : {&f.gens, &f.deltas, &g.gens, &g.deltas})
            for (auto& [v, c] : *m) see(v);
        for (auto& [v, c] : df) see(v);
        if (!any) return true;
        int p0 = pmin - 2 * rank() - 2;
        if (floor_mod2(p0) != zq_.eps(1)) --p0;
        Section s = zq_.section_through({1, p0});
        for (int j = 1; j <= rank(); ++j)
            if (eval(f, {j, s(j)}) != eval(g, {j, s(j)})) return false;
        return true;
    }

    /// f <= g through removal of the deltas in Z in some order, each step
    /// requiring a positive defect at the removed vertex.
    bool preceq(const QFun& f, const QFun& g, const std::map<ZVertex, int>& Z, std::size_t bound = 8) const {
        std::vector<ZVertex> zs;
        for (auto& [z, m] : Z)
            for (int k = 0; k < m; ++k) zs.push_back(z);
        if (zs.size() > bound) throw Error(Errc::TooLarge, "preceq over " + std::to_string(zs.size()) + " vertices");
        QFun target = g;
        for (auto& z : zs) target -= QFun::delta(z);
        if (!equal(f, target)) return false;
        DefectMap d = defect(g);
        std::vector<char> used(zs.size(), 0);
        std::function<bool(std::size_t)> dfs = [&](std::size_t depth) {
            if (depth == zs.size()) return true;
            for (std::size_t k = 0; k < zs.size(); ++k) {
                if (used[k] || (k > 0 && zs[k] == zs[k - 1] && !used[k - 1])) continue;
                auto it = d.find(zs[k]);
                if (it == d.end() || it->second <= 0) continue;
                DefectMap step = defect(QFun::delta(zs[k]));
                for (auto& [v, c] : step) detail::add_coeff(d, v, -c);
                used[k] = 1;
                bool ok = dfs(depth + 1);
                used[k] = 0;
                for (auto& [v, c] : step) detail::add_coeff(d, v, c);
                if (ok) return true;
            }
            return false;
        };
        return dfs(0);
    }

private:
    struct Table {
        int qlo = 0;
        ZVertex base, extra;
        bool has_extra = false;
        std::vector<std::vector<long long>> layers;
    };
    struct Caches {
        std::mutex m;
        std::map<int, Table> h, g;
    };

    Table make_table(int i, bool with_sigma) const {
        Table t;
        t.base = {i, zq_.eps(i)};
        Section s = zq_.section_through(t.base);
        t.qlo = *std::min_element(s.p.begin(), s.p.end()) - 2;
        if (with_sigma) {
            t.extra = zq_.sigma(t.base);
            t.has_extra = true;
        }
        return t;
    }

    void extend(Table& t, int q) const {
        int n = rank();
        while (t.qlo + static_cast<int>(t.layers.size()) <= q) {
            int k = static_cast<int>(t.layers.size());
            int p = t.qlo + k;
            std::vector<long long> layer(n, 0);
            for (int j = 1; j <= n; ++j) {
                if (floor_mod2(p) != zq_.eps(j)) continue;
                long long v = 0;
                if (k >= 1)
                    for (int nb : q_.neighbors(j)) v = checked_add(v, t.layers[k - 1][nb - 1]);
                if (k >= 2) v = checked_add(v, -t.layers[k - 2][j - 1]);
                ZVertex here{j, p};
                if (here == t.base) v = checked_add(v, 1);
                if (t.has_extra && here == t.extra) v = checked_add(v, 1);
                layer[j - 1] = v;
            }
            t.layers.push_back(std::move(layer));
        }
    }

    long long knit(const ZVertex& x, const ZVertex& y, bool hom) const {
        if (!zq_.valid(x) || !zq_.valid(y)) return 0;
        int shift = x.p - zq_.eps(x.i);
        int q = y.p - shift;
        std::lock_guard<std::mutex> lock(caches_->m);
        auto& tables = hom ? caches_->g : caches_->h;
        auto it = tables.find(x.i);
        if (it == tables.end()) it = tables.emplace(x.i, make_table(x.i, hom)).first;
        Table& t = it->second;
        if (q < t.qlo) return 0;
        extend(t, q);
        return t.layers[q - t.qlo][y.i - 1];
    }

    DynkinQuiver q_;
    HeightFunction xi_;
    RepetitionQuiver zq_;
    std::shared_ptr<Caches> caches_;
};

/// Serre-duality and support checks for dim_hom on a window; returns violations.
inline std::vector<std::string> check_serre_duality(const Context& ctx, int pmin, int pmax) {
    std::vector<std::string> bad;
    const auto& zq = ctx.zq();
    auto win = zq.window(pmin, pmax);
    for (auto& x : win) {
        ZVertex sx = zq.serre(x);
        if (!zq.valid(sx)) {
            bad.push_back("S(" + x.str() + ") = (" + sx.str() + ") is not a vertex");
            continue;
        }
        if (ctx.dim_hom(x, x) != 1) bad.push_back("dim_hom(x,x) != 1 at " + x.str());
        // g_x must die on the two sections right of Q_{Sx}.
        Section hi = zq.section_through(sx);
        for (int j = 1; j <= ctx.rank(); ++j)
            for (int step : {2, 4})
                if (ctx.hom_function_value(x, {j, hi(j) + step}) != 0)
                    bad.push_back("hom function of " + x.str() + " does not vanish right of Q_Sx");
        for (auto& y : win) {
            long long a = ctx.dim_hom(x, y), b = ctx.dim_hom(y, sx);
            if (a < 0) bad.push_back("negative dim_hom(" + x.str() + "; " + y.str() + ")");
            if (a != b)
                bad.push_back("dim_hom(" + x.str() + "; " + y.str() + ") = " + std::to_string(a) + " but dim_hom(" +
                              y.str() + "; S x) = " + std::to_string(b));
        }
    }
    return bad;
}

} // namespace qq
