#pragma once

#include "qq/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qq {

enum class DynkinType { A, D, E };

inline char type_char(DynkinType t) { return t == DynkinType::A ? 'A' : t == DynkinType::D ? 'D' : 'E'; }

inline DynkinType parse_type(const std::string& s) {
    if (s == "A") return DynkinType::A;
    if (s == "D") return DynkinType::D;
    if (s == "E") return DynkinType::E;
    throw Error(Errc::BadInput, "unknown Dynkin type '" + s + "'");
}

inline void check_rank(DynkinType t, int n) {
    bool ok = (t == DynkinType::A && n >= 1) || (t == DynkinType::D && n >= 4) ||
              (t == DynkinType::E && n >= 6 && n <= 8);
    if (!ok) throw Error(Errc::WrongShape, std::string("no Dynkin diagram ") + type_char(t) + std::to_string(n));
}

/// Undirected edges (lower label first) of the labelled Dynkin tree.
/// D_n: chain 1..n-2 with both n-1 and n attached to n-2.
/// E_n: chain 1..n-1 with n attached to 3.
inline std::vector<std::pair<int, int>> diagram_edges(DynkinType t, int n) {
    check_rank(t, n);
    std::vector<std::pair<int, int>> e;
    switch (t) {
    case DynkinType::A:
        for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
        break;
    case DynkinType::D:
        for (int i = 1; i < n - 2; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(n - 2, n - 1);
        e.emplace_back(n - 2, n);
        break;
    case DynkinType::E:
        for (int i = 1; i < n - 1; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(3, n);
        break;
    }
    return e;
}

/// An orientation of a labelled Dynkin tree.
class DynkinQuiver {
public:
    DynkinQuiver() = default;

    DynkinType type() const { return type_; }
    int rank() const { return n_; }
    std::string name() const { return type_char(type_) + std::to_string(n_); }
    /// Name followed by the arrow list, e.g. "A3 1->2 3->2".
    std::string str() const {
        std::string s = name();
        for (auto [a, b] : arrows_) s += " " + std::to_string(a) + "->" + std::to_string(b);
        return s;
    }
    const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }

    const std::vector<int>& neighbors(int i) const { return nbr_[i - 1]; }
    /// Direct successors j of i (arrows i -> j).
    const std::vector<int>& succ(int i) const { return succ_[i - 1]; }
    /// Direct predecessors j of i (arrows j -> i).
    const std::vector<int>& pred(int i) const { return pred_[i - 1]; }
    bool has_arrow(int i, int j) const {
        return std::find(succ_[i - 1].begin(), succ_[i - 1].end(), j) != succ_[i - 1].end();
    }
    /// Oriented path i ~> j, the trivial path included.
    bool has_path(int i, int j) const { return reach_[(i - 1) * n_ + (j - 1)]; }
    bool is_sink(int i) const { return succ_[i - 1].empty(); }
    bool is_source(int i) const { return pred_[i - 1].empty(); }
    std::vector<int> sinks() const {
        std::vector<int> r;
        for (int i = 1; i <= n_; ++i)
            if (is_sink(i)) r.push_back(i);
        return r;
    }
    std::vector<int> sources() const {
        std::vector<int> r;
        for (int i = 1; i <= n_; ++i)
            if (is_source(i)) r.push_back(i);
        return r;
    }

    friend DynkinQuiver build_quiver(DynkinType t, int n, const std::vector<std::pair<int, int>>& arrows);

private:
    DynkinType type_ = DynkinType::A;
    int n_ = 0;
    std::vector<std::pair<int, int>> arrows_;
    std::vector<std::vector<int>> nbr_, succ_, pred_;
    std::vector<char> reach_;
};

inline DynkinQuiver build_quiver(DynkinType t, int n, const std::vector<std::pair<int, int>>& arrows) {
    auto edges = diagram_edges(t, n);
    std::set<std::pair<int, int>> want(edges.begin(), edges.end()), seen;
    for (auto [s, d] : arrows) {
        if (s < 1 || s > n || d < 1 || d > n || s == d)
            throw Error(Errc::WrongShape, "arrow " + std::to_string(s) + "->" + std::to_string(d) + " out of range");
        std::pair<int, int> e{std::min(s, d), std::max(s, d)};
        if (!want.count(e))
            throw Error(Errc::WrongShape, "arrow " + std::to_string(s) + "->" + std::to_string(d) +
                                              " is not an edge of " + type_char(t) + std::to_string(n));
        if (!seen.insert(e).second)
            throw Error(Errc::Reorientation, "edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                                 "} oriented twice");
    }
    if (seen.size() != want.size()) throw Error(Errc::WrongShape, "some edges carry no arrow");

    DynkinQuiver q;
    q.type_ = t;
    q.n_ = n;
    q.arrows_ = arrows;
    q.nbr_.assign(n, {});
    q.succ_.assign(n, {});
    q.pred_.assign(n, {});
    for (auto [s, d] : arrows) {
        q.nbr_[s - 1].push_back(d);
        q.nbr_[d - 1].push_back(s);
        q.succ_[s - 1].push_back(d);
        q.pred_[d - 1].push_back(s);
    }
    for (auto* v : {&q.nbr_, &q.succ_, &q.pred_})
        for (auto& l : *v) std::sort(l.begin(), l.end());

    // Count paths; on a tree every count is 0 or 1.
    std::vector<int> paths(n * n, 0);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++paths[(i - 1) * n + (v - 1)];
            for (int w : q.succ_[v - 1]) stack.push_back(w);
        }
    }
    q.reach_.assign(n * n, 0);
    for (int k = 0; k < n * n; ++k) {
        if (paths[k] > 1) throw Error(Errc::WrongShape, "multiple oriented paths between two vertices");
        q.reach_[k] = paths[k] == 1;
    }
    return q;
}

/// Number of orientations of the labelled tree.
inline std::uint64_t orientation_count(DynkinType t, int n) { return std::uint64_t{1} << diagram_edges(t, n).size(); }

/// Orientation number `mask`: bit k reverses edge k from (low -> high) to (high -> low).
inline DynkinQuiver orientation(DynkinType t, int n, std::uint64_t mask) {
    auto edges = diagram_edges(t, n);
    std::vector<std::pair<int, int>> arrows;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        if (mask >> k & 1) std::swap(a, b);
        arrows.emplace_back(a, b);
    }
    return build_quiver(t, n, arrows);
}

/// Proper 2-colouring of the tree with eps(1) = 1; for A_n this is i mod 2.
inline std::vector<int> tree_coloring(const DynkinQuiver& q) {
    std::vector<int> eps(q.rank(), -1);
    eps[0] = 1;
    std::vector<int> stack{1};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : q.neighbors(v))
            if (eps[w - 1] < 0) {
                eps[w - 1] = 1 - eps[v - 1];
                stack.push_back(w);
            }
    }
    return eps;
}

inline int floor_mod2(int v) { return ((v % 2) + 2) % 2; }

/// Adapted height function: xi(j) = xi(i) - 1 along every arrow i -> j.
struct HeightFunction {
    std::vector<int> xi;
    int operator()(int i) const { return xi[i - 1]; }
    bool operator==(const HeightFunction&) const = default;
};

/// The adapted height through `anchor` (vertex, value); default is vertex 1 at value eps(1) = 1.
inline HeightFunction default_height(const DynkinQuiver& q, std::optional<std::pair<int, int>> anchor = {}) {
    auto eps = tree_coloring(q);
    auto [v0, val] = anchor.value_or(std::pair<int, int>{1, eps[0]});
    if (v0 < 1 || v0 > q.rank()) throw Error(Errc::BadInput, "anchor vertex out of range");
    if (floor_mod2(val) != eps[v0 - 1])
        throw Error(Errc::ParityViolation, "anchor value " + std::to_string(val) + " has the wrong parity at vertex " +
                                               std::to_string(v0));
    HeightFunction h;
    h.xi.assign(q.rank(), 0);
    std::vector<char> done(q.rank(), 0);
    h.xi[v0 - 1] = val;
    done[v0 - 1] = 1;
    std::vector<int> stack{v0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : q.succ(v))
            if (!done[w - 1]) h.xi[w - 1] = h.xi[v - 1] - 1, done[w - 1] = 1, stack.push_back(w);
        for (int w : q.pred(v))
            if (!done[w - 1]) h.xi[w - 1] = h.xi[v - 1] + 1, done[w - 1] = 1, stack.push_back(w);
    }
    return h;
}

/// Element of the root lattice, coefficients on the simple roots alpha_1..alpha_n.
struct Root {
    std::vector<int> a;

    Root() = default;
    explicit Root(int n) : a(n, 0) {}
    explicit Root(std::vector<int> v) : a(std::move(v)) {}
    static Root simple(int n, int i) {
        Root r(n);
        r.a[i - 1] = 1;
        return r;
    }

    int n() const { return static_cast<int>(a.size()); }
    int operator[](int i) const { return a[i - 1]; }
    int& operator[](int i) { return a[i - 1]; }
    int height() const {
        int s = 0;
        for (int v : a) s += v;
        return s;
    }
    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
    }
    bool is_nonnegative() const {
        return std::all_of(a.begin(), a.end(), [](int v) { return v >= 0; });
    }
    /// Returns i if this is -alpha_i, else 0.
    int negative_simple() const {
        int idx = 0;
        for (int k = 0; k < n(); ++k) {
            if (a[k] == 0) continue;
            if (a[k] != -1 || idx) return 0;
            idx = k + 1;
        }
        return idx;
    }
    std::vector<int> support() const {
        std::vector<int> s;
        for (int k = 0; k < n(); ++k)
            if (a[k] > 0) s.push_back(k + 1);
        return s;
    }

    Root operator+(const Root& o) const {
        Root r = *this;
        for (int k = 0; k < n(); ++k) r.a[k] += o.a[k];
        return r;
    }
    Root operator-(const Root& o) const {
        Root r = *this;
        for (int k = 0; k < n(); ++k) r.a[k] -= o.a[k];
        return r;
    }
    bool operator==(const Root&) const = default;
    /// Height first, then lexicographic.
    bool operator<(const Root& o) const {
        int h = height(), ho = o.height();
        if (h != ho) return h < ho;
        return a < o.a;
    }

    std::string str() const {
        std::string s;
        for (int k = 0; k < n(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
        return s;
    }
};

/// Symmetric bilinear form (beta, alpha_i) of the simply-laced Cartan matrix.
inline int cartan_pair(const DynkinQuiver& q, const Root& b, int i) {
    int s = 2 * b[i];
    for (int j : q.neighbors(i)) s -= b[j];
    return s;
}

/// Positive roots by the simply-laced string rule: for a positive root beta
/// other than alpha_i, beta + alpha_i is a root iff (beta, alpha_i) = -1.
inline std::vector<Root> positive_roots(const DynkinQuiver& q) {
    int n = q.rank();
    std::set<Root> found;
    std::vector<Root> layer;
    for (int i = 1; i <= n; ++i) layer.push_back(Root::simple(n, i));
    found.insert(layer.begin(), layer.end());
    while (!layer.empty()) {
        std::vector<Root> next;
        for (auto& b : layer)
            for (int i = 1; i <= n; ++i)
                if (cartan_pair(q, b, i) == -1) {
                    Root c = b + Root::simple(n, i);
                    if (found.insert(c).second) next.push_back(c);
                }
        layer = std::move(next);
    }
    return {found.begin(), found.end()};
}

/// r_i = sum over sinks j reachable from i of (xi(i) - xi(j)).
inline std::vector<int> sink_distances(const DynkinQuiver& q, const HeightFunction& xi) {
    std::vector<int> r(q.rank(), 0);
    for (int i = 1; i <= q.rank(); ++i)
        for (int j : q.sinks())
            if (q.has_path(i, j)) r[i - 1] += xi(i) - xi(j);
    return r;
}

/// Index sets attached to beta. Vectors are indexed by vertex - 1.
struct BetaData {
    Root beta;
    std::vector<int> supp;
    std::vector<std::vector<int>> out, in;
    std::vector<Root> dimP, dimI;
    std::vector<int> r, r_beta;
    std::vector<int> M, I;
    int pick = 0;

    bool in_supp(int i) const { return beta[i] > 0; }
};

inline BetaData beta_combinatorics(const DynkinQuiver& q, const HeightFunction& xi, const Root& beta) {
    int n = q.rank();
    if (beta.is_zero()) throw Error(Errc::EmptySupport, "beta = 0");
    if (!beta.is_nonnegative()) throw Error(Errc::BadInput, "beta outside the positive orthant");
    BetaData d;
    d.beta = beta;
    d.supp = beta.support();
    d.out.assign(n, {});
    d.in.assign(n, {});
    d.dimP.assign(n, Root(n));
    d.dimI.assign(n, Root(n));
    d.r = sink_distances(q, xi);
    d.r_beta.assign(n, 0);

    // Paths inside the full subquiver on Supp(beta).
    std::vector<char> reach(n * n, 0);
    for (int i : d.supp) {
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (reach[(i - 1) * n + v - 1]) continue;
            reach[(i - 1) * n + v - 1] = 1;
            for (int w : q.succ(v))
                if (beta[w] > 0) stack.push_back(w);
        }
    }
    for (int i : d.supp)
        for (int j : d.supp) {
            if (reach[(i - 1) * n + j - 1]) {
                d.out[i - 1].push_back(j);
                d.dimP[i - 1][j] += 1;
                d.r_beta[i - 1] += xi(i) - xi(j);
            }
            if (reach[(j - 1) * n + i - 1]) {
                d.in[i - 1].push_back(j);
                d.dimI[i - 1][j] += 1;
            }
        }

    int amin = beta[d.supp.front()];
    for (int i : d.supp) amin = std::min(amin, beta[i]);
    for (int i : d.supp)
        if (beta[i] == amin) d.M.push_back(i);
    int rmin = d.r_beta[d.M.front() - 1];
    for (int i : d.M) rmin = std::min(rmin, d.r_beta[i - 1]);
    for (int i : d.M)
        if (d.r_beta[i - 1] == rmin) d.I.push_back(i);
    d.pick = d.I.front();
    return d;
}

} // namespace qq
