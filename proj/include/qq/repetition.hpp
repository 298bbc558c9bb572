#pragma once

#include "qq/quiver.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qq {

/// Vertex (i,p) of ZQ.
struct ZVertex {
    int i = 0;
    int p = 0;
    auto operator<=>(const ZVertex&) const = default;
    std::string str() const { return std::to_string(i) + "," + std::to_string(p); }
};

/// One p-value per vertex of Q, indexed by vertex - 1.
struct Section {
    std::vector<int> p;
    int operator()(int i) const { return p[i - 1]; }
    bool operator==(const Section&) const = default;
};

inline int coxeter_number(DynkinType t, int n) {
    switch (t) {
    case DynkinType::A: return n + 1;
    case DynkinType::D: return 2 * n - 2;
    case DynkinType::E: return n == 6 ? 12 : n == 7 ? 18 : 30;
    }
    return 0;
}

/// The involution induced by -w0, as a table indexed by vertex - 1.
inline std::vector<int> nakayama_permutation(DynkinType t, int n) {
    std::vector<int> nu(n);
    for (int i = 1; i <= n; ++i) nu[i - 1] = i;
    if (t == DynkinType::A) {
        for (int i = 1; i <= n; ++i) nu[i - 1] = n + 1 - i;
    } else if (t == DynkinType::D && n % 2 == 1) {
        std::swap(nu[n - 2], nu[n - 1]);
    } else if (t == DynkinType::E && n == 6) {
        // chain 1-2-3-4-5 with 6 on vertex 3
        nu = {5, 4, 3, 2, 1, 6};
    }
    return nu;
}

class RepetitionQuiver {
public:
    RepetitionQuiver() = default;
    explicit RepetitionQuiver(DynkinQuiver q)
        : q_(std::move(q)), eps_(tree_coloring(q_)), nu_(nakayama_permutation(q_.type(), q_.rank())),
          h_(coxeter_number(q_.type(), q_.rank())) {}

    /// Replace the (nu, h) data; used to exercise the Serre-duality check.
    void override_serre_data(std::vector<int> nu, int h) {
        nu_ = std::move(nu);
        h_ = h;
    }

    const DynkinQuiver& quiver() const { return q_; }
    int rank() const { return q_.rank(); }
    int eps(int i) const { return eps_[i - 1]; }
    int nu(int i) const { return nu_[i - 1]; }
    int coxeter() const { return h_; }

    bool valid(const ZVertex& x) const {
        return x.i >= 1 && x.i <= rank() && floor_mod2(x.p) == eps(x.i);
    }

    std::vector<ZVertex> out_neighbors(const ZVertex& x) const {
        std::vector<ZVertex> r;
        for (int j : q_.neighbors(x.i)) r.push_back({j, x.p + 1});
        return r;
    }
    std::vector<ZVertex> in_neighbors(const ZVertex& x) const {
        std::vector<ZVertex> r;
        for (int j : q_.neighbors(x.i)) r.push_back({j, x.p - 1});
        return r;
    }

    static ZVertex tau(const ZVertex& x, int k = 1) { return {x.i, x.p - 2 * k}; }
    ZVertex sigma(const ZVertex& x) const { return {nu(x.i), x.p + h_}; }
    ZVertex serre(const ZVertex& x) const { return {nu(x.i), x.p + h_ - 2}; }

    /// The section through x: p_s - p_t = 1 on every arrow s -> t.
    Section section_through(const ZVertex& x) const {
        Section s;
        s.p.assign(rank(), 0);
        std::vector<char> done(rank(), 0);
        s.p[x.i - 1] = x.p;
        done[x.i - 1] = 1;
        std::vector<int> stack{x.i};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : q_.succ(v))
                if (!done[w - 1]) s.p[w - 1] = s.p[v - 1] - 1, done[w - 1] = 1, stack.push_back(w);
            for (int w : q_.pred(v))
                if (!done[w - 1]) s.p[w - 1] = s.p[v - 1] + 1, done[w - 1] = 1, stack.push_back(w);
        }
        return s;
    }

    /// Vertices of the window p in [pmin, pmax], ordered by (p, i).
    std::vector<ZVertex> window(int pmin, int pmax) const {
        std::vector<ZVertex> r;
        for (int p = pmin; p <= pmax; ++p)
            for (int i = 1; i <= rank(); ++i)
                if (valid({i, p})) r.push_back({i, p});
        return r;
    }

private:
    DynkinQuiver q_;
    std::vector<int> eps_, nu_;
    int h_ = 0;
};

/// Graphviz rendering of a p-window of ZQ. `label` may attach a value to a vertex;
/// `highlight` vertices are drawn filled.
inline std::string zq_dot(const RepetitionQuiver& zq, int pmin, int pmax,
                          const std::function<std::optional<std::string>(const ZVertex&)>& label = {},
                          const std::vector<ZVertex>& highlight = {}) {
    std::ostringstream os;
    os << "digraph ZQ {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n";
    auto id = [](const ZVertex& v) {
        return "\"v" + std::to_string(v.i) + "_" + (v.p < 0 ? "m" + std::to_string(-v.p) : std::to_string(v.p)) + "\"";
    };
    for (auto& v : zq.window(pmin, pmax)) {
        std::string text = "(" + v.str() + ")";
        if (label)
            if (auto l = label(v)) text = *l;
        os << "  " << id(v) << " [label=\"" << text << "\", pos=\"" << v.p << "," << -v.i << "!\"";
        if (std::find(highlight.begin(), highlight.end(), v) != highlight.end())
            os << ", style=filled, fillcolor=red";
        os << "];\n";
    }
    for (auto& v : zq.window(pmin, pmax))
        for (auto& w : zq.out_neighbors(v))
            if (w.p <= pmax) os << "  " << id(v) << " -> " << id(w) << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace qq
