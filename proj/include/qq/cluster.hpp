#pragma once

#include "qq/laurent.hpp"
#include "qq/quiver.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qq {

/// Seed on I x {0,1}: index i-1 is the mutable (i,0), index n+i-1 the frozen (i,1).
/// B[a][b] = #arrows a->b - #arrows b->a.
struct Seed {
    int n = 0;
    std::vector<std::vector<int>> B;
    std::vector<LaurentPoly> cluster;

    static int mut(int i) { return i - 1; }
    int frz(int i) const { return n + i - 1; }
};

inline Seed initial_seed(const DynkinQuiver& q) {
    int n = q.rank();
    Seed s;
    s.n = n;
    s.B.assign(2 * n, std::vector<int>(2 * n, 0));
    auto arrow = [&](int a, int b) {
        s.B[a][b] += 1;
        s.B[b][a] -= 1;
    };
    for (int i = 1; i <= n; ++i) arrow(Seed::mut(i), s.frz(i));
    for (auto [i, j] : q.arrows()) {
        arrow(Seed::mut(j), Seed::mut(i));
        arrow(s.frz(j), s.frz(i));
        arrow(s.frz(i), Seed::mut(j));
    }
    for (int i = 1; i <= n; ++i) s.cluster.push_back(LaurentPoly::var(Var::x_(i)));
    for (int i = 1; i <= n; ++i) s.cluster.push_back(LaurentPoly::var(Var::X_(i)));
    return s;
}

/// Mutation at the mutable vertex k (1-based label).
inline Seed mutate(const Seed& s, int k) {
    if (k < 1 || k > s.n) throw Error(Errc::BadInput, "mutation at a frozen or missing vertex");
    int c = Seed::mut(k);
    int N = 2 * s.n;
    LaurentPoly in(1), out(1);
    for (int j = 0; j < N; ++j) {
        if (s.B[j][c] > 0) in *= s.cluster[j].pow(s.B[j][c]);
        if (s.B[c][j] > 0) out *= s.cluster[j].pow(s.B[c][j]);
    }
    Seed r = s;
    r.cluster[c] = (in + out).divide_exact(s.cluster[c]);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a == c || b == c) r.B[a][b] = -s.B[a][b];
            else r.B[a][b] = s.B[a][b] + (std::abs(s.B[a][c]) * s.B[c][b] + s.B[a][c] * std::abs(s.B[c][b])) / 2;
        }
    return r;
}

/// Denominator vector in the initial mutable variables.
inline Root d_vector(const LaurentPoly& p, int n) {
    Root d(n);
    for (int i = 1; i <= n; ++i) {
        int mn = 0;
        bool first = true;
        for (auto& [m, c] : p.terms()) {
            int e = m.exponent(Var::x_(i));
            mn = first ? e : std::min(mn, e);
            first = false;
        }
        d[i] = -mn;
    }
    return d;
}

struct ClusterTable {
    std::map<Root, LaurentPoly> vars;
    std::size_t seeds = 0;
    std::vector<std::string> problems;
};

/// Breadth-first closure of seeds under mutation.
inline ClusterTable enumerate_cluster_variables(const DynkinQuiver& q, std::size_t seed_limit = 100000) {
    int n = q.rank();
    ClusterTable t;
    auto key = [&](const Seed& s) {
        std::vector<std::string> k;
        for (int i = 0; i < n; ++i) k.push_back(s.cluster[i].str());
        std::sort(k.begin(), k.end());
        std::string r;
        for (auto& x : k) r += x + ";";
        return r;
    };
    std::set<std::string> seen;
    std::deque<Seed> todo{initial_seed(q)};
    seen.insert(key(todo.front()));
    while (!todo.empty()) {
        Seed s = std::move(todo.front());
        todo.pop_front();
        ++t.seeds;
        for (int i = 0; i < n; ++i) {
            Root d = d_vector(s.cluster[i], n);
            auto [it, fresh] = t.vars.emplace(d, s.cluster[i]);
            if (!fresh && !(it->second == s.cluster[i]))
                t.problems.push_back("two variables share the d-vector " + d.str());
        }
        if (t.seeds >= seed_limit) {
            t.problems.push_back("seed limit reached");
            break;
        }
        for (int k = 1; k <= n; ++k) {
            Seed m = mutate(s, k);
            if (seen.insert(key(m)).second) todo.push_back(std::move(m));
        }
    }
    return t;
}

} // namespace qq
