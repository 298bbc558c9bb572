#pragma once

#include "qq/error.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qq {

/// Overflow-checked integer helpers; coefficients never silently wrap.
inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
    return r;
}
inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
    return r;
}

/// A ring generator. x/X are the initial cluster variables and frozens, Y and f
/// live on the categorical side, F is the symbolic class of an F-object off the section.
struct Var {
    enum class Kind : std::uint8_t { x, X, Y, f, F };
    Kind kind = Kind::x;
    int i = 0;
    int p = 0;

    static Var x_(int i) { return {Kind::x, i, 0}; }
    static Var X_(int i) { return {Kind::X, i, 0}; }
    static Var Y_(int i, int p) { return {Kind::Y, i, p}; }
    static Var f_(int i) { return {Kind::f, i, 0}; }
    static Var F_(int i, int p) { return {Kind::F, i, p}; }

    auto operator<=>(const Var&) const = default;

    /// Key form used in JSON, e.g. "Y:2:-1" or "f:3".
    std::string key() const {
        switch (kind) {
        case Kind::x: return "x:" + std::to_string(i);
        case Kind::X: return "X:" + std::to_string(i);
        case Kind::Y: return "Y:" + std::to_string(i) + ":" + std::to_string(p);
        case Kind::f: return "f:" + std::to_string(i);
        case Kind::F: return "F:" + std::to_string(i) + ":" + std::to_string(p);
        }
        return "?";
    }
    /// Human form, e.g. "Y[2,-1]".
    std::string str() const {
        switch (kind) {
        case Kind::x: return "x" + std::to_string(i);
        case Kind::X: return "X" + std::to_string(i);
        case Kind::Y: return "Y[" + std::to_string(i) + "," + std::to_string(p) + "]";
        case Kind::f: return "f" + std::to_string(i);
        case Kind::F: return "F[" + std::to_string(i) + "," + std::to_string(p) + "]";
        }
        return "?";
    }
};

/// Laurent monomial: sorted (variable, nonzero exponent) pairs.
class Monomial {
public:
    using Term = std::pair<Var, int>;

    Monomial() = default;
    explicit Monomial(Var v, int e = 1) {
        if (e != 0) t_.emplace_back(v, e);
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_one() const { return t_.empty(); }

    int exponent(const Var& v) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), v,
                                   [](const Term& a, const Var& b) { return a.first < b; });
        return (it != t_.end() && it->first == v) ? it->second : 0;
    }

    Monomial operator*(const Monomial& o) const { return merge(o, 1); }
    Monomial operator/(const Monomial& o) const { return merge(o, -1); }
    Monomial& operator*=(const Monomial& o) { return *this = *this * o; }

    Monomial pow(int k) const {
        Monomial r;
        if (k == 0) return r;
        for (auto& [v, e] : t_) r.t_.emplace_back(v, e * k);
        return r;
    }
    Monomial inverse() const { return pow(-1); }

    bool operator==(const Monomial&) const = default;

    /// Every exponent is nonnegative.
    bool is_polynomial() const {
        return std::all_of(t_.begin(), t_.end(), [](const Term& t) { return t.second > 0; });
    }

    std::string str() const {
        if (t_.empty()) return "1";
        std::string s;
        for (std::size_t k = 0; k < t_.size(); ++k) {
            if (k) s += "*";
            s += t_[k].first.str();
            if (t_[k].second != 1) s += "^" + std::to_string(t_[k].second);
        }
        return s;
    }

    /// Replace every variable through `img`; variables mapped to nullopt stay put.
    template <class F>
    Monomial substitute(F&& img) const {
        Monomial r;
        for (auto& [v, e] : t_) {
            auto m = img(v);
            r *= (m ? m->pow(e) : Monomial(v, e));
        }
        return r;
    }

private:
    Monomial merge(const Monomial& o, int sgn) const {
        Monomial r;
        r.t_.reserve(t_.size() + o.t_.size());
        std::size_t a = 0, b = 0;
        while (a < t_.size() || b < o.t_.size()) {
            if (b == o.t_.size() || (a < t_.size() && t_[a].first < o.t_[b].first)) {
                r.t_.push_back(t_[a++]);
            } else if (a == t_.size() || o.t_[b].first < t_[a].first) {
                r.t_.emplace_back(o.t_[b].first, sgn * o.t_[b].second);
                ++b;
            } else {
                int e = t_[a].second + sgn * o.t_[b].second;
                if (e != 0) r.t_.emplace_back(t_[a].first, e);
                ++a, ++b;
            }
        }
        return r;
    }

    std::vector<Term> t_;
};

/// Lexicographic order on exponent vectors (variables in Var order, larger
/// exponent is larger). It is a group order on Z^n, so leading terms multiply.
struct LexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto& x = a.terms();
        auto& y = b.terms();
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) return x[i].second < 0;
            if (i == x.size() || y[j].first < x[i].first) return y[j].second > 0;
            if (x[i].second != y[j].second) return x[i].second < y[j].second;
            ++i, ++j;
        }
        return false;
    }
};

/// Sparse Laurent polynomial with exact integer coefficients.
class LaurentPoly {
public:
    using Map = std::map<Monomial, long long, LexLess>;

    LaurentPoly() = default;
    LaurentPoly(long long c) {
        if (c) t_.emplace(Monomial{}, c);
    }
    LaurentPoly(const Monomial& m, long long c = 1) {
        if (c) t_.emplace(m, c);
    }
    static LaurentPoly var(Var v) { return LaurentPoly(Monomial(v)); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add_term(const Monomial& m, long long c) {
        if (!c) return;
        auto [it, fresh] = t_.emplace(m, c);
        if (!fresh) {
            it->second = checked_add(it->second, c);
            if (!it->second) t_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const { return LaurentPoly{} - *this; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [m, c] : a.t_)
            for (auto& [n, d] : b.t_) r.add_term(m * n, checked_mul(c, d));
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly pow(unsigned k) const {
        LaurentPoly r(1), b = *this;
        for (; k; k >>= 1, b = b * b)
            if (k & 1) r *= b;
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }

    const Monomial& leading() const { return t_.rbegin()->first; }
    const Monomial& trailing() const { return t_.begin()->first; }

    bool all_positive() const {
        return std::all_of(t_.begin(), t_.end(), [](auto& t) { return t.second > 0; });
    }

    /// Ring homomorphism defined on generators; unmapped variables are kept.
    template <class F>
    LaurentPoly substitute(F&& img) const {
        LaurentPoly r;
        for (auto& [m, c] : t_) {
            LaurentPoly term(c);
            for (auto& [v, e] : m.terms()) {
                std::optional<LaurentPoly> im = img(v);
                if (!im) {
                    term *= LaurentPoly(Monomial(v, e));
                    continue;
                }
                if (e >= 0) {
                    term *= im->pow(static_cast<unsigned>(e));
                } else {
                    if (im->size() != 1)
                        throw Error(Errc::InexactDivision, "negative power of a non-monomial image");
                    auto& [im_m, im_c] = *im->t_.begin();
                    if (im_c != 1 && im_c != -1)
                        throw Error(Errc::InexactDivision, "negative power of a non-unit coefficient");
                    term *= LaurentPoly(im_m.pow(e), (-e) % 2 ? im_c : 1);
                }
            }
            r += term;
        }
        return r;
    }

    /// Exact division. The quotient is built from leading terms under LexLess;
    /// each candidate term is confined to the exponent box allowed by the
    /// Newton polytopes, which makes non-divisible inputs terminate.
    LaurentPoly divide_exact(const LaurentPoly& d) const {
        if (d.is_zero()) throw Error(Errc::InexactDivision, "division by zero");
        if (is_zero()) return {};
        if (d.size() == 1) {
            auto& [dm, dc] = *d.t_.begin();
            LaurentPoly q;
            for (auto& [m, c] : t_) {
                if (c % dc) throw Error(Errc::InexactDivision, "coefficient not divisible");
                q.t_.emplace(m / dm, c / dc);
            }
            return q;
        }
        std::map<Var, std::pair<int, int>> lo_hi_num, lo_hi_den;
        auto box = [](const LaurentPoly& p, std::map<Var, std::pair<int, int>>& out) {
            std::vector<Var> vars;
            for (auto& [m, c] : p.t_)
                for (auto& [v, e] : m.terms()) vars.push_back(v);
            for (auto& v : vars) out[v] = {0, 0};
            bool first = true;
            for (auto& [m, c] : p.t_) {
                for (auto& [v, b] : out) {
                    int e = m.exponent(v);
                    if (first) b = {e, e};
                    b.first = std::min(b.first, e);
                    b.second = std::max(b.second, e);
                }
                first = false;
            }
        };
        box(*this, lo_hi_num);
        box(d, lo_hi_den);
        auto lookup = [](const std::map<Var, std::pair<int, int>>& b, const Var& v) {
            auto it = b.find(v);
            return it == b.end() ? std::pair<int, int>{0, 0} : it->second;
        };
        auto in_box = [&](const Monomial& t) {
            std::vector<Var> vars;
            for (auto& [v, b] : lo_hi_num) vars.push_back(v);
            for (auto& [v, b] : lo_hi_den) vars.push_back(v);
            for (auto& [v, e] : t.terms()) vars.push_back(v);
            for (auto& v : vars) {
                auto [nl, nh] = lookup(lo_hi_num, v);
                auto [dl, dh] = lookup(lo_hi_den, v);
                int e = t.exponent(v);
                if (e < nl - dl || e > nh - dh) return false;
            }
            return true;
        };
        const Monomial& dlead = d.leading();
        long long dcoef = d.t_.rbegin()->second;
        LaurentPoly q, r = *this;
        while (!r.is_zero()) {
            auto& [rm, rc] = *r.t_.rbegin();
            if (rc % dcoef) throw Error(Errc::InexactDivision, "leading coefficient not divisible");
            Monomial t = rm / dlead;
            if (!in_box(t)) throw Error(Errc::InexactDivision, "quotient term outside Newton box");
            LaurentPoly step(t, rc / dcoef);
            q += step;
            r -= step * d;
        }
        return q;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            long long c = it->second;
            const Monomial& m = it->first;
            if (!first) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            long long a = c < 0 ? -c : c;
            if (m.is_one()) s += std::to_string(a);
            else {
                if (a != 1) s += std::to_string(a) + "*";
                s += m.str();
            }
            first = false;
        }
        return s;
    }

private:
    Map t_;
};

} // namespace qq
