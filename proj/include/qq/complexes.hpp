#pragma once

#include "qq/objects.hpp"

#include <boost/rational.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qq {

struct Tag {
    enum class Kind { Eta, Identity, ConeConnector };
    Kind kind = Kind::Eta;
    int vertex = 0;
    bool operator==(const Tag&) const = default;
    /// Connectors are eta morphisms too; both act as eta_vertex.
    bool is_eta() const { return kind != Kind::Identity; }
    std::string str() const {
        switch (kind) {
        case Kind::Eta: return "eta" + std::to_string(vertex);
        case Kind::Identity: return "id";
        case Kind::ConeConnector: return "u:eta" + std::to_string(vertex);
        }
        return "?";
    }
};

/// Elementary differential component from summand `src` of C_n to summand `tgt` of C_{n+1}.
struct Component {
    int src = 0;
    int tgt = 0;
    Tag tag;
    int coeff = 1;
};

/// Bounded complex; diffs[n] goes from terms[n] to terms[n+1].
struct Complex {
    std::map<int, std::vector<Obj>> terms;
    std::map<int, std::vector<Component>> diffs;

    const std::vector<Obj>& at(int n) const {
        static const std::vector<Obj> empty;
        auto it = terms.find(n);
        return it == terms.end() ? empty : it->second;
    }
    std::vector<Component> diff(int n) const {
        auto it = diffs.find(n);
        return it == diffs.end() ? std::vector<Component>{} : it->second;
    }
    int min_degree() const { return terms.empty() ? 0 : terms.begin()->first; }
    int max_degree() const { return terms.empty() ? -1 : terms.rbegin()->first; }
    std::size_t summand_count() const {
        std::size_t s = 0;
        for (auto& [n, v] : terms) s += v.size();
        return s;
    }
};

struct FractionComplex {
    Complex num;
    std::vector<int> den;
};

inline Complex single_complex(const Obj& a, int degree) {
    if (degree < 0) throw Error(Errc::NegativeDegree, "negative degree");
    Complex c;
    c.terms[degree].push_back(a);
    return c;
}

inline Complex unit_complex() { return single_complex(unit_object(), 0); }
inline Complex initial_H(const Context& ctx, int i) { return single_complex(object_H(ctx, i), 0); }
inline Complex initial_K(const Context& ctx, int i) { return single_complex(object_K(ctx, i), 0); }
inline Complex initial_F(const Context& ctx, int i) { return single_complex(object_F(ctx, i), 1); }

inline Complex shift(const Complex& c, int k) {
    Complex r;
    for (auto& [n, v] : c.terms) {
        if (v.empty()) continue;
        if (n + k < 0) throw Error(Errc::NegativeDegree, "shift leaves a term in negative degree");
        r.terms[n + k] = v;
    }
    for (auto& [n, v] : c.diffs)
        if (!v.empty()) r.diffs[n + k] = v;
    return r;
}

/// (C (x) D)_n = sum over a+b=n of C_a (x) D_b, Koszul sign on id (x) d.
inline Complex tensor_complex(const Complex& C, const Complex& D) {
    Complex r;
    // index[(a, ia, b, ib)] -> position in degree a+b
    std::map<std::tuple<int, int, int, int>, int> index;
    for (auto& [a, cv] : C.terms)
        for (auto& [b, dv] : D.terms)
            for (std::size_t ia = 0; ia < cv.size(); ++ia)
                for (std::size_t ib = 0; ib < dv.size(); ++ib) {
                    auto& slot = r.terms[a + b];
                    index[{a, int(ia), b, int(ib)}] = int(slot.size());
                    slot.push_back(tensor(cv[ia], dv[ib]));
                }
    for (auto& [a, comps] : C.diffs)
        for (auto& comp : comps)
            for (auto& [b, dv] : D.terms)
                for (std::size_t ib = 0; ib < dv.size(); ++ib)
                    r.diffs[a + b].push_back({index.at({a, comp.src, b, int(ib)}),
                                              index.at({a + 1, comp.tgt, b, int(ib)}), comp.tag, comp.coeff});
    for (auto& [b, comps] : D.diffs)
        for (auto& comp : comps)
            for (auto& [a, cv] : C.terms)
                for (std::size_t ia = 0; ia < cv.size(); ++ia)
                    r.diffs[a + b].push_back({index.at({a, int(ia), b, comp.src}),
                                              index.at({a, int(ia), b + 1, comp.tgt}), comp.tag,
                                              (a % 2 ? -1 : 1) * comp.coeff});
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = it->second.empty() ? r.terms.erase(it) : std::next(it);
    return r;
}

/// Tensor every term with one object placed in degree 0.
inline Complex tensor_object(const Obj& a, const Complex& C) { return tensor_complex(single_complex(a, 0), C); }

/// E_n = dom_{n+1} + cod_n; connectors[n] maps dom_n summands to cod_n summands.
inline Complex cone(const Complex& dom, const Complex& cod, const std::map<int, std::vector<Component>>& connectors) {
    if (!dom.at(0).empty()) throw Error(Errc::NegativeDegree, "cone domain has a degree-0 term");
    for (auto& [n, comps] : connectors)
        for (auto& c : comps)
            if (c.src < 0 || c.src >= int(dom.at(n).size()) || c.tgt < 0 || c.tgt >= int(cod.at(n).size()))
                throw Error(Errc::InconsistentConnector, "connector outside degree " + std::to_string(n));
    Complex e;
    int lo = std::min(dom.terms.empty() ? 0 : dom.min_degree() - 1, cod.terms.empty() ? 0 : cod.min_degree());
    int hi = std::max(dom.max_degree() - 1, cod.max_degree());
    auto dsz = [&](int n) { return int(dom.at(n).size()); };
    for (int n = lo; n <= hi; ++n) {
        std::vector<Obj> t = dom.at(n + 1);
        for (auto& o : cod.at(n)) t.push_back(o);
        if (!t.empty()) e.terms[n] = std::move(t);
    }
    for (int n = lo; n <= hi; ++n) {
        std::vector<Component> d;
        for (auto& c : dom.diff(n + 1)) d.push_back(c);
        if (auto it = connectors.find(n + 1); it != connectors.end())
            for (auto& c : it->second) d.push_back({c.src, dsz(n + 2) + c.tgt, c.tag, c.coeff});
        for (auto& c : cod.diff(n)) d.push_back({dsz(n + 1) + c.src, dsz(n + 2) + c.tgt, c.tag, -c.coeff});
        if (!d.empty()) e.diffs[n] = std::move(d);
    }
    return e;
}

/// Alternating sum of classes; optionally f_i := value, then exact division by
/// prod Y[i, xi(i)]^{den_i}.
inline LaurentPoly euler_char(const Context& ctx, const FractionComplex& fc, std::optional<long long> specialize_f = {}) {
    LaurentPoly chi;
    for (auto& [n, v] : fc.num.terms)
        for (auto& o : v) {
            if (!o.kclass) throw Error(Errc::BadInput, "term without a Grothendieck class");
            chi.add_term(*o.kclass, n % 2 ? -1 : 1);
        }
    if (specialize_f) {
        long long val = *specialize_f;
        chi = chi.substitute([&](const Var& v) -> std::optional<LaurentPoly> {
            if (v.kind == Var::Kind::f) return LaurentPoly(val);
            return std::nullopt;
        });
    }
    Monomial den;
    for (int i = 1; i <= int(fc.den.size()); ++i) den *= Monomial(Var::Y_(i, ctx.xi()(i)), fc.den[i - 1]);
    return chi.divide_exact(LaurentPoly(den));
}

inline Obj denominator_object(const Context& ctx, const std::vector<int>& den) {
    Obj r = unit_object();
    for (int i = 1; i <= int(den.size()); ++i)
        if (den[i - 1]) r = tensor(r, tensor_power(object_H(ctx, i), den[i - 1]));
    return r;
}

/// Recursive construction of C[beta] as a fraction complex, memoised by root.
class ComplexBuilder {
public:
    explicit ComplexBuilder(const Context& ctx) : ctx_(ctx) {}

    const Context& context() const { return ctx_; }

    /// Build with the default pick, or with `top_pick` at the outermost step.
    FractionComplex build(const Root& beta, std::optional<int> top_pick = {}) {
        if (!top_pick) {
            std::lock_guard<std::mutex> lock(m_);
            if (auto it = memo_.find(beta); it != memo_.end()) return it->second;
        }
        FractionComplex fc = construct(beta, top_pick);
        if (!top_pick) {
            std::lock_guard<std::mutex> lock(m_);
            memo_.emplace(beta, fc);
        }
        return fc;
    }

private:
    FractionComplex construct(const Root& beta, std::optional<int> top_pick) {
        int n = ctx_.rank();
        if (beta.is_zero()) return {unit_complex(), std::vector<int>(n, 0)};
        if (int i = beta.negative_simple()) return {initial_H(ctx_, i), std::vector<int>(n, 0)};
        if (!beta.is_nonnegative()) throw Error(Errc::BadInput, "beta is neither nonnegative nor a negative simple root");

        auto bd = beta_combinatorics(ctx_.quiver(), ctx_.xi(), beta);
        int i = bd.pick;
        if (top_pick) {
            if (std::find(bd.I.begin(), bd.I.end(), *top_pick) == bd.I.end())
                throw Error(Errc::BadInput, "pick outside I(beta)");
            i = *top_pick;
        }
        auto ab = absorb_frontier(ctx_, beta, i);
        auto fac = tilt_leading(ctx_, beta, i);
        Root gammaP = beta - bd.dimP[i - 1];
        FractionComplex subI = build(ab.gamma), subP = build(gammaP);

        std::vector<int> den(n, 0);
        for (int k = 0; k < n; ++k) den[k] = std::max(subI.den[k], subP.den[k]);
        auto missing = [&](const std::vector<int>& d) {
            std::vector<int> m(n);
            for (int k = 0; k < n; ++k) m[k] = den[k] - d[k];
            return denominator_object(ctx_, m);
        };

        Obj dom_factor = tensor(tensor(tensor_power(object_K(ctx_, i), ab.eps), denominator_object(ctx_, ab.H_exp)),
                                missing(subI.den));
        Complex dom = tensor_object(dom_factor, shift(subI.num, 1));

        int m = int(fac.F_list.size());
        Factorization front = fac;
        front.remainder = Root(n);
        Obj cod_factor = tensor(rebuild(ctx_, front), missing(subP.den));
        Complex cod = tensor_complex(single_complex(cod_factor, m), subP.num);

        auto conn = solve_connectors(dom, cod, i, m);
        if (conn.empty()) throw Error(Errc::InconsistentConnector, "no connector for beta = " + beta.str());

        FractionComplex out;
        out.num = cone(dom, cod, conn);
        out.den = den;
        out.den[i - 1] += 1;
        return out;
    }

    /// Chain map u : dom -> cod built from eta_i components. Candidates are the
    /// pairs (s, t) with t the tilt of s at tau x_i. In degree m only the lowest
    /// codomain summand is hit, with coefficient 1; the remaining coefficients
    /// solve u d^dom = d^cod u, free ones set to 0.
    std::map<int, std::vector<Component>> solve_connectors(const Complex& dom, const Complex& cod, int i, int m) const {
        using Q = boost::rational<long long>;
        const auto& q = ctx_.quiver();
        ZVertex t = ctx_.tx(i);
        struct Cand {
            int deg, s, t;
        };
        std::vector<Cand> cand;
        for (auto& [deg, summands] : dom.terms) {
            if (deg < m) continue;
            const auto& targets = cod.at(deg);
            for (int s = 0; s < int(summands.size()); ++s) {
                const Obj& src = summands[s];
                if (!src.ms.count(t)) continue;
                auto tl = tiltable(ctx_, src);
                if (std::find(tl.begin(), tl.end(), i) == tl.end()) continue;
                Obj tilted = serre_tilt(ctx_, src, {{t, 1}});
                for (int u = 0; u < int(targets.size()); ++u)
                    if (is_iso(ctx_, tilted, targets[u])) cand.push_back({deg, s, u});
            }
        }
        int nv = int(cand.size());
        std::vector<std::vector<Q>> rows;
        auto unit_row = [&](int v, Q rhs) {
            std::vector<Q> r(nv + 1, Q(0));
            r[v] = 1;
            r[nv] = rhs;
            rows.push_back(std::move(r));
        };
        int pinned = -1;
        for (int v = 0; v < nv; ++v)
            if (cand[v].deg == m) {
                if (pinned < 0 && cand[v].t == 0) {
                    pinned = v;
                    unit_row(v, 1);
                }
            }
        if (pinned < 0) return {};
        // (degree of dom source, dom summand, cod summand, tag pair) -> row
        std::map<std::tuple<int, int, int, int, int>, std::vector<Q>> eq;
        auto add = [&](int deg, int s, int u, int k, int v, long long c) {
            auto& r = eq[{deg, s, u, std::min(i, k), std::max(i, k)}];
            if (r.empty()) r.assign(nv + 1, Q(0));
            r[v] += c;
        };
        for (int v = 0; v < nv; ++v) {
            auto [deg, s, u] = cand[v];
            for (auto& a : dom.diff(deg - 1)) {
                int k = a.tag.vertex;
                if (a.tgt == s && !(k != i && (q.has_path(i, k) || q.has_path(k, i)))) add(deg - 1, a.src, u, k, v, a.coeff);
            }
            for (auto& b : cod.diff(deg)) {
                int k = b.tag.vertex;
                if (b.src == u && !(k != i && (q.has_path(k, i) || q.has_path(i, k)))) add(deg, s, b.tgt, k, v, -b.coeff);
            }
        }
        for (auto& [k, r] : eq) rows.push_back(r);
        // Gauss-Jordan elimination
        std::vector<int> pivot_of(nv, -1);
        int rank = 0;
        for (int col = 0; col < nv && rank < int(rows.size()); ++col) {
            int piv = -1;
            for (int r = rank; r < int(rows.size()); ++r)
                if (rows[r][col] != Q(0)) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(rows[rank], rows[piv]);
            Q lead = rows[rank][col];
            for (auto& x : rows[rank]) x /= lead;
            for (int r = 0; r < int(rows.size()); ++r)
                if (r != rank && rows[r][col] != Q(0)) {
                    Q f = rows[r][col];
                    for (int c = col; c <= nv; ++c) rows[r][c] -= f * rows[rank][c];
                }
            pivot_of[col] = rank++;
        }
        for (int r = rank; r < int(rows.size()); ++r)
            if (rows[r][nv] != Q(0)) throw Error(Errc::InconsistentConnector, "no chain map with these components");
        std::vector<Q> val(nv, Q(0));
        for (int v = 0; v < nv; ++v)
            if (pivot_of[v] >= 0) val[v] = rows[pivot_of[v]][nv];
        long long scale = 1;
        for (auto& x : val) scale = std::lcm(scale, x.denominator());
        std::map<int, std::vector<Component>> conn;
        for (int v = 0; v < nv; ++v)
            if (val[v] != Q(0))
                conn[cand[v].deg].push_back({cand[v].s, cand[v].t, {Tag::Kind::ConeConnector, i},
                                             static_cast<int>((val[v] * scale).numerator())});
        return conn;
    }

    const Context& ctx_;
    std::mutex m_;
    std::map<Root, FractionComplex> memo_;
};

/// Tag-level check of d^2 = 0. A two-step path eta_i, eta_j with i != j and
/// i, j comparable under ~> is exempt, since one order is identically zero;
/// every other path must cancel against the transposed path.
inline std::vector<std::string> verify_d_squared(const Context& ctx, const Complex& C) {
    std::vector<std::string> bad;
    const auto& q = ctx.quiver();
    for (auto& [n, d1] : C.diffs) {
        auto d2 = C.diff(n + 1);
        // (src, tgt, unordered tag pair) -> summed coefficient
        std::map<std::tuple<int, int, std::string>, int> bucket;
        for (auto& a : d1)
            for (auto& b : d2) {
                if (b.src != a.tgt) continue;
                if (a.tag.is_eta() && b.tag.is_eta() && a.tag.vertex != b.tag.vertex &&
                    (q.has_path(b.tag.vertex, a.tag.vertex) || q.has_path(a.tag.vertex, b.tag.vertex)))
                    continue;
                std::string k1 = a.tag.is_eta() ? std::to_string(a.tag.vertex) : "id";
                std::string k2 = b.tag.is_eta() ? std::to_string(b.tag.vertex) : "id";
                std::string key = std::min(k1, k2) + "|" + std::max(k1, k2);
                bucket[{a.src, b.tgt, key}] += a.coeff * b.coeff;
            }
        for (auto& [k, v] : bucket)
            if (v != 0) {
                auto& [s, t, tags] = k;
                bad.push_back("degree " + std::to_string(n) + ": summand " + std::to_string(s) + " -> " +
                              std::to_string(t) + " via {" + tags + "} does not cancel");
            }
    }
    return bad;
}

/// Every component is eta_j on a summand that is tiltable at j, contains the
/// anchor, and whose tilt at tau x_j is the target.
inline std::vector<std::string> verify_components(const Context& ctx, const Complex& C, const ZVertex& anchor) {
    std::vector<std::string> bad;
    for (auto& [n, comps] : C.diffs)
        for (auto& c : comps) {
            std::string where = "degree " + std::to_string(n) + " component " + std::to_string(c.src) + "->" +
                                std::to_string(c.tgt);
            if (!c.tag.is_eta()) {
                bad.push_back(where + " is not an eta morphism");
                continue;
            }
            const Obj& s = C.at(n).at(c.src);
            const Obj& t = C.at(n + 1).at(c.tgt);
            auto tl = tiltable(ctx, s);
            if (std::find(tl.begin(), tl.end(), c.tag.vertex) == tl.end()) {
                bad.push_back(where + ": source not tiltable at " + std::to_string(c.tag.vertex));
                continue;
            }
            if (!s.ms.count(anchor)) bad.push_back(where + ": anchor missing from source");
            if (!is_iso(ctx, serre_tilt(ctx, s, {{ctx.tx(c.tag.vertex), 1}}), t))
                bad.push_back(where + ": target is not the tilt of the source");
        }
    return bad;
}

/// Degree-0 term is Y[beta] (x) (denominator object).
inline bool degree_zero_identity(const Context& ctx, const FractionComplex& fc, const Root& beta) {
    const auto& t0 = fc.num.at(0);
    if (t0.size() != 1) return false;
    Obj want = beta.negative_simple() ? object_H(ctx, beta.negative_simple()) : leading_object(ctx, beta);
    return is_iso(ctx, t0[0], tensor(want, denominator_object(ctx, fc.den)));
}

/// Structural exactness report for small rank.
inline std::vector<std::string> verify_exactness_smallrank(const Context& ctx, const FractionComplex& fc, const Root& beta,
                                                           int max_rank = 3) {
    std::vector<std::string> bad;
    if (ctx.rank() > max_rank) return {"rank above the configured bound"};
    const Complex& C = fc.num;
    if (C.min_degree() < 0) bad.push_back("term in negative degree");
    if (C.at(0).size() != 1) bad.push_back("degree 0 is not a single summand");
    else
        try {
            dominant_exponents(ctx, C.at(0)[0]);
        } catch (const Error&) {
            bad.push_back("degree 0 term is not dominant");
        }
    std::set<int> allowed;
    for (int i : beta.support()) allowed.insert(i);
    for (int i = 1; i <= int(fc.den.size()); ++i)
        if (fc.den[i - 1]) allowed.insert(i);
    for (auto& [n, comps] : C.diffs)
        for (auto& c : comps)
            if (!c.tag.is_eta() || !allowed.count(c.tag.vertex))
                bad.push_back("degree " + std::to_string(n) + ": component with tag " + c.tag.str() +
                              " outside the allowed eta morphisms");
    const auto& q = ctx.quiver();
    std::set<int> base;
    if (C.at(0).size() == 1)
        for (int k : tiltable(ctx, C.at(0)[0]))
            if (beta[k] > 0) base.insert(k);
    for (auto& [n, terms] : C.terms) {
        if (n == 0) continue;
        auto in = C.diff(n - 1), out = C.diff(n);
        for (int s = 0; s < int(terms.size()); ++s) {
            std::set<int> inc, outg;
            for (auto& c : in)
                if (c.tgt == s) inc.insert(c.tag.vertex);
            for (auto& c : out)
                if (c.src == s) outg.insert(c.tag.vertex);
            if (inc.empty()) continue;
            for (int k : tiltable(ctx, terms[s])) {
                if (!base.count(k)) continue;
                bool killed = true;
                for (int i : inc) killed &= (k != i && q.has_path(k, i));
                if (killed && !outg.count(k))
                    bad.push_back("degree " + std::to_string(n) + " summand " + std::to_string(s) + ": eta" +
                                  std::to_string(k) + " is killed by the incoming differential but is not a component of the outgoing one");
            }
        }
    }
    return bad;
}

inline nlohmann::json to_json(const FractionComplex& fc) {
    nlohmann::json j;
    j["den"] = fc.den;
    j["terms"] = nlohmann::json::object();
    for (auto& [n, v] : fc.num.terms) {
        auto& arr = j["terms"][std::to_string(n)];
        arr = nlohmann::json::array();
        for (auto& o : v) arr.push_back(to_json(o));
    }
    j["diffs"] = nlohmann::json::object();
    for (auto& [n, v] : fc.num.diffs) {
        auto& arr = j["diffs"][std::to_string(n)];
        arr = nlohmann::json::array();
        for (auto& c : v) arr.push_back({{"src", c.src}, {"tgt", c.tgt}, {"tag", c.tag.str()}, {"coeff", c.coeff}});
    }
    return j;
}

/// One line per summand (degree, index, class), then one per differential component.
inline std::string terms_text(const FractionComplex& fc) {
    std::ostringstream os;
    for (auto& [n, v] : fc.num.terms)
        for (std::size_t k = 0; k < v.size(); ++k)
            os << n << "\t" << k << "\t" << (v[k].kclass ? v[k].kclass->str() : "?") << "\n";
    for (auto& [n, v] : fc.num.diffs)
        for (auto& c : v)
            os << "d" << n << "\t" << c.src << "->" << c.tgt << "\t" << c.coeff << "*" << c.tag.str() << "\n";
    return os.str();
}

} // namespace qq
