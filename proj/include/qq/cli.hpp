#pragma once

#include "qq/qchar.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qq::cli {

using nlohmann::json;

/// Process exit codes.
enum Exit : int { Ok = 0, Failed = 1, Invalid = 2 };

struct Output {
    int code = Ok;
    std::string out;
    std::string err;
};

inline void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw Error(Errc::BadInput, where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            throw Error(Errc::BadInput, "unknown key '" + it.key() + "' in " + where);
}

/// Quiver config: {"type":"A","rank":4,"arrows":[[1,2],[2,3],[4,3]],"xi":{"1":1}}.
inline Context parse_quiver(const json& j) {
    reject_unknown(j, {"type", "rank", "arrows", "xi"}, "quiver config");
    try {
        DynkinType t = parse_type(j.at("type").get<std::string>());
        int n = j.at("rank").get<int>();
        std::vector<std::pair<int, int>> arrows;
        for (auto& a : j.at("arrows")) {
            if (!a.is_array() || a.size() != 2) throw Error(Errc::BadInput, "arrow must be a pair [source, target]");
            arrows.emplace_back(a[0].get<int>(), a[1].get<int>());
        }
        DynkinQuiver q = build_quiver(t, n, arrows);
        if (!j.contains("xi")) return Context(q);
        const json& x = j.at("xi");
        if (!x.is_object() || x.empty()) throw Error(Errc::BadInput, "xi must be a non-empty object");
        std::vector<std::pair<int, int>> given;
        for (auto it = x.begin(); it != x.end(); ++it) {
            std::size_t used = 0;
            int v = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw Error(Errc::BadInput, "xi key '" + it.key() + "' is not a vertex");
            given.emplace_back(v, it.value().get<int>());
        }
        HeightFunction xi = default_height(q, given.front());
        for (auto [v, val] : given)
            if (v < 1 || v > n || xi(v) != val)
                throw Error(Errc::ParityViolation, "xi is not adapted at vertex " + std::to_string(v));
        return Context(q, xi);
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, std::string("quiver config: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(Errc::BadInput, "quiver config: xi keys must be vertex labels");
    }
}

inline std::vector<int> parse_ints(const std::string& s, const std::string& what) {
    std::vector<int> r;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            r.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(Errc::BadInput, what + ": '" + tok + "' is not an integer");
        }
    }
    return r;
}

inline Root parse_root(const std::string& s, int n) {
    auto v = parse_ints(s, "beta");
    if (int(v.size()) != n)
        throw Error(Errc::BadInput, "beta needs " + std::to_string(n) + " coefficients, got " + std::to_string(v.size()));
    return Root(v);
}

/// Positive root or negative simple root of the quiver, else UnknownRoot.
inline Root require_root(const Context& ctx, const Root& beta) {
    if (beta.negative_simple()) return beta;
    auto roots = positive_roots(ctx.quiver());
    if (std::find(roots.begin(), roots.end(), beta) == roots.end())
        throw Error(Errc::UnknownRoot, beta.str() + " is not a positive or negative simple root");
    return beta;
}

struct RunConfig {
    std::string command;
    json quiver;
    std::string beta;
    std::string route = "all";
    std::string format = "text";
    std::string emit = "terms";
    std::string window;
    std::string vertex;
    std::string types = "A,D";
    std::string orientations = "all";
    std::uint64_t seed = 1;
    int max_rank = 3;
    bool list = false;
    bool inject_nu = false;

    /// Same fields as the command-line flags; unknown keys are rejected.
    static RunConfig from_json(const json& j) {
        reject_unknown(j, {"command", "quiver", "beta", "route", "format", "emit", "window", "vertex", "types",
                           "orientations", "seed", "max_rank", "list", "inject_nu"},
                       "run config");
        RunConfig c;
        try {
            c.command = j.at("command").get<std::string>();
            if (j.contains("quiver")) c.quiver = j.at("quiver");
            auto str = [&](const char* k, std::string& dst) {
                if (j.contains(k)) dst = j.at(k).get<std::string>();
            };
            str("beta", c.beta);
            str("route", c.route);
            str("format", c.format);
            str("emit", c.emit);
            str("window", c.window);
            str("vertex", c.vertex);
            str("types", c.types);
            str("orientations", c.orientations);
            if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("max_rank")) c.max_rank = j.at("max_rank").get<int>();
            if (j.contains("list")) c.list = j.at("list").get<bool>();
            if (j.contains("inject_nu")) c.inject_nu = j.at("inject_nu").get<bool>();
        } catch (const json::exception& e) {
            throw Error(Errc::BadInput, std::string("run config: ") + e.what());
        }
        return c;
    }
};

inline void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* f) { return c.format == f; }))
        throw Error(Errc::BadInput, "format '" + c.format + "' is not available for " + c.command);
}

inline std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

inline std::pair<int, int> parse_window(const std::string& s, int lo, int hi) {
    if (s.empty()) return {lo, hi};
    auto v = parse_ints(s, "window");
    if (v.size() != 2) throw Error(Errc::BadInput, "window must be 'pmin,pmax'");
    return {v[0], v[1]};
}

inline ZVertex parse_vertex(const Context& ctx, const std::string& s) {
    auto v = parse_ints(s, "vertex");
    if (v.size() != 2) throw Error(Errc::BadInput, "vertex must be 'i,p'");
    ZVertex x{v[0], v[1]};
    if (!ctx.zq().valid(x)) throw Error(Errc::BadInput, "(" + x.str() + ") is not a vertex of ZQ");
    return x;
}

inline Output cmd_roots(const RunConfig& c) {
    require_format(c, {"text", "tsv", "json"});
    Context ctx = parse_quiver(c.quiver);
    const auto& q = ctx.quiver();
    Output o;
    json rows = json::array();
    std::string tsv = "beta\theight\tm_beta\tsupp\tI\n";
    for (auto& beta : positive_roots(q)) {
        auto bd = beta_combinatorics(q, ctx.xi(), beta);
        Monomial m = dominant_monomial(ctx, beta);
        rows.push_back({{"beta", beta.a},
                        {"height", beta.height()},
                        {"m_beta", monomial_json(m)},
                        {"supp", bd.supp},
                        {"I", bd.I}});
        tsv += beta.str() + "\t" + std::to_string(beta.height()) + "\t" + m.str() + "\t" + join(bd.supp) + "\t" +
               join(bd.I) + "\n";
    }
    o.out = c.format == "json" ? rows.dump(2) + "\n" : tsv;
    return o;
}

inline Output cmd_hammock(const RunConfig& c) {
    require_format(c, {"text", "tsv", "dot", "json"});
    Context ctx = parse_quiver(c.quiver);
    if (c.vertex.empty()) throw Error(Errc::BadInput, "hammock needs --vertex i,p");
    ZVertex x = parse_vertex(ctx, c.vertex);
    int h = ctx.zq().coxeter();
    auto [pmin, pmax] = parse_window(c.window, x.p - h, x.p + h);
    QFun f = QFun::hammock(x);
    Output o;
    if (c.format == "dot") {
        o.out = zq_dot(
            ctx.zq(), pmin, pmax, [&](const ZVertex& y) { return std::optional<std::string>(std::to_string(ctx.eval(f, y))); },
            {x});
        return o;
    }
    auto grid = pmax < pmin ? std::vector<std::vector<std::optional<long long>>>{} : ctx.eval_window(f, pmin, pmax);
    if (c.format == "json") {
        json rows = json::array();
        for (auto& r : grid) {
            json row = json::array();
            for (auto& v : r) row.push_back(v ? json(*v) : json(nullptr));
            rows.push_back(row);
        }
        o.out = json{{"vertex", {x.i, x.p}}, {"pmin", pmin}, {"pmax", pmax}, {"rows", rows}}.dump(2) + "\n";
        return o;
    }
    if (grid.empty()) return o;
    std::string s = "i\\p";
    for (int p = pmin; p <= pmax; ++p) s += "\t" + std::to_string(p);
    s += "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s += std::to_string(i + 1);
        for (auto& v : grid[i]) s += "\t" + (v ? std::to_string(*v) : std::string("."));
        s += "\n";
    }
    o.out = s;
    return o;
}

inline Output cmd_complex(const RunConfig& c) {
    Context ctx = parse_quiver(c.quiver);
    Root beta = require_root(ctx, parse_root(c.beta, ctx.rank()));
    ComplexBuilder b(ctx);
    FractionComplex fc = b.build(beta);
    Output o;
    if (c.emit == "terms") {
        o.out = "den\t" + join(fc.den) + "\n" + terms_text(fc);
    } else if (c.emit == "json") {
        o.out = to_json(fc).dump(2) + "\n";
    } else if (c.emit == "chi") {
        LaurentPoly chi = euler_char(ctx, fc);
        o.out = c.format == "json" ? poly_json(chi).dump(2) + "\n" : poly_tsv(chi);
    } else {
        throw Error(Errc::BadInput, "emit must be terms, json or chi");
    }
    return o;
}

inline Output cmd_qchar(const RunConfig& c) {
    require_format(c, {"text", "tsv", "json"});
    Context ctx = parse_quiver(c.quiver);
    Root beta = require_root(ctx, parse_root(c.beta, ctx.rank()));
    std::vector<std::string> routes;
    if (c.route == "all") routes = {"euler", "cluster", "recursion"};
    else if (c.route == "euler" || c.route == "cluster" || c.route == "recursion") routes = {c.route};
    else throw Error(Errc::BadInput, "route must be euler, cluster, recursion or all");
    std::map<std::string, LaurentPoly> res;
    for (auto& r : routes) {
        if (r == "euler") {
            ComplexBuilder b(ctx);
            res[r] = qchar_euler(b, beta);
        } else if (r == "cluster") {
            res[r] = qchar_cluster(ctx, enumerate_cluster_variables(ctx.quiver()), beta);
        } else {
            if (int i = beta.negative_simple()) res[r] = LaurentPoly(Monomial(Var::Y_(i, ctx.xi()(i))));
            else res[r] = QcharRecursion(ctx)(beta);
        }
    }
    Output o;
    bool equal = true;
    for (auto& [k, p] : res) equal &= p == res.begin()->second;
    if (c.format == "json") {
        json j{{"beta", beta.a}, {"routes", json::object()}};
        for (auto& r : routes) j["routes"][r] = poly_json(res[r]);
        if (routes.size() > 1) j["verdict"] = equal ? "pass" : "fail";
        o.out = j.dump(2) + "\n";
    } else {
        for (auto& r : routes) o.out += "# " + r + "\n" + poly_tsv(res[r]);
        if (routes.size() > 1) o.out += std::string("verdict\t") + (equal ? "pass" : "fail") + "\n";
    }
    if (!equal) o.code = Failed;
    return o;
}

inline Output cmd_cluster(const RunConfig& c) {
    require_format(c, {"text", "json"});
    Context ctx = parse_quiver(c.quiver);
    const auto& q = ctx.quiver();
    ClusterTable t = enumerate_cluster_variables(q);
    std::size_t want = positive_roots(q).size() + std::size_t(q.rank());
    json j{{"quiver", q.str()}, {"seeds", t.seeds}, {"count", t.vars.size()}, {"expected", want},
           {"problems", t.problems}};
    if (c.list) {
        j["variables"] = json::object();
        for (auto& [d, p] : t.vars) j["variables"][d.str()] = poly_json(p);
    }
    Output o;
    o.out = j.dump(2) + "\n";
    if (!t.problems.empty() || t.vars.size() != want) o.code = Failed;
    return o;
}

/// Orientation numbers to sweep: all of them, or k distinct ones drawn from `rng`.
inline std::vector<std::uint64_t> pick_orientations(const std::string& choice, std::uint64_t count, std::mt19937_64& rng) {
    std::vector<std::uint64_t> r;
    if (choice == "all") {
        for (std::uint64_t m = 0; m < count; ++m) r.push_back(m);
        return r;
    }
    if (choice.rfind("random:", 0) != 0) throw Error(Errc::BadInput, "orientations must be 'all' or 'random:k'");
    auto k = parse_ints(choice.substr(7), "orientations");
    if (k.size() != 1 || k[0] < 1) throw Error(Errc::BadInput, "random:k needs a positive k");
    if (std::uint64_t(k[0]) >= count) return pick_orientations("all", count, rng);
    std::set<std::uint64_t> s;
    while (s.size() < std::size_t(k[0])) s.insert(rng() % count);
    return {s.begin(), s.end()};
}

inline std::vector<int> sweep_ranks(DynkinType t, int max_rank) {
    int lo = t == DynkinType::A ? 1 : t == DynkinType::D ? 4 : 6;
    int hi = t == DynkinType::E ? std::min(max_rank, 8) : max_rank;
    std::vector<int> r;
    for (int n = lo; n <= hi; ++n) r.push_back(n);
    return r;
}

/// A Nakayama table that differs from the true one at every rank.
inline void inject_wrong_nu(Context& ctx) {
    int n = ctx.rank();
    std::vector<int> nu(n);
    for (int i = 1; i <= n; ++i) nu[i - 1] = ctx.zq().nu(i);
    int h = ctx.zq().coxeter();
    if (n >= 2) std::swap(nu[0], nu[1]);
    else h += 2;
    ctx.override_serre_data(nu, h);
}

struct QuiverReport {
    std::string name;
    std::size_t roots = 0;
    std::map<std::string, std::size_t> passed;
    std::vector<std::string> failures;
    std::size_t serre_violations = 0;
    bool ok() const { return failures.empty() && serre_violations == 0; }
};

inline const std::vector<std::string>& clause_names() {
    static const std::vector<std::string> names{"routes_equal", "highest", "lowest",  "positive",  "top_one",
                                                "d_squared",    "degree0", "components", "choice", "exactness"};
    return names;
}

/// Per-root checks of the sweep, counted into `rep`.
inline void verify_roots(const Context& ctx, QuiverReport& rep) {
    const DynkinQuiver& q = ctx.quiver();
    ComplexBuilder b(ctx);
    QcharRecursion rec(ctx);
    ClusterTable tab = enumerate_cluster_variables(q);
    ZVertex anchor = anchor_object(ctx);
    for (auto& beta : positive_roots(q)) {
        ++rep.roots;
        std::vector<std::string> bad;
        auto mark = [&](const std::string& clause, bool ok) {
            if (ok) ++rep.passed[clause];
            else bad.push_back(clause);
        };
        BetaReport r = verify_beta(ctx, b, rec, tab, beta);
        if (!r.error.empty()) bad.push_back(r.error);
        mark("routes_equal", r.error.empty() && r.routes_equal);
        mark("highest", r.error.empty() && r.highest_ok);
        mark("lowest", r.error.empty() && r.lowest_ok);
        mark("positive", r.error.empty() && r.positive);
        mark("top_one", r.error.empty() && r.top_one);
        try {
            FractionComplex fc = b.build(beta);
            mark("d_squared", verify_d_squared(ctx, fc.num).empty());
            mark("degree0", degree_zero_identity(ctx, fc, beta));
            mark("components", verify_components(ctx, fc.num, anchor).empty());
            bool same = true;
            for (int i : beta_combinatorics(q, ctx.xi(), beta).I)
                same &= euler_char(ctx, b.build(beta, i), -1) == euler_char(ctx, fc, -1);
            mark("choice", same);
            mark("exactness", q.rank() > 3 || verify_exactness_smallrank(ctx, fc, beta).empty());
        } catch (const std::exception& e) {
            bad.push_back(e.what());
        }
        if (!bad.empty()) {
            std::string s = beta.str() + ":";
            for (auto& x : bad) s += " " + x;
            rep.failures.push_back(s);
        }
    }
}

/// Every check of the sweep for one quiver.
inline QuiverReport verify_quiver(const DynkinQuiver& q, bool inject_nu) {
    QuiverReport rep;
    rep.name = q.str();
    Context ctx(q);
    if (inject_nu) inject_wrong_nu(ctx);
    int h = ctx.zq().coxeter();
    rep.serre_violations = check_serre_duality(ctx, -h, h + 2).size();
    if (rep.serre_violations) rep.failures.push_back("serre duality: " + std::to_string(rep.serre_violations) + " violations");
    for (auto& n : clause_names()) rep.passed[n] = 0;
    try {
        verify_roots(ctx, rep);
    } catch (const std::exception& e) {
        rep.failures.push_back(e.what());
    }
    return rep;
}

inline Output cmd_verify(const RunConfig& c) {
    require_format(c, {"text", "json"});
    std::mt19937_64 rng(c.seed);
    std::vector<DynkinType> types;
    std::stringstream ss(c.types);
    for (std::string tok; std::getline(ss, tok, ',');) types.push_back(parse_type(tok));
    if (types.empty()) throw Error(Errc::BadInput, "no types to verify");
    json quivers = json::array();
    std::map<std::string, std::size_t> totals;
    std::size_t nroots = 0, nquivers = 0;
    bool all_ok = true;
    for (DynkinType t : types)
        for (int n : sweep_ranks(t, c.max_rank))
            for (std::uint64_t m : pick_orientations(c.orientations, orientation_count(t, n), rng)) {
                QuiverReport r = verify_quiver(orientation(t, n, m), c.inject_nu);
                ++nquivers;
                nroots += r.roots;
                for (auto& [k, v] : r.passed) totals[k] += v;
                all_ok &= r.ok();
                quivers.push_back({{"quiver", r.name},
                                   {"orientation", m},
                                   {"roots", r.roots},
                                   {"passed", r.passed},
                                   {"serre_violations", r.serre_violations},
                                   {"failures", r.failures}});
            }
    json rep{{"seed", c.seed},
             {"types", c.types},
             {"max_rank", c.max_rank},
             {"orientations", c.orientations},
             {"quivers", quivers},
             {"totals", {{"quivers", nquivers}, {"roots", nroots}, {"passed", totals}}},
             {"pass", all_ok}};
    Output o;
    if (c.format == "json") {
        o.out = rep.dump(2) + "\n";
    } else {
        for (auto& q : quivers)
            o.out += q["quiver"].get<std::string>() + "\t" + std::to_string(q["roots"].get<std::size_t>()) + " roots\t" +
                     (q["failures"].empty() ? "pass" : "FAIL") + "\n";
        o.out += "total\t" + std::to_string(nquivers) + " quivers\t" + std::to_string(nroots) + " roots\t" +
                 (all_ok ? "pass" : "FAIL") + "\n";
    }
    if (!all_ok) o.code = Failed;
    return o;
}

/// DOT view of a window of ZQ with the frontier x_i, tau x_i filled; with a
/// vertex, nodes carry dim Hom from it.
inline Output cmd_ar_view(const RunConfig& c) {
    require_format(c, {"text", "dot"});
    Context ctx = parse_quiver(c.quiver);
    int h = ctx.zq().coxeter();
    int lo = 1 << 30, hi = -(1 << 30);
    for (int i = 1; i <= ctx.rank(); ++i) lo = std::min(lo, ctx.xi()(i) - 2), hi = std::max(hi, ctx.xi()(i));
    auto [pmin, pmax] = parse_window(c.window, lo - h, hi + h);
    std::vector<ZVertex> frontier;
    for (int i = 1; i <= ctx.rank(); ++i) frontier.push_back(ctx.x(i)), frontier.push_back(ctx.tx(i));
    std::function<std::optional<std::string>(const ZVertex&)> label;
    if (!c.vertex.empty()) {
        ZVertex x = parse_vertex(ctx, c.vertex);
        label = [&ctx, x](const ZVertex& y) { return std::optional<std::string>(std::to_string(ctx.dim_hom(x, y))); };
    }
    Output o;
    o.out = zq_dot(ctx.zq(), pmin, pmax, label, frontier);
    return o;
}

/// Dispatch; library errors become exit code 2 (bad input) or 1 (failed check).
inline Output run(const RunConfig& c) {
    try {
        if (c.command == "roots") return cmd_roots(c);
        if (c.command == "hammock") return cmd_hammock(c);
        if (c.command == "complex") return cmd_complex(c);
        if (c.command == "qchar") return cmd_qchar(c);
        if (c.command == "cluster") return cmd_cluster(c);
        if (c.command == "verify") return cmd_verify(c);
        if (c.command == "ar-view") return cmd_ar_view(c);
        throw Error(Errc::BadInput, "unknown command '" + c.command + "'");
    } catch (const Error& e) {
        switch (e.code()) {
        case Errc::InconsistentConnector:
        case Errc::InexactDivision:
        case Errc::Incomparable:
        case Errc::NotDominant:
            return {Failed, "", std::string(e.what()) + "\n"};
        default:
            return {Invalid, "", std::string(e.what()) + "\n"};
        }
    }
}

} // namespace qq::cli
