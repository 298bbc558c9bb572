#include "qq/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

/// A path to a JSON file, or the JSON text itself when it starts with '{'.
nlohmann::json load_json(const std::string& arg) {
    std::string text = arg;
    if (arg.empty() || arg.front() != '{') {
        std::ifstream in(arg);
        if (!in) throw qq::Error(qq::Errc::BadInput, "cannot read '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw qq::Error(qq::Errc::BadInput, std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hammock objects, exact complexes and truncated q-characters for Dynkin quivers"};
    app.require_subcommand(1);

    qq::cli::RunConfig c;
    std::string quiver_arg, config_arg, out_path;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--quiver", quiver_arg, "Quiver config: JSON file or inline JSON");
        s->add_option("--config", config_arg, "Run config JSON; flags given on the command line override it");
        s->add_option("--format", c.format, "Output format: text|tsv|json|dot");
        s->add_option("--out", out_path, "Write output to this file");
    };

    auto* roots = app.add_subcommand("roots", "Positive roots with m_beta, Supp and I(beta)");
    add_common(roots);

    auto* hammock = app.add_subcommand("hammock", "Values of a hammock function on a window of ZQ");
    add_common(hammock);
    hammock->add_option("--vertex", c.vertex, "Vertex 'i,p' of ZQ");
    hammock->add_option("--window", c.window, "Window 'pmin,pmax'");

    auto* complex = app.add_subcommand("complex", "The complex C[beta]");
    add_common(complex);
    complex->add_option("--beta", c.beta, "Root 'a1,...,an'");
    complex->add_option("--emit", c.emit, "terms|json|chi");

    auto* qchar = app.add_subcommand("qchar", "Truncated q-character of L[beta]");
    add_common(qchar);
    qchar->add_option("--beta", c.beta, "Root 'a1,...,an'");
    qchar->add_option("--route", c.route, "euler|cluster|recursion|all");

    auto* cluster = app.add_subcommand("cluster", "Cluster variables of A_Q");
    add_common(cluster);
    cluster->add_flag("--list", c.list, "List every variable keyed by d-vector");

    auto* verify = app.add_subcommand("verify", "Sweep of all checks over quivers and roots");
    add_common(verify);
    verify->add_option("--types", c.types, "Comma-separated Dynkin types");
    verify->add_option("--max-rank", c.max_rank, "Largest rank swept");
    verify->add_option("--orientations", c.orientations, "all|random:k");
    verify->add_option("--seed", c.seed, "Seed of the orientation sampler");
    verify->add_flag("--inject-nu", c.inject_nu, "Replace the Nakayama table by a wrong one");

    auto* ar = app.add_subcommand("ar-view", "DOT drawing of a window of ZQ");
    add_common(ar);
    ar->add_option("--window", c.window, "Window 'pmin,pmax'");
    ar->add_option("--vertex", c.vertex, "Overlay dim Hom from vertex 'i,p'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : qq::cli::Invalid;
    }

    qq::cli::Output o;
    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_arg.empty()) {
            qq::cli::RunConfig base = qq::cli::RunConfig::from_json(load_json(config_arg));
            auto given = [&](const char* flag) { return sub->get_option_no_throw(flag) && sub->count(flag) > 0; };
            if (!given("--format")) c.format = base.format;
            if (!given("--vertex")) c.vertex = base.vertex;
            if (!given("--window")) c.window = base.window;
            if (!given("--beta")) c.beta = base.beta;
            if (!given("--emit")) c.emit = base.emit;
            if (!given("--route")) c.route = base.route;
            if (!given("--list")) c.list = base.list;
            if (!given("--types")) c.types = base.types;
            if (!given("--max-rank")) c.max_rank = base.max_rank;
            if (!given("--orientations")) c.orientations = base.orientations;
            if (!given("--seed")) c.seed = base.seed;
            if (!given("--inject-nu")) c.inject_nu = base.inject_nu;
            c.quiver = base.quiver;
        }
        c.command = sub->get_name();
        if (!quiver_arg.empty()) c.quiver = load_json(quiver_arg);
        if (c.quiver.is_null() && c.command != "verify")
            throw qq::Error(qq::Errc::BadInput, "--quiver is required for " + c.command);
        o = qq::cli::run(c);
    } catch (const qq::Error& e) {
        o = {qq::cli::Invalid, "", std::string(e.what()) + "\n"};
    }

    std::cerr << o.err;
    if (out_path.empty()) {
        std::cout << o.out;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return qq::cli::Invalid;
        }
        f << o.out;
    }
    return o.code;
}
