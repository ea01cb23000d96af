#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "entwine/dsl.hpp"
#include "entwine/parallel.hpp"
#include "entwine/render.hpp"
#include "entwine/report.hpp"

using namespace entwine;

namespace {

struct Options {
    int window = 5;
    int degree = 3;
    std::uint64_t seed = 42;
    std::string json_path;
    bool serial = false;
    std::vector<std::string> params;
};

int env_default(const char* name, int fallback) {
    const char* v = std::getenv(name);
    return v ? std::atoi(v) : fallback;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--window", o.window, "group-like basis window [-W, W]");
    cmd->add_option("--degree", o.degree, "monomial degree bound for sweeps");
    cmd->add_option("--seed", o.seed, "seed for randomized property sweeps");
    cmd->add_option("--json", o.json_path, "write the JSON report to this path");
    cmd->add_option("--param", o.params, "override a document parameter (name=value)");
    cmd->add_flag("--serial", o.serial, "run sweeps on the serial reference path");
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw EngineError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

DslDocument load_doc(const std::string& path, const Options& o) {
    DslDocument doc = parse_document(slurp(path));
    for (const auto& pv : o.params) {
        auto eq = pv.find('=');
        if (eq == std::string::npos)
            throw EngineError("bad --param '" + pv + "', expected name=value");
        doc.params[pv.substr(0, eq)] = std::stoi(pv.substr(eq + 1));
    }
    return doc;
}

int emit(const BundleReport& rep, const Options& o) {
    std::cout << report_summary(rep);
    if (!o.json_path.empty()) {
        std::ofstream out(o.json_path, std::ios::binary);
        if (!out) throw EngineError("cannot write report to " + o.json_path);
        out << report_json(rep);
    }
    return rep.pass() ? 0 : 1;
}

StageResult stage_of(const std::string& name, const AxiomReport& r) {
    return {name, r.pass(), "", r.clauses};
}

int run_check(const std::string& which, const std::string& file, const Options& o) {
    DslDocument doc = load_doc(file, o);
    Bundle b = assemble(doc);
    if (which == "all") return emit(verify_bundle(b, o.window, o.degree, o.seed), o);

    BundleReport rep;
    rep.bundle = b.name;
    rep.window = o.window;
    rep.degree_bound = o.degree;
    rep.seed = o.seed;
    try {
        if (which == "confluence") {
            AmbiguityReport pa = check_confluence(b.data.presentation(), std::max(o.degree, 4));
            AmbiguityReport ma = check_confluence(*b.mpres, std::max(o.degree, 4));
            StageResult st{"confluence", pa.confluent() && ma.confluent(), "", {}};
            if (!st.pass)
                st.error = std::to_string(pa.unresolved.size() + ma.unresolved.size()) +
                           " unresolved overlap(s)";
            rep.stages.push_back(st);
        } else if (which == "entwine") {
            rep.stages.push_back(stage_of("entwining", verify_entwining(b.data, o.window, o.degree)));
        } else if (which == "psic") {
            rep.stages.push_back(stage_of("psiC", verify_psiC(b.data, o.window)));
        } else {
            CrossedData cd = cleft_data(b.phi, b.data, b.solver, o.window, o.degree);
            if (which == "cleft") {
                rep.stages.push_back({"cleft", true, "", {}});
                rep.stages.push_back(compare_tables(b, cd, o.window));
            } else if (which == "conditions") {
                rep.stages.push_back(
                    stage_of("conditions", verify_conditions(cd, o.window, o.degree)));
            } else if (which == "iso") {
                rep.stages.push_back(
                    stage_of("theta", verify_theta(cd, o.window, o.degree, o.seed)));
            } else {
                throw EngineError("unknown check stage: " + which);
            }
        }
    } catch (const EngineError& e) {
        rep.stages.push_back({which, false, e.what(), {}});
    }
    return emit(rep, o);
}

int run_gauge(const std::string& file, const std::string& name, const Options& o) {
    DslDocument doc = load_doc(file, o);
    Bundle b = assemble(doc);
    BundleReport rep;
    rep.bundle = b.name + ":gauge:" + name;
    rep.window = o.window;
    rep.degree_bound = o.degree;
    rep.seed = o.seed;
    try {
        CrossedData cd = cleft_data(b.phi, b.data, b.solver, o.window, o.degree);
        ConvolutionMap gamma = make_map(doc, b, name);
        CrossedData primed = gauge_transform(cd, gamma, o.window);
        rep.stages.push_back({"admissibility", true, "", {}});
        rep.stages.push_back(
            stage_of("conditions", verify_conditions(primed, o.window, o.degree)));
        bool iso = gauge_iso_multiplicative(primed, cd, gamma, o.window, o.degree, o.seed, 50);
        rep.stages.push_back({"iso", iso, iso ? "" : "gauge comparison map not multiplicative",
                              {}});
    } catch (const EngineError& e) {
        rep.stages.push_back({"admissibility", false, e.what(), {}});
    }
    return emit(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entwine: machine verification of coalgebra crossed products"};
    app.require_subcommand(1);

    Options o;
    o.window = env_default("ENTWINE_WINDOW", 5);
    o.degree = env_default("ENTWINE_DEGREE", 3);

    std::string file, expr1, expr2, stage, map_name, json_out;

    CLI::App* nf = app.add_subcommand("nf", "normal form of an expression");
    nf->add_option("file", file)->required();
    nf->add_option("expr", expr1)->required();
    add_common(nf, o);

    CLI::App* mul = app.add_subcommand("mul", "product of two expressions");
    mul->add_option("file", file)->required();
    mul->add_option("e1", expr1)->required();
    mul->add_option("e2", expr2)->required();
    add_common(mul, o);

    CLI::App* psi = app.add_subcommand("psi", "apply the entwining to c (x) u");
    psi->add_option("file", file)->required();
    psi->add_option("c", expr1)->required();
    psi->add_option("u", expr2)->required();
    add_common(psi, o);

    CLI::App* check = app.add_subcommand("check", "run verification stages");
    check->add_option("stage", stage, "confluence|entwine|psic|cleft|conditions|iso|all")
        ->required();
    check->add_option("file", file)->required();
    add_common(check, o);

    CLI::App* gauge = app.add_subcommand("gauge", "gauge-transform by a declared map");
    gauge->add_option("file", file)->required();
    gauge->add_option("gamma", map_name)->required();
    add_common(gauge, o);

    CLI::App* report = app.add_subcommand("report", "full verification with a JSON report");
    report->add_option("file", file)->required();
    add_common(report, o);

    CLI11_PARSE(app, argc, argv);

    if (o.serial) parallel_config().enabled = false;

    try {
        if (nf->parsed() || mul->parsed() || psi->parsed()) {
            DslDocument doc = load_doc(file, o);
            Bundle b = assemble(doc);
            const Presentation& pres = b.data.presentation();
            ParseEnv env;
            env.vars = doc.params;
            if (nf->parsed()) {
                std::cout << render(parse_element(expr1, pres, env), pres) << "\n";
            } else if (mul->parsed()) {
                AlgebraElement a = parse_element(expr1, pres, env);
                AlgebraElement c = parse_element(expr2, pres, env);
                std::cout << render(multiply(a, c, pres), pres) << "\n";
            } else {
                CoalgebraElement c = parse_c_element(expr1, b.data.coalgebra(), env);
                AlgebraElement u = parse_element(expr2, pres, env);
                std::cout << render(extend_psi(c, u, b.data), pres, b.data.coalgebra()) << "\n";
            }
            return 0;
        }
        if (check->parsed()) return run_check(stage, file, o);
        if (gauge->parsed()) return run_gauge(file, map_name, o);
        if (report->parsed()) {
            DslDocument doc = load_doc(file, o);
            Bundle b = assemble(doc);
            return emit(verify_bundle(b, o.window, o.degree, o.seed), o);
        }
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
