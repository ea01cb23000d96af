#include <fstream>
#include <sstream>

#include "doctest.h"
#include "entwine/dsl.hpp"
#include "entwine/parse.hpp"
#include "entwine/render.hpp"

using namespace entwine;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE_MESSAGE(bool(f), "cannot open " << path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Bundle corpus_bundle(const std::string& name) {
    return assemble(parse_document(slurp(std::string(ENTWINE_CORPUS_DIR) + "/" + name)));
}

}  // namespace

TEST_CASE("expression round-trip through render") {
    Bundle b = corpus_bundle("eq2.alg");
    const Presentation& pres = b.data.presentation();
    std::vector<std::string> exprs = {
        "1",
        "q^2*n+*v",
        "v + mu+^-1*n+",
        "n-*n+ - q^-2*n+*n-",
        "i*v^-3 + 5/7*n+^2 - kappa*v",
    };
    for (const std::string& e : exprs) {
        AlgebraElement x = parse_element(e, pres);
        CHECK(parse_element(render(x, pres), pres) == x);
    }
}

TEST_CASE("tensor round-trip through render") {
    Bundle b = corpus_bundle("eq2.alg");
    const Presentation& pres = b.data.presentation();
    const CoalgebraSpec& spec = b.data.coalgebra();
    ParseEnv env;
    env.vars["p"] = 3;
    TensorExpression t =
        parse_tensor_pc("n+ (x) c[p] + mu+*q^(2*p)*v (x) c[p] - mu+*q^(2*p)*v (x) c[p+1]", pres,
                        spec, env);
    CHECK(parse_tensor_pc(render(t, pres, spec), pres, spec) == t);
    CHECK(t.terms().size() == 3);
}

TEST_CASE("index environment drives exponents and basis indices") {
    Bundle b = corpus_bundle("eq2.alg");
    const Presentation& pres = b.data.presentation();
    ParseEnv env;
    env.vars["p"] = -2;
    env.vars["s"] = 1;
    CHECK(parse_element("q^(2*p - s)*v", pres, env) ==
          parse_element("q^-5*v", pres));
    CoalgebraElement c = parse_c_element("c[p+s]", b.data.coalgebra(), env);
    REQUIRE(c.terms().size() == 1);
    CHECK(c.terms().begin()->first == CBasis{-1, {}});
}

TEST_CASE("syntax errors carry source positions") {
    Bundle b = corpus_bundle("eq2.alg");
    const Presentation& pres = b.data.presentation();
    try {
        parse_element("v + * n+", pres);
        FAIL("expected a SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.pos.line == 1);
        CHECK(e.pos.col == 5);
    }
    try {
        parse_element("v +\nq^2*w", pres);
        FAIL("expected a ResolutionError");
    } catch (const ResolutionError& e) {
        CHECK(e.pos.line == 2);
        CHECK(std::string(e.what()).find("'w'") != std::string::npos);
    }
}

TEST_CASE("relations are reoriented onto the descending word") {
    // rel v*n = q^2*n*v must become the rule n*v -> q^-2*v*n
    DslDocument doc = parse_document(
        "bundle tiny;\n"
        "algebra {\n"
        "  gen v inv;\n"
        "  gen n;\n"
        "  rel v*n = q^2*n*v;\n"
        "  rel v^-1*n = q^-2*n*v^-1;\n"
        "}\n"
        "coalgebra grouplike c;\n");
    REQUIRE(doc.algebra);
    const Presentation& p = *doc.algebra;
    auto v = p.find_generator("v");
    auto n = p.find_generator("n");
    REQUIRE((v && n));
    RuleKey key{{*n, 1}, {*v, 1}};
    REQUIRE(p.rules().count(key) == 1);
    AlgebraElement rhs = p.rules().at(key);
    CHECK(rhs == parse_element("q^-2*v*n", p));
    // and the rewriter applies it
    CHECK(parse_element("n*v", p) == parse_element("q^-2*v*n", p));
}

TEST_CASE("every corpus document assembles into a coherent bundle") {
    for (const std::string& name : {"eq2.alg", "ekappa2.alg", "ekappa3.alg", "hopf.alg"}) {
        CAPTURE(name);
        Bundle b = corpus_bundle(name);
        CHECK_FALSE(b.name.empty());
        CHECK(b.data.presentation().finalized());
        CHECK(check_confluence(b.data.presentation(), 3).confluent());
    }
}

TEST_CASE("document parameters are visible to expressions") {
    DslDocument doc = parse_document(slurp(std::string(ENTWINE_CORPUS_DIR) + "/eq2.alg"));
    CHECK(doc.params.at("s") == 0);
    doc.params["s"] = 2;
    Bundle b = assemble(doc);
    CHECK(b.s == 2);
    CHECK(b.data.grouplike() == CBasis{2, {}});
    CHECK(bundles_equal(b, build_eq2(2, 5), 2, 2));
}
