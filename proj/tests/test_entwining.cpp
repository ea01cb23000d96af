#include "doctest.h"
#include "entwine/bundles.hpp"
#include "entwine/parse.hpp"
#include "entwine/render.hpp"

using namespace entwine;

TEST_CASE("quantum E(2) entwining satisfies all axioms") {
    Bundle b = build_eq2(0, 5);
    AxiomReport rep = verify_entwining(b.data, 3, 2);
    CHECK(rep.pass());
    for (const auto& c : rep.clauses) {
        CAPTURE(c.name);
        CHECK(c.pass);
    }
    CHECK(verify_psiC(b.data, 3).pass());
}

TEST_CASE("quantum E(2) psi matches its closed form on letters") {
    Bundle b = build_eq2(0, 5);
    const Presentation& pres = b.data.presentation();
    const CoalgebraSpec& spec = b.data.coalgebra();
    auto v = pres.find_generator("v");
    auto np = pres.find_generator("n+");
    REQUIRE(v);
    REQUIRE(np);
    for (int p = -3; p <= 3; ++p) {
        ParseEnv env;
        env.vars["p"] = p;
        env.vars["s"] = 0;
        CHECK(b.data.psi_letter(CBasis{p, {}}, {*v, 1}) ==
              parse_tensor_pc("v (x) c[p+1]", pres, spec, env));
        CHECK(b.data.psi_letter(CBasis{p, {}}, {*v, -1}) ==
              parse_tensor_pc("v^-1 (x) c[p-1]", pres, spec, env));
        CHECK(b.data.psi_letter(CBasis{p, {}}, {*np, 1}) ==
              parse_tensor_pc("n+ (x) c[p] + mu+*q^(2*p)*v (x) c[p] - mu+*q^(2*p)*v (x) c[p+1]",
                              pres, spec, env));
        // psiC is the index-shifted flip
        ParseEnv env2 = env;
        env2.vars["r"] = 2;
        CHECK(b.data.psiC(CBasis{p, {}}, CBasis{2, {}}) ==
              parse_tensor_cc("c[r] (x) c[p+r-s]", spec, env2));
    }
}

TEST_CASE("coaction and coinvariants") {
    Bundle b = build_eq2(0, 5);
    const Presentation& pres = b.data.presentation();
    AlgebraElement zp = parse_element("v + mu+^-1*n+", pres);
    AlgebraElement zm = parse_element("v^-1 + mu-^-1*n-", pres);
    CHECK(is_coinvariant(zp, b.data));
    CHECK(is_coinvariant(zm, b.data));
    CHECK(is_coinvariant(multiply(zp, zm, pres), b.data));
    CHECK(is_coinvariant(AlgebraElement::one(), b.data));
    CHECK_FALSE(is_coinvariant(parse_element("v", pres), b.data));
    CHECK_FALSE(is_coinvariant(parse_element("n+", pres), b.data));
}

TEST_CASE("a mutated psi entry is rejected with a counterexample") {
    Bundle b = build_eq2(0, 5);
    EntwiningData orig = b.data;
    const Presentation& pres = orig.presentation();
    auto v = pres.find_generator("v");
    REQUIRE(v);
    EntwiningData::PsiTable bad_psi = [orig, v](const CBasis& c, const Letter& l) {
        TensorExpression t = orig.psi_letter(c, l);
        if (l.gen == *v && l.sign == 1) return t.scaled(Scalar::param(PQ));
        return t;
    };
    EntwiningData bad(orig.presentation_ptr(), orig.coalgebra(), bad_psi, orig.grouplike(),
                      [orig](const CBasis& x, const CBasis& y) { return orig.psiC(x, y); });
    AxiomReport rep = verify_entwining(bad, 2, 2);
    CHECK_FALSE(rep.pass());
    bool saw_counterexample = false;
    for (const auto& c : rep.clauses)
        for (const auto& ce : c.counterexamples) {
            CHECK_FALSE(ce.input.empty());
            CHECK(ce.lhs != ce.rhs);
            saw_counterexample = true;
        }
    CHECK(saw_counterexample);
}

TEST_CASE("kappa -> 0 degenerates the kappa-Euclidean entwining to the flip") {
    Bundle b = build_ekappa2(5, /*kappa_zero=*/true);
    const Presentation& pres = b.data.presentation();
    for (int p = -2; p <= 2; ++p)
        for (size_t g = 0; g < pres.generators().size(); ++g)
            for (int sign : {1, -1}) {
                if (sign < 0 && !pres.generators()[g].invertible) continue;
                Letter l{static_cast<int>(g), sign};
                TensorExpression flip({Space::P, Space::C});
                flip.add_term({LegKey(Monomial::from_sorted_word({l})), LegKey(CBasis{p, {}})},
                              Scalar::one());
                CHECK(b.data.psi_letter(CBasis{p, {}}, l) == flip);
            }
    CHECK(verify_entwining(b.data, 3, 2).pass());
}

TEST_CASE("matrix commutator entwining: classical table") {
    EntwiningData data = build_matrix_entwining(CommutatorTable::classical(2, 2));
    AxiomReport rep = verify_entwining(data, 2, 2);
    CHECK(rep.pass());
    CHECK(verify_psiC(data, 2).pass());
    // psi(1 (x) x_k) = x_k (x) 1 in the classical table
    const Presentation& pres = data.presentation();
    auto x1 = pres.find_generator("x[1]");
    REQUIRE(x1);
    TensorExpression t = data.psi_letter(CBasis{0, Monomial{}}, {*x1, 1});
    TensorExpression want({Space::P, Space::C});
    want.add_term({LegKey(Monomial{{{*x1, 1}}}), LegKey(CBasis{0, Monomial{}})}, Scalar::one());
    CHECK(t == want);
}
