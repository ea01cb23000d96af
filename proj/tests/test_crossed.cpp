#include <random>

#include "doctest.h"
#include "entwine/bundles.hpp"
#include "entwine/dsl.hpp"
#include "entwine/parse.hpp"
#include "entwine/render.hpp"

using namespace entwine;

namespace {

CrossedData make_cleft(const Bundle& b, int window, int degree) {
    return cleft_data(b.phi, b.data, b.solver, window, degree);
}

AlgebraElement letter_elem(int gen, int sign = 1) {
    return AlgebraElement::monomial(Monomial{{{gen, sign}}});
}

}  // namespace

TEST_CASE("quantum E(2) cleft tables match the closed form") {
    for (int s : {0, 2}) {
        CAPTURE(s);
        Bundle b = build_eq2(s, 5);
        CrossedData cd = make_cleft(b, 4, 2);
        const Presentation& pres = b.data.presentation();
        auto v = pres.find_generator("v");
        auto np = pres.find_generator("n+");
        auto nm = pres.find_generator("n-");
        REQUIRE((v && np && nm));
        for (int p = -2; p <= 2; ++p) {
            ParseEnv env;
            env.vars["p"] = p;
            env.vars["s"] = s;
            CBasis cp{p, {}};
            CHECK(cd.rho(cp, letter_elem(*v)) == AlgebraElement::one());
            CHECK(cd.rho(cp, letter_elem(*v, -1)) == AlgebraElement::one());
            CHECK(cd.rho(cp, letter_elem(*np)) ==
                  parse_element("q^(2*p)*(q^(-2*s)*n+ + mu+*(v - 1))", pres, env));
            CHECK(cd.rho(cp, letter_elem(*nm)) ==
                  parse_element("q^(2*p)*(q^(-2*s)*n- + mu-*(v^-1 - 1))", pres, env));
            for (int r = -2; r <= 2; ++r)
                CHECK(cd.sigma_p(cp, CBasis{r, {}}) == AlgebraElement::one());
        }
    }
}

TEST_CASE("crossed-product conditions hold for quantum E(2)") {
    Bundle b = build_eq2(0, 5);
    CrossedData cd = make_cleft(b, 3, 2);
    AxiomReport rep = verify_conditions(cd, 3, 2);
    for (const auto& c : rep.clauses) {
        CAPTURE(c.name);
        CHECK(c.pass);
    }
    CHECK(rep.pass());
}

TEST_CASE("crossed product is associative and unital") {
    Bundle b = build_eq2(0, 5);
    CrossedData cd = make_cleft(b, 4, 2);
    std::vector<Monomial> ms = monomials_up_to(*b.mpres, 2);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pm(-1, 1);
    std::uniform_int_distribution<size_t> mm(0, ms.size() - 1);
    auto rand_elem = [&]() {
        return CrossedProductElement::pure(AlgebraElement::monomial(ms[mm(rng)]),
                                           CBasis{pm(rng), {}});
    };
    CrossedProductElement unit = crossed_unit(cd);
    for (int t = 0; t < 25; ++t) {
        CrossedProductElement x = rand_elem(), y = rand_elem(), z = rand_elem();
        CHECK(crossed_multiply(crossed_multiply(x, y, cd), z, cd) ==
              crossed_multiply(x, crossed_multiply(y, z, cd), cd));
        CHECK(crossed_multiply(unit, x, cd) == x);
        CHECK(crossed_multiply(x, unit, cd) == x);
    }
}

TEST_CASE("theta is multiplicative and matches embed * phi") {
    Bundle b = build_eq2(0, 5);
    CrossedData cd = make_cleft(b, 3, 2);
    const Presentation& pres = b.data.presentation();
    for (const Monomial& m : monomials_up_to(*b.mpres, 2))
        for (int p = -1; p <= 1; ++p) {
            CrossedProductElement u = CrossedProductElement::pure(AlgebraElement::monomial(m),
                                                                  CBasis{p, {}});
            AlgebraElement want = multiply(b.solver->embed(AlgebraElement::monomial(m)),
                                           b.phi(CBasis{p, {}}), pres);
            CHECK(theta(u, cd) == want);
        }
    CHECK(verify_theta(cd, 3, 2, 42).pass());
}

TEST_CASE("a mutated cocycle is rejected with a counterexample") {
    Bundle b = build_eq2(0, 5);
    CrossedData cd = make_cleft(b, 3, 2);
    auto rho_gen = [cd](const CBasis& c, const Letter& l) {
        return cd.rho(c, letter_elem(l.gen, l.sign));
    };
    CrossedData::SigmaFn bad_sigma = [](const CBasis& x, const CBasis& y) {
        Scalar s = (x.p == 1 && y.p == 1) ? Scalar::param(PQ) : Scalar::one();
        return AlgebraElement::scalar(s);
    };
    CrossedData bad = declared_data(b.data, b.solver, rho_gen, bad_sigma);
    AxiomReport rep = verify_conditions(bad, 3, 2);
    CHECK_FALSE(rep.pass());
    bool saw = false;
    for (const auto& c : rep.clauses)
        for (const auto& ce : c.counterexamples) {
            CHECK_FALSE(ce.input.empty());
            saw = true;
        }
    CHECK(saw);
}

TEST_CASE("central scalar gauge transformation") {
    Bundle b = build_eq2(0, 5);
    CrossedData cd = make_cleft(b, 3, 2);
    ConvolutionMap gamma = ConvolutionMap::from_function([](const CBasis& c) {
        return AlgebraElement::scalar(Scalar::param(PQ, c.p));  // q^(p-s), s = 0
    });
    CrossedData primed = gauge_transform(cd, gamma, 3);
    CHECK(verify_conditions(primed, 3, 2).pass());
    CHECK(gauge_iso_multiplicative(primed, cd, gamma, 3, 2, 42, 25));

    // the identity gauge fixes the data
    ConvolutionMap id = ConvolutionMap::unit(b.data.coalgebra());
    CrossedData same = gauge_transform(cd, id, 3);
    for (int p = -2; p <= 2; ++p)
        for (int r = -2; r <= 2; ++r)
            CHECK(same.sigma_p(CBasis{p, {}}, CBasis{r, {}}) ==
                  cd.sigma_p(CBasis{p, {}}, CBasis{r, {}}));
}

TEST_CASE("hopf-algebra sanity bundle passes the pipeline") {
    Bundle b = build_hopf_sanity();
    BundleReport rep = verify_bundle(b, 3, 2, 42);
    for (const auto& st : rep.stages) {
        CAPTURE(st.name);
        CAPTURE(st.error);
        CHECK(st.pass);
    }
    CHECK(rep.pass());
}

TEST_CASE("structural bundle equality") {
    Bundle a = build_eq2(0, 5);
    Bundle b = build_eq2(0, 5);
    Bundle c = build_eq2(2, 5);
    CHECK(bundles_equal(a, b, 2, 2));
    CHECK_FALSE(bundles_equal(a, c, 2, 2));
}
