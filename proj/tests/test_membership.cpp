#include "doctest.h"
#include "entwine/bundles.hpp"
#include "entwine/errors.hpp"
#include "entwine/parse.hpp"

using namespace entwine;

TEST_CASE("express is a left inverse of embed") {
    Bundle b = build_eq2(0, 5);
    const MembershipSolver& solver = *b.solver;
    const Presentation& mpres = *b.mpres;
    for (const Monomial& m : monomials_up_to(mpres, 3)) {
        AlgebraElement x = AlgebraElement::monomial(m, Scalar::param(PQ, -2) + Scalar(3));
        CHECK(solver.express(solver.embed(x)) == x);
    }
}

TEST_CASE("express handles combinations with non-unit coefficients") {
    Bundle b = build_eq2(0, 5);
    const Presentation& mpres = *b.mpres;
    auto zp = mpres.find_generator("z+");
    auto zm = mpres.find_generator("z-");
    REQUIRE(zp);
    REQUIRE(zm);
    AlgebraElement x =
        AlgebraElement::monomial(Monomial{{{*zp, 1}}}, Scalar::param(PQ, 2) + Scalar::one()) +
        AlgebraElement::monomial(Monomial{{{*zm, 2}}}, Scalar::param(PKAPPA) - Scalar(7)) +
        AlgebraElement::scalar(Scalar::rational(5, 9));
    CHECK(b.solver->express(b.solver->embed(x)) == x);
}

TEST_CASE("elements outside the coinvariants are rejected") {
    Bundle b = build_eq2(0, 5);
    const Presentation& pres = b.data.presentation();
    CHECK_THROWS_AS(b.solver->express(parse_element("v", pres)), NotInM);
    CHECK_THROWS_AS(b.solver->express(parse_element("n+", pres)), NotInM);
    CHECK_THROWS_AS(b.solver->express(parse_element("v + mu+^-1*n+ + n-", pres)), NotInM);
}

TEST_CASE("embedded quantum-plane relation holds in P") {
    // z+ z- = q^2 z- z+ + 1 - q^2 must already hold among the images
    Bundle b = build_eq2(0, 5);
    const Presentation& pres = b.data.presentation();
    const Presentation& mpres = *b.mpres;
    auto zp = mpres.find_generator("z+");
    auto zm = mpres.find_generator("z-");
    REQUIRE(zp);
    REQUIRE(zm);
    AlgebraElement izp = b.solver->embed(AlgebraElement::monomial(Monomial{{{*zp, 1}}}));
    AlgebraElement izm = b.solver->embed(AlgebraElement::monomial(Monomial{{{*zm, 1}}}));
    AlgebraElement lhs = multiply(izp, izm, pres);
    AlgebraElement rhs = multiply(izm, izp, pres).scaled(Scalar::param(PQ, 2)) +
                         AlgebraElement::scalar(Scalar::one() - Scalar::param(PQ, 2));
    CHECK(lhs == rhs);
}

TEST_CASE("coaction fixes every embedded monomial") {
    Bundle b = build_eq2(2, 5);  // shifted grouplike index
    for (const Monomial& m : monomials_up_to(*b.mpres, 2)) {
        AlgebraElement img = b.solver->embed(AlgebraElement::monomial(m));
        CHECK(is_coinvariant(img, b.data));
    }
}
