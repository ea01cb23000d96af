#include "doctest.h"
#include "entwine/scalar.hpp"

using namespace entwine;

namespace {
const Scalar q = Scalar::param(PQ);
const Scalar mup = Scalar::param(PMUP);
const Scalar mum = Scalar::param(PMUM);
const Scalar kap = Scalar::param(PKAPPA);
}  // namespace

TEST_CASE("GaussianRational field laws") {
    GaussianRational a(mpq_class(3, 4), mpq_class(-2, 5));
    GaussianRational b(mpq_class(1, 2), mpq_class(7));
    GaussianRational c(mpq_class(-5), mpq_class(1, 3));

    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * a.inverse() == GaussianRational(1));
    CHECK(a / b * b == a);
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
    CHECK_THROWS_AS(GaussianRational(0).inverse(), std::domain_error);
}

TEST_CASE("gr_pow matches repeated multiplication") {
    GaussianRational b(mpq_class(2, 3), mpq_class(1));
    GaussianRational acc(1);
    for (int e = 0; e <= 6; ++e) {
        CHECK(gr_pow(b, e) == acc);
        acc *= b;
    }
    CHECK(gr_pow(b, -3) * gr_pow(b, 3) == GaussianRational(1));
}

TEST_CASE("Scalar ring laws") {
    Scalar a = q * q + 3 * mup - Scalar::i() * kap;
    Scalar b = Scalar::rational(2, 7) * mum - Scalar::param(PQ, -1);
    Scalar c = kap * kap + Scalar(5);

    CHECK(a + b == b + a);
    CHECK(a * b == b * a);  // coefficient ring is commutative
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == Scalar::zero());
    CHECK(a * Scalar::one() == a);
    CHECK(a * Scalar::zero() == Scalar::zero());
    CHECK(-(-a) == a);
}

TEST_CASE("units and inverses") {
    Scalar u = Scalar::rational(3, 2) * Scalar::param(PQ, -4) * mup;
    CHECK(u.is_unit());
    CHECK(u * u.inverse() == Scalar::one());
    CHECK_FALSE((q + Scalar::one()).is_unit());  // two terms
    CHECK_FALSE(kap.is_unit());                  // kappa is not invertible
    CHECK_FALSE(Scalar::zero().is_unit());
}

TEST_CASE("exact division") {
    Scalar a = (q + mup) * (kap + Scalar(2)) * Scalar::rational(5, 3);
    auto d = a.divide_exact(q + mup);
    REQUIRE(d.has_value());
    CHECK(*d == (kap + Scalar(2)) * Scalar::rational(5, 3));
    CHECK_FALSE((q + Scalar::one()).divide_exact(mum).has_value());
    CHECK_FALSE(Scalar::one().divide_exact(Scalar::zero()).has_value());
}

TEST_CASE("numeric substitution is a ring homomorphism") {
    std::array<GaussianRational, kNumParams> pt = {
        GaussianRational(mpq_class(2)), GaussianRational(mpq_class(3)),
        GaussianRational(mpq_class(5)), GaussianRational(mpq_class(7))};
    Scalar a = q * q * mup - kap + Scalar::rational(1, 2);
    Scalar b = Scalar::param(PMUM, -2) + Scalar::i() * q;
    CHECK((a * b).substitute(pt) == a.substitute(pt) * b.substitute(pt));
    CHECK((a + b).substitute(pt) == a.substitute(pt) + b.substitute(pt));
    CHECK(q.substitute(pt) == GaussianRational(mpq_class(2)));
}

TEST_CASE("single-parameter substitution") {
    Scalar a = kap * q + mup;
    Scalar at0 = a.substitute_param(PKAPPA, GaussianRational(0));
    CHECK(at0 == mup);
    Scalar at2 = a.substitute_param(PKAPPA, GaussianRational(2));
    CHECK(at2 == 2 * q + mup);
}
