#include "doctest.h"
#include "entwine/groebner.hpp"

using namespace entwine;

namespace {

CPoly var(size_t nvars, size_t i) {
    CExp e(nvars, 0);
    e[i] = 1;
    return CPoly::monomial(e);
}

}  // namespace

TEST_CASE("deglex order") {
    CHECK(deglex_less({0, 0}, {1, 0}));        // degree first
    CHECK(deglex_less({0, 2}, {1, 2}));
    CHECK(deglex_less({1, 1}, {2, 0}));        // then lex on equal degree
    CHECK_FALSE(deglex_less({2, 0}, {1, 1}));
    CHECK_FALSE(deglex_less({1, 0}, {1, 0}));
}

TEST_CASE("polynomial arithmetic") {
    CPoly x = var(2, 0), y = var(2, 1);
    CPoly p = x * x - y.scaled(GaussianRational(2)) + CPoly::monomial(CExp(2, 0));
    CPoly q = x + y;
    CHECK(p * q == q * p);
    CHECK((p + q) - q == p);
    CHECK((p - p).is_zero());
    CHECK(p.lead().first == CExp{2, 0});
}

TEST_CASE("ideal of a univariate relation") {
    // <x^2 - 2>: x^4 reduces to 4, x^3 + x to 3x
    CPoly x = var(1, 0);
    GroebnerBasis gb({x * x - CPoly::monomial(CExp{0}, GaussianRational(2))});
    CHECK(gb.reduce(x * x * x * x) == CPoly::monomial(CExp{0}, GaussianRational(4)));
    CHECK(gb.reduce(x * x * x + x) == x.scaled(GaussianRational(3)));
    CHECK(gb.reduce(x) == x);
}

TEST_CASE("buchberger closes an s-polynomial chain") {
    // <x^2 - y, x*y - x> forces x^3 = x^2, hence y^2 = y after completion
    CPoly x = var(2, 0), y = var(2, 1);
    GroebnerBasis gb({x * x - y, x * y - x});
    CHECK(gb.reduce(y * y - y).is_zero());
    CHECK(gb.reduce(x * x * x - x * x).is_zero());
}

TEST_CASE("orthogonality ideal of SO(2)") {
    GroebnerBasis gb(orthogonality_ideal(2));
    const size_t n = 4;  // a11 a12 a21 a22 row-major
    CPoly a11 = var(n, 0), a12 = var(n, 1), a21 = var(n, 2), a22 = var(n, 3);
    CPoly one = CPoly::monomial(CExp(n, 0));
    // row and column norms
    CHECK(gb.reduce(a11 * a11 + a12 * a12 - one).is_zero());
    CHECK(gb.reduce(a11 * a11 + a21 * a21 - one).is_zero());
    // orthogonality and determinant
    CHECK(gb.reduce(a11 * a21 + a12 * a22).is_zero());
    CHECK(gb.reduce(a11 * a22 - a12 * a21 - one).is_zero());
    // a generic quadratic is not in the ideal
    CHECK_FALSE(gb.reduce(a11 * a11 - one).is_zero());
}

TEST_CASE("orthogonality ideal of SO(3) vanishes on a rational rotation") {
    // rotation by the (3,4,5) angle in the 1-2 plane
    const mpq_class c(3, 5), s(4, 5);
    std::vector<mpq_class> m = {c, -s, 0, s, c, 0, 0, 0, 1};
    for (const CPoly& g : GroebnerBasis(orthogonality_ideal(3)).polys()) {
        GaussianRational val;
        for (const auto& [e, coeff] : g.terms()) {
            mpq_class prod = 1;
            for (size_t v = 0; v < e.size(); ++v)
                for (int k = 0; k < e[v]; ++k) prod *= m[v];
            val += coeff * GaussianRational(prod);
        }
        CHECK(val == GaussianRational(0));
    }
}
