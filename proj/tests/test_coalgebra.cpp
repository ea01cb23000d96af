#include "doctest.h"
#include "entwine/coalgebra.hpp"
#include "entwine/tensor.hpp"

using namespace entwine;

TEST_CASE("group-like coproduct and counit") {
    CoalgebraSpec spec = CoalgebraSpec::group_like("c");
    for (int p : {-3, 0, 4}) {
        CBasis b{p, {}};
        TensorExpression d = coproduct(b, spec);
        REQUIRE(d.terms().size() == 1);
        const auto& [legs, s] = *d.terms().begin();
        CHECK(std::get<CBasis>(legs[0]) == b);
        CHECK(std::get<CBasis>(legs[1]) == b);
        CHECK(s == Scalar::one());
        CHECK(counit(b, spec) == Scalar::one());
    }
    CHECK(spec.basis_window(2).size() == 5);
}

TEST_CASE("group-like coassociativity and counit law on a window") {
    CoalgebraSpec spec = CoalgebraSpec::group_like("c");
    for (const CBasis& b : spec.basis_window(3)) {
        TensorExpression left = coproduct(b, spec).apply_delta(0, spec);
        TensorExpression right = coproduct(b, spec).apply_delta(1, spec);
        CHECK(left == right);
        TensorExpression collapsed = coproduct(b, spec).apply_counit(0, spec);
        REQUIRE(collapsed.terms().size() == 1);
        CHECK(std::get<CBasis>(collapsed.terms().begin()->first[0]) == b);
    }
}

TEST_CASE("matrix coalgebra: coproduct of a generator") {
    const int n = 2;
    CoalgebraSpec spec = CoalgebraSpec::matrix_function(n);
    // Delta a_11 = a_11 (x) a_11 + a_12 (x) a_21
    CBasis a11{0, Monomial{{{spec.matrix_gen(1, 1), 1}}}};
    TensorExpression d = coproduct(a11, spec);
    TensorExpression want({Space::C, Space::C});
    for (int k = 1; k <= n; ++k)
        want.add_term({LegKey(CBasis{0, Monomial{{{spec.matrix_gen(1, k), 1}}}}),
                       LegKey(CBasis{0, Monomial{{{spec.matrix_gen(k, 1), 1}}}})},
                      Scalar::one());
    CHECK(d == want);
    CHECK(counit(a11, spec) == Scalar::one());
    CBasis a12{0, Monomial{{{spec.matrix_gen(1, 2), 1}}}};
    CHECK(counit(a12, spec) == Scalar::zero());
}

TEST_CASE("matrix coalgebra: coassociativity and multiplicativity of Delta") {
    CoalgebraSpec spec = CoalgebraSpec::matrix_function(2);
    for (const CBasis& b : spec.basis_up_to(2)) {
        CHECK(coproduct(b, spec).apply_delta(0, spec) == coproduct(b, spec).apply_delta(1, spec));
    }
    // Delta(bc) = Delta(b) Delta(c) legwise
    std::vector<CBasis> basis = spec.basis_up_to(1);
    for (const CBasis& b : basis)
        for (const CBasis& c : basis) {
            CoalgebraElement prod = coalg_multiply(CoalgebraElement::basis(b),
                                                   CoalgebraElement::basis(c), spec);
            TensorExpression lhs = coproduct(prod, spec);
            TensorExpression bb = coproduct(b, spec);
            TensorExpression rhs({Space::C, Space::C});
            for (const auto& [lb, sb] : bb.terms())
                for (const auto& [lc, sc] : coproduct(c, spec).terms()) {
                    CoalgebraElement left = coalg_multiply(
                        CoalgebraElement::basis(std::get<CBasis>(lb[0])),
                        CoalgebraElement::basis(std::get<CBasis>(lc[0])), spec);
                    CoalgebraElement right = coalg_multiply(
                        CoalgebraElement::basis(std::get<CBasis>(lb[1])),
                        CoalgebraElement::basis(std::get<CBasis>(lc[1])), spec);
                    for (const auto& [bl, sl] : left.terms())
                        for (const auto& [br, sr] : right.terms())
                            rhs.add_term({LegKey(bl), LegKey(br)}, sb * sc * sl * sr);
                }
            CHECK(lhs == rhs);
        }
}

TEST_CASE("matrix coalgebra evaluation at a rational rotation") {
    // cos = 3/5, sin = 4/5: evaluation is an algebra map, so products of
    // basis monomials must evaluate to products of entry values.
    CoalgebraSpec spec = CoalgebraSpec::matrix_function(2);
    const mpq_class c(3, 5), s(4, 5);
    std::vector<GaussianRational> rot = {GaussianRational(c), GaussianRational(-s),
                                         GaussianRational(s), GaussianRational(c)};
    auto val = [&](const CBasis& b) {
        return evaluate_at_matrix(CoalgebraElement::basis(b), spec, rot);
    };
    std::vector<CBasis> basis = spec.basis_up_to(1);
    for (const CBasis& a : basis)
        for (const CBasis& b : basis) {
            CoalgebraElement prod =
                coalg_multiply(CoalgebraElement::basis(a), CoalgebraElement::basis(b), spec);
            CHECK(evaluate_at_matrix(prod, spec, rot) == val(a) * val(b));
        }
    // the orthogonality ideal vanishes: a11^2 + a12^2 evaluates like 1
    CoalgebraElement norm =
        coalg_multiply(CoalgebraElement::basis(CBasis{0, Monomial{{{spec.matrix_gen(1, 1), 1}}}}),
                       CoalgebraElement::basis(CBasis{0, Monomial{{{spec.matrix_gen(1, 1), 1}}}}),
                       spec) +
        coalg_multiply(CoalgebraElement::basis(CBasis{0, Monomial{{{spec.matrix_gen(1, 2), 1}}}}),
                       CoalgebraElement::basis(CBasis{0, Monomial{{{spec.matrix_gen(1, 2), 1}}}}),
                       spec);
    CHECK(evaluate_at_matrix(norm, spec, rot) == GaussianRational(1));
}
