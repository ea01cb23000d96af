#include <vector>

#include "doctest.h"
#include "entwine/errors.hpp"
#include "entwine/render.hpp"
#include "entwine/rewrite.hpp"

using namespace entwine;

namespace {

// v n = q^2 n v with v invertible: the smallest q-commutation algebra.
Presentation q_shift_algebra() {
    Presentation p;
    int v = p.add_generator("v", true);
    int n = p.add_generator("n");
    const Scalar q2 = Scalar::param(PQ, 2);
    const Scalar qm2 = Scalar::param(PQ, -2);
    // n v -> q^-2 v n, n v^-1 -> q^2 v^-1 n
    p.add_rule({n, 1}, {v, 1}, (RawElement::letter(v) * RawElement::letter(n)).scaled(qm2));
    p.add_rule({n, 1}, {v, -1},
               (RawElement::letter(v, -1) * RawElement::letter(n)).scaled(q2));
    p.finalize();
    return p;
}

// Exact matrix model at q = 2 on an N-dimensional truncation: n is the shift
// e_i -> e_{i+1} and v = diag(q^{2i}), which realizes v n = q^2 n v faithfully
// for words with fewer than N shift letters.
constexpr int kDim = 8;
using Mat = std::vector<std::vector<GaussianRational>>;

Mat zero_mat() { return Mat(kDim, std::vector<GaussianRational>(kDim)); }

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat r = zero_mat();
    for (int i = 0; i < kDim; ++i)
        for (int k = 0; k < kDim; ++k)
            for (int j = 0; j < kDim; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat letter_matrix(const Letter& l) {
    const GaussianRational q(mpq_class(2));
    Mat m = zero_mat();
    if (l.gen == 1) {  // n: shift
        for (int i = 0; i + 1 < kDim; ++i) m[i + 1][i] = GaussianRational(1);
    } else {  // v^{sign}: diagonal q^{2i sign}
        for (int i = 0; i < kDim; ++i) m[i][i] = gr_pow(q, 2L * i * l.sign);
    }
    return m;
}

Mat word_matrix(const Word& w) {
    Mat m = zero_mat();
    for (int i = 0; i < kDim; ++i) m[i][i] = GaussianRational(1);
    for (const Letter& l : w) m = mat_mul(m, letter_matrix(l));
    return m;
}

Mat element_matrix(const AlgebraElement& e) {
    const std::array<GaussianRational, kNumParams> pt = {
        GaussianRational(mpq_class(2)), GaussianRational(1), GaussianRational(1),
        GaussianRational(1)};
    Mat r = zero_mat();
    for (const auto& [m, s] : e.terms()) {
        Mat wm = word_matrix(m.word());
        GaussianRational c = s.substitute(pt);
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) r[i][j] += c * wm[i][j];
    }
    return r;
}

}  // namespace

TEST_CASE("normal form agrees with the shift-operator model at q = 2") {
    Presentation p = q_shift_algebra();
    const Letter V{0, 1}, Vi{0, -1}, N{1, 1};
    std::vector<Word> words = {
        {N, V},
        {N, Vi},
        {N, V, N},
        {V, N, Vi, N},
        {N, N, V, V},
        {Vi, N, V, N, Vi},
        {N, V, N, V, N, Vi, N},
    };
    for (const Word& w : words) {
        CAPTURE(w.size());
        RawElement raw{{{Scalar::one(), w}}};
        AlgebraElement nf = normal_form(raw, p);
        // canonical: every monomial is sorted, so re-reduction is a no-op
        CHECK(normal_form(nf, p) == nf);
        CHECK(element_matrix(nf) == word_matrix(w));
    }
}

TEST_CASE("multiply is associative and unital") {
    Presentation p = q_shift_algebra();
    AlgebraElement a = normal_form(RawElement::letter(1) * RawElement::letter(0), p);
    AlgebraElement b = normal_form(RawElement::letter(0, -1) + RawElement::letter(1), p);
    AlgebraElement c = normal_form(RawElement::letter(1) * RawElement::letter(1), p);
    CHECK(multiply(multiply(a, b, p), c, p) == multiply(a, multiply(b, c, p), p));
    CHECK(multiply(a, AlgebraElement::one(), p) == a);
    CHECK(multiply(AlgebraElement::one(), a, p) == a);
}

TEST_CASE("invert_unit and power") {
    Presentation p = q_shift_algebra();
    AlgebraElement v = AlgebraElement::monomial(Monomial{{{0, 1}}}, Scalar::param(PQ, 3));
    AlgebraElement vi = invert_unit(v, p);
    CHECK(multiply(v, vi, p) == AlgebraElement::one());
    CHECK(multiply(vi, v, p) == AlgebraElement::one());
    CHECK(power(v, 3, p) == multiply(v, multiply(v, v, p), p));
    CHECK(power(v, -2, p) == multiply(vi, vi, p));
    CHECK(power(v, 0, p) == AlgebraElement::one());
    AlgebraElement n = AlgebraElement::monomial(Monomial{{{1, 1}}});
    CHECK_THROWS_AS(invert_unit(n, p), NotAUnit);
    CHECK_THROWS_AS(invert_unit(v + n, p), NotAUnit);
}

TEST_CASE("missing rules and the step budget are reported") {
    Presentation p;
    p.add_generator("x");
    p.add_generator("y");
    p.finalize();  // no rule for y*x
    RawElement yx = RawElement::letter(1) * RawElement::letter(0);
    CHECK_THROWS_AS(normal_form(yx, p), MissingRule);

    Presentation ps = q_shift_algebra();
    ps.step_budget = 2;
    Word w;
    for (int k = 0; k < 6; ++k) {
        w.push_back({1, 1});
        w.push_back({0, 1});
    }
    CHECK_THROWS_AS(normal_form(RawElement{{{Scalar::one(), w}}}, ps), NonTerminating);
}

TEST_CASE("confluence check accepts the q-plane and rejects a broken triple") {
    CHECK(check_confluence(q_shift_algebra(), 4).confluent());

    // [y,x] = z, [z,y] = -y, [z,x] = 0 fails the Jacobi identity, so the
    // overlap z y x cannot resolve.
    Presentation p;
    int x = p.add_generator("x");
    int y = p.add_generator("y");
    int z = p.add_generator("z");
    p.add_rule({y, 1}, {x, 1}, RawElement::letter(x) * RawElement::letter(y) + RawElement::letter(z));
    p.add_rule({z, 1}, {x, 1}, RawElement::letter(x) * RawElement::letter(z));
    p.add_rule({z, 1}, {y, 1}, RawElement::letter(y) * RawElement::letter(z) + RawElement::letter(y));
    p.finalize();
    AmbiguityReport rep = check_confluence(p, 4);
    CHECK_FALSE(rep.confluent());
    REQUIRE_FALSE(rep.unresolved.empty());
    CHECK_FALSE(rep.unresolved.front().left == rep.unresolved.front().right);
}

TEST_CASE("monomials_up_to enumerates canonical monomials only") {
    Presentation p = q_shift_algebra();
    std::vector<Monomial> ms = monomials_up_to(p, 2);
    // v^a n^b with |a| + b <= 2: degree 0: 1; degree 1: v, v^-1, n;
    // degree 2: v^2, v^-2, n^2, v n, v^-1 n
    CHECK(ms.size() == 9);
    for (const Monomial& m : ms) {
        AlgebraElement nf = normal_form(AlgebraElement::monomial(m), p);
        REQUIRE(nf.terms().size() == 1);
        CHECK(nf.terms().begin()->first == m);
    }
}

TEST_CASE("morphisms validate relations") {
    Presentation p = q_shift_algebra();
    // v -> v, n -> v n is an endomorphism: (vn)v = q^2 n v v holds again
    std::map<int, AlgebraElement> good = {
        {0, AlgebraElement::monomial(Monomial{{{0, 1}}})},
        {1, normal_form(RawElement::letter(0) * RawElement::letter(1), p)}};
    CHECK(define_morphism(good, p, p).multiplicative());
    // v -> v, n -> n + 1 breaks the relation
    std::map<int, AlgebraElement> bad = {
        {0, AlgebraElement::monomial(Monomial{{{0, 1}}})},
        {1, AlgebraElement::monomial(Monomial{{{1, 1}}}) + AlgebraElement::one()}};
    CHECK_FALSE(define_morphism(bad, p, p).multiplicative());
    std::map<int, AlgebraElement> incomplete = {
        {0, AlgebraElement::monomial(Monomial{{{0, 1}}})}};
    CHECK_THROWS_AS(define_morphism(incomplete, p, p), MissingImage);
}
