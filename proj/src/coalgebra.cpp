#include "entwine/coalgebra.hpp"

#include "entwine/errors.hpp"
#include "entwine/tensor.hpp"

namespace entwine {

CoalgebraSpec CoalgebraSpec::group_like(std::string basis_name, int window) {
    CoalgebraSpec s;
    s.kind_ = GroupLike;
    s.basis_name_ = std::move(basis_name);
    s.window_ = window;
    return s;
}

CoalgebraSpec CoalgebraSpec::matrix_function(int n, std::string gen_prefix) {
    CoalgebraSpec s;
    s.kind_ = MatrixFunction;
    s.basis_name_ = std::move(gen_prefix);
    s.n_ = n;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            s.pres_.add_generator(s.basis_name_ + "[" + std::to_string(i) + "," +
                                      std::to_string(j) + "]",
                                  false, 0);
    s.pres_.set_block_ideal(0, GroebnerBasis(orthogonality_ideal(n)));
    s.pres_.finalize();
    return s;
}

int CoalgebraSpec::matrix_gen(int i, int j) const {
    if (kind_ != MatrixFunction || i < 1 || i > n_ || j < 1 || j > n_)
        throw EngineError("CoalgebraSpec: bad matrix generator index");
    return (i - 1) * n_ + (j - 1);
}

std::vector<CBasis> CoalgebraSpec::basis_up_to(int bound) const {
    if (kind_ != MatrixFunction) throw EngineError("basis_up_to: matrix coalgebras only");
    std::vector<CBasis> out;
    for (const Monomial& m : monomials_up_to(pres_, bound)) out.push_back({0, m});
    return out;
}

std::vector<CBasis> CoalgebraSpec::basis_window(int w) const {
    if (kind_ != GroupLike) throw EngineError("basis_window: group-like coalgebras only");
    std::vector<CBasis> out;
    for (int p = -w; p <= w; ++p) out.push_back({p, {}});
    return out;
}

std::vector<CBasis> CoalgebraSpec::sweep_basis(int window, int degree_bound) const {
    return kind_ == GroupLike ? basis_window(window) : basis_up_to(degree_bound);
}

CoalgebraElement CoalgebraElement::basis(CBasis b, Scalar s) {
    CoalgebraElement c;
    if (!s.is_zero()) c.terms_.emplace(std::move(b), std::move(s));
    return c;
}

void CoalgebraElement::add_term(const CBasis& b, const Scalar& s) {
    auto it = terms_.find(b);
    if (it == terms_.end()) {
        if (!s.is_zero()) terms_.emplace(b, s);
    } else {
        it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CoalgebraElement CoalgebraElement::operator+(const CoalgebraElement& o) const {
    CoalgebraElement r = *this;
    for (const auto& [b, s] : o.terms_) r.add_term(b, s);
    return r;
}

CoalgebraElement CoalgebraElement::operator-(const CoalgebraElement& o) const {
    CoalgebraElement r = *this;
    for (const auto& [b, s] : o.terms_) r.add_term(b, -s);
    return r;
}

CoalgebraElement CoalgebraElement::scaled(const Scalar& s) const {
    CoalgebraElement r;
    if (s.is_zero()) return r;
    for (const auto& [b, c] : terms_) {
        Scalar cs = c * s;
        if (!cs.is_zero()) r.add_term(b, cs);
    }
    return r;
}

TensorExpression coproduct(const CBasis& b, const CoalgebraSpec& spec) {
    TensorExpression out({Space::C, Space::C});
    if (spec.kind() == CoalgebraSpec::GroupLike) {
        out.add_term({LegKey(b), LegKey(b)}, Scalar::one());
        return out;
    }
    // matrix case: Delta is multiplicative on the generators
    const Presentation& pres = spec.matrix_presentation();
    // start with 1 (x) 1 and multiply generator coproducts letter by letter
    std::map<std::pair<Monomial, Monomial>, Scalar> acc;
    acc[{Monomial{}, Monomial{}}] = Scalar::one();
    for (const Letter& l : b.mono.word()) {
        int i = l.gen / spec.dim() + 1, j = l.gen % spec.dim() + 1;
        std::map<std::pair<Monomial, Monomial>, Scalar> next;
        for (const auto& [legs, s] : acc) {
            for (int k = 1; k <= spec.dim(); ++k) {
                AlgebraElement left = multiply(
                    AlgebraElement::monomial(legs.first),
                    AlgebraElement::monomial(Monomial{{{spec.matrix_gen(i, k), 1}}}), pres);
                AlgebraElement right = multiply(
                    AlgebraElement::monomial(legs.second),
                    AlgebraElement::monomial(Monomial{{{spec.matrix_gen(k, j), 1}}}), pres);
                for (const auto& [lm, ls] : left.terms())
                    for (const auto& [rm, rs] : right.terms()) {
                        auto key = std::make_pair(lm, rm);
                        auto it = next.find(key);
                        Scalar v = s * ls * rs;
                        if (it == next.end()) next.emplace(key, v);
                        else {
                            it->second += v;
                            if (it->second.is_zero()) next.erase(it);
                        }
                    }
            }
        }
        acc = std::move(next);
    }
    for (const auto& [legs, s] : acc)
        out.add_term({LegKey(CBasis{0, legs.first}), LegKey(CBasis{0, legs.second})}, s);
    return out;
}

TensorExpression coproduct(const CoalgebraElement& c, const CoalgebraSpec& spec) {
    TensorExpression out({Space::C, Space::C});
    for (const auto& [b, s] : c.terms()) out += coproduct(b, spec).scaled(s);
    return out;
}

Scalar counit(const CBasis& b, const CoalgebraSpec& spec) {
    if (spec.kind() == CoalgebraSpec::GroupLike) return Scalar::one();
    // e(a_ij) = delta_ij extended multiplicatively
    GaussianRational v(1);
    for (const auto& [g, e] : b.mono.factors) {
        int i = g / spec.dim(), j = g % spec.dim();
        if (i != j) return Scalar::zero();
        (void)e;
    }
    return Scalar(GaussianRational(v));
}

Scalar counit(const CoalgebraElement& c, const CoalgebraSpec& spec) {
    Scalar acc;
    for (const auto& [b, s] : c.terms()) acc += s * counit(b, spec);
    return acc;
}

CoalgebraElement coalg_multiply(const CoalgebraElement& a, const CoalgebraElement& b,
                                const CoalgebraSpec& spec) {
    if (spec.kind() != CoalgebraSpec::MatrixFunction)
        throw EngineError("coalg_multiply: matrix function coalgebras only");
    const Presentation& pres = spec.matrix_presentation();
    CoalgebraElement out;
    for (const auto& [ba, sa] : a.terms())
        for (const auto& [bb, sb] : b.terms()) {
            AlgebraElement prod = multiply(AlgebraElement::monomial(ba.mono),
                                           AlgebraElement::monomial(bb.mono), pres);
            for (const auto& [m, s] : prod.terms()) out.add_term({0, m}, sa * sb * s);
        }
    return out;
}

GaussianRational evaluate_at_matrix(const CoalgebraElement& c, const CoalgebraSpec& spec,
                                    const std::vector<GaussianRational>& values) {
    if (spec.kind() != CoalgebraSpec::MatrixFunction)
        throw EngineError("evaluate_at_matrix: matrix function coalgebras only");
    GaussianRational acc(0);
    for (const auto& [b, s] : c.terms()) {
        GaussianRational t = s.substitute({GaussianRational(1), GaussianRational(1),
                                           GaussianRational(1), GaussianRational(0)});
        for (const auto& [g, e] : b.mono.factors) t *= gr_pow(values.at(g), e);
        acc += t;
    }
    return acc;
}

}  // namespace entwine
