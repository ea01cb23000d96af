#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "entwine/presentation.hpp"
#include "entwine/rewrite.hpp"

namespace entwine {

/// Basis index of a coalgebra: an integer p for a group-like family
/// {c_p : p in Z}, or a normal-form commutative monomial for a matrix
/// function coalgebra.
struct CBasis {
    int p = 0;
    Monomial mono;  // used only by the matrix variant

    bool operator==(const CBasis&) const = default;
    bool operator<(const CBasis& o) const {
        if (p != o.p) return p < o.p;
        return mono < o.mono;
    }
};

/// Coalgebra description: either the group-like family with Dc_p = c_p x c_p,
/// e(c_p) = 1, or the function coalgebra of an orthogonal matrix group with
/// Da_ij = sum_k a_ik x a_kj extended multiplicatively and e(a_ij) = d_ij.
class CoalgebraSpec {
  public:
    enum Kind { GroupLike, MatrixFunction };

    static CoalgebraSpec group_like(std::string basis_name = "c", int window = 6);
    /// n x n matrix function coalgebra with the orthogonality+det ideal.
    static CoalgebraSpec matrix_function(int n, std::string gen_prefix = "a");

    Kind kind() const { return kind_; }
    int window() const { return window_; }
    const std::string& basis_name() const { return basis_name_; }
    int dim() const { return n_; }
    const Presentation& matrix_presentation() const { return pres_; }
    /// Generator index of a_ij (1-based indices).
    int matrix_gen(int i, int j) const;

    /// Canonical (GB-reduced) basis monomials of degree <= bound.
    std::vector<CBasis> basis_up_to(int bound) const;
    /// Group-like basis window [-w, w].
    std::vector<CBasis> basis_window(int w) const;
    /// Basis elements swept during verification: window for group-like,
    /// monomials of degree <= bound for the matrix variant.
    std::vector<CBasis> sweep_basis(int window, int degree_bound) const;

    bool operator==(const CoalgebraSpec& o) const {
        return kind_ == o.kind_ && basis_name_ == o.basis_name_ && n_ == o.n_ &&
               pres_ == o.pres_;
    }

  private:
    Kind kind_ = GroupLike;
    std::string basis_name_ = "c";
    int window_ = 6;
    int n_ = 0;
    Presentation pres_;  // commutative block presentation (matrix variant)
};

/// Finite linear combination of basis indices.
class CoalgebraElement {
  public:
    using Terms = std::map<CBasis, Scalar>;

    CoalgebraElement() = default;
    static CoalgebraElement basis(CBasis b, Scalar s = Scalar::one());

    const Terms& terms() const& { return terms_; }
    // rvalue overload: range-for over `f(...).terms()` must not dangle
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const CBasis& b, const Scalar& s);
    CoalgebraElement operator+(const CoalgebraElement& o) const;
    CoalgebraElement operator-(const CoalgebraElement& o) const;
    CoalgebraElement scaled(const Scalar& s) const;
    bool operator==(const CoalgebraElement& o) const { return terms_ == o.terms_; }

  private:
    Terms terms_;
};

class TensorExpression;

/// Coproduct of a basis element as a [C,C] tensor expression.
TensorExpression coproduct(const CBasis& b, const CoalgebraSpec& spec);
TensorExpression coproduct(const CoalgebraElement& c, const CoalgebraSpec& spec);

Scalar counit(const CBasis& b, const CoalgebraSpec& spec);
Scalar counit(const CoalgebraElement& c, const CoalgebraSpec& spec);

/// Product (matrix variant only): the function coalgebra is also an algebra.
CoalgebraElement coalg_multiply(const CoalgebraElement& a, const CoalgebraElement& b,
                                const CoalgebraSpec& spec);

/// Evaluate a matrix-coalgebra element at a numeric orthogonal matrix
/// (row-major, 1-based a_ij -> values[(i-1)*n+(j-1)]).
GaussianRational evaluate_at_matrix(const CoalgebraElement& c, const CoalgebraSpec& spec,
                                    const std::vector<GaussianRational>& values);

}  // namespace entwine
