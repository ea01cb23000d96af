#pragma once

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "entwine/coalgebra.hpp"

namespace entwine {

enum class Space { P, C, M };

/// One leg of a pure tensor: a canonical monomial (P or M legs) or a
/// coalgebra basis index (C legs). Coefficients live in the tensor weight.
using LegKey = std::variant<Monomial, CBasis>;

bool legkey_less(const LegKey& a, const LegKey& b);

struct PureTensorLess {
    bool operator()(const std::vector<LegKey>& a, const std::vector<LegKey>& b) const;
};

/// Finite sum of weighted pure tensors over a fixed signature. Canonical:
/// legs are basis/normal-form keys, merged, no zero weights.
class TensorExpression {
  public:
    using Terms = std::map<std::vector<LegKey>, Scalar, PureTensorLess>;

    TensorExpression() = default;
    explicit TensorExpression(std::vector<Space> sig) : sig_(std::move(sig)) {}

    const std::vector<Space>& signature() const { return sig_; }
    const Terms& terms() const& { return terms_; }
    // rvalue overload: range-for over `f(...).terms()` must not dangle
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::vector<LegKey> legs, const Scalar& s);
    TensorExpression operator+(const TensorExpression& o) const;
    TensorExpression operator-(const TensorExpression& o) const;
    TensorExpression scaled(const Scalar& s) const;
    TensorExpression& operator+=(const TensorExpression& o);

    bool operator==(const TensorExpression& o) const {
        return sig_ == o.sig_ && terms_ == o.terms_;
    }

    /// Pure tensor of already-canonical elements.
    static TensorExpression pure(std::vector<Space> sig,
                                 const std::vector<std::variant<AlgebraElement, CoalgebraElement>>& legs);

    // --- pipeline combinators (all linear, leg positions are 0-based) ---

    /// Replace C leg i by its coproduct (two adjacent C legs).
    TensorExpression apply_delta(size_t i, const CoalgebraSpec& spec) const;

    /// Contract C leg i with the counit into the weight.
    TensorExpression apply_counit(size_t i, const CoalgebraSpec& spec) const;

    /// Map algebra leg i linearly (monomial -> element); space stays put.
    TensorExpression map_algebra_leg(size_t i,
                                     const std::function<AlgebraElement(const Monomial&)>& f) const;

    /// Map C leg i into an algebra leg (e.g. a convolution map), leg becomes `to`.
    TensorExpression map_c_leg(size_t i, Space to,
                               const std::function<AlgebraElement(const CBasis&)>& f) const;

    /// Map C leg i linearly to a C-element.
    TensorExpression map_c_leg_c(size_t i,
                                 const std::function<CoalgebraElement(const CBasis&)>& f) const;

    /// Multiply adjacent algebra legs i and i+1 into one leg (space of leg i).
    TensorExpression multiply_adjacent(size_t i, const Presentation& pres) const;

    /// Multiply adjacent C legs i and i+1 (matrix function coalgebra product).
    TensorExpression multiply_adjacent_c(size_t i, const CoalgebraSpec& spec) const;

    /// Reorder legs: new leg j = old leg perm[j].
    TensorExpression permute(const std::vector<size_t>& perm) const;

    /// Drop a leg holding only scalar monomials (weight absorbs coefficient 1).
    TensorExpression drop_unit_leg(size_t i) const;

  private:
    std::vector<Space> sig_;
    Terms terms_;
};

/// a (x) c with a canonical in pres: convenience for [P,C] expressions.
TensorExpression tensor_pc(const AlgebraElement& a, const CoalgebraElement& c);
TensorExpression tensor_cc(const CoalgebraElement& a, const CoalgebraElement& b);

}  // namespace entwine
