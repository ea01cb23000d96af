#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entwine/groebner.hpp"
#include "entwine/scalar.hpp"

namespace entwine {

struct GeneratorSymbol {
    std::string name;
    bool invertible = false;
    int sort_index = 0;   // position in the canonical PBW order
    int block = -1;       // generators sharing a block tag commute pairwise

    bool operator==(const GeneratorSymbol& o) const {
        return name == o.name && invertible == o.invertible && sort_index == o.sort_index &&
               block == o.block;
    }
};

/// A single generator occurrence with exponent +1 or -1.
struct Letter {
    int gen = 0;
    int sign = 1;
    bool operator==(const Letter&) const = default;
    bool operator<(const Letter& o) const {
        if (gen != o.gen) return gen < o.gen;
        return sign < o.sign;
    }
};

using Word = std::vector<Letter>;

/// Canonical PBW monomial: (generator, nonzero exponent), strictly increasing
/// sort index, non-invertible generators with positive exponents only.
struct Monomial {
    std::vector<std::pair<int, int>> factors;

    bool is_one() const { return factors.empty(); }
    int degree() const;           // sum of |exponents|
    Word word() const;            // explode into letters
    static Monomial from_sorted_word(const Word& w);

    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const { return factors < o.factors; }
};

/// Unreduced linear combination of words; the carrier for parsed input and
/// rule right-hand sides before canonicalization.
struct RawElement {
    std::vector<std::pair<Scalar, Word>> terms;

    static RawElement zero() { return {}; }
    static RawElement scalar(Scalar s);
    static RawElement letter(int gen, int sign = 1);

    RawElement operator+(const RawElement& o) const;
    RawElement operator-(const RawElement& o) const;
    RawElement operator*(const RawElement& o) const;
    RawElement scaled(const Scalar& s) const;
};

/// Canonical element: sparse mapping monomial -> scalar, no zero coefficients.
class AlgebraElement {
  public:
    using Terms = std::map<Monomial, Scalar>;

    AlgebraElement() = default;
    static AlgebraElement one() { return scalar(Scalar::one()); }
    static AlgebraElement scalar(Scalar s);
    static AlgebraElement monomial(Monomial m, Scalar s = Scalar::one());

    const Terms& terms() const& { return terms_; }
    // rvalue overload: range-for over `f(...).terms()` must not dangle
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const;
    int degree() const;

    void add_term(const Monomial& m, const Scalar& s);
    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(const Scalar& s) const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);

    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }
    bool operator<(const AlgebraElement& o) const { return terms_ < o.terms_; }

    RawElement raw() const;

  private:
    Terms terms_;
};

/// Key of a reordering rule: the descending letter pair (hi, lo).
struct RuleKey {
    Letter hi, lo;
    bool operator==(const RuleKey&) const = default;
    bool operator<(const RuleKey& o) const {
        if (!(hi == o.hi)) return hi < o.hi;
        return lo < o.lo;
    }
};

/// Generator/relation presentation of a noncommutative algebra with a PBW
/// normal form: reordering rules on descending letter pairs plus polynomial
/// ideals inside commutative blocks.
class Presentation {
  public:
    Presentation() = default;

    /// Generators must be added in sort order. Returns the generator index.
    int add_generator(std::string name, bool invertible = false, int block = -1);

    /// Register rule hi*lo -> rhs. The rhs may be unreduced; finalize()
    /// canonicalizes all rule right-hand sides.
    void add_rule(Letter hi, Letter lo, RawElement rhs);

    /// Attach a polynomial ideal to a commutative block (variables are the
    /// block's generators in sort order).
    void set_block_ideal(int block, GroebnerBasis basis);

    /// Canonicalize rule right-hand sides and validate the termination
    /// witness. Must be called once after all rules are registered.
    void finalize();

    const std::vector<GeneratorSymbol>& generators() const { return gens_; }
    const GeneratorSymbol& generator(int g) const { return gens_.at(g); }
    std::optional<int> find_generator(const std::string& name) const;
    const std::map<RuleKey, AlgebraElement>& rules() const { return rules_; }
    const std::map<int, GroebnerBasis>& block_ideals() const { return ideals_; }
    const std::vector<int>& block_gens(int block) const { return block_gens_.at(block); }
    bool finalized() const { return finalized_; }

    long step_budget = 1000000;

    bool operator==(const Presentation& o) const {
        return gens_ == o.gens_ && rules_ == o.rules_ && ideals_ == o.ideals_;
    }

  private:
    friend class Rewriter;
    std::vector<GeneratorSymbol> gens_;
    std::map<RuleKey, RawElement> pending_;
    std::map<RuleKey, AlgebraElement> rules_;
    std::map<int, GroebnerBasis> ideals_;
    std::map<int, std::vector<int>> block_gens_;
    bool finalized_ = false;
};

}  // namespace entwine
