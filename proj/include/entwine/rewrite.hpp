#pragma once

#include <map>
#include <string>
#include <vector>

#include "entwine/presentation.hpp"

namespace entwine {

/// Reduce an unreduced combination of words to its canonical PBW form.
AlgebraElement normal_form(const RawElement& e, const Presentation& pres);

/// Re-reduce a canonical element (idempotent on canonical input).
AlgebraElement normal_form(const AlgebraElement& e, const Presentation& pres);

/// Canonical product in the presented algebra.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Presentation& pres);

AlgebraElement power(const AlgebraElement& a, int n, const Presentation& pres);

/// Two-sided inverse of a single-term unit element.
AlgebraElement invert_unit(const AlgebraElement& e, const Presentation& pres);

/// An unresolved overlap ambiguity: the word plus its two distinct reducts.
struct Ambiguity {
    Word word;
    AlgebraElement left;
    AlgebraElement right;
};

struct AmbiguityReport {
    std::vector<Ambiguity> unresolved;
    long overlaps_checked = 0;
    bool confluent() const { return unresolved.empty(); }
};

/// Diamond-lemma check: resolve all letter-triple overlaps and rule-vs-ideal
/// overlaps up to the given degree bound.
AmbiguityReport check_confluence(const Presentation& pres, int degree_bound);

/// Multiplicative extension of a generator-image assignment.
class Morphism {
  public:
    Morphism() = default;
    Morphism(std::map<int, AlgebraElement> images, const Presentation* source,
             const Presentation* target);

    /// Applies the map to every relation of the source; true when all images
    /// normal-form to zero in the target.
    bool multiplicative() const { return multiplicative_; }

    AlgebraElement apply(const AlgebraElement& e) const;
    AlgebraElement apply_word(const Word& w) const;
    const AlgebraElement& image(int gen) const { return images_.at(gen); }

  private:
    std::map<int, AlgebraElement> images_;
    const Presentation* source_ = nullptr;
    const Presentation* target_ = nullptr;
    bool multiplicative_ = false;
};

/// Build and validate a morphism; throws MissingImage when a source generator
/// has no image or an invertible generator maps to a non-unit.
Morphism define_morphism(const std::map<int, AlgebraElement>& images, const Presentation& source,
                         const Presentation& target);

/// Enumerate all canonical monomials of total degree <= bound, with invertible
/// generator exponents clamped to [-bound, bound].
std::vector<Monomial> monomials_up_to(const Presentation& pres, int bound);

}  // namespace entwine
