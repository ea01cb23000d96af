#pragma once

#include "entwine/entwining.hpp"
#include "entwine/rewrite.hpp"

namespace entwine {

/// The coinvariant subalgebra M presented on its own generators together
/// with the embedding M -> P.
struct CoinvariantAlgebra {
    std::shared_ptr<const Presentation> pres;
    Morphism embed;
};

/// Validate a presented subalgebra as coinvariants: the embedding must be
/// multiplicative and every generator image coinvariant under the coaction.
CoinvariantAlgebra make_coinvariant_algebra(std::shared_ptr<const Presentation> pres,
                                            const std::map<int, AlgebraElement>& images,
                                            const EntwiningData& data);

/// Row-reduced images of the canonical M-monomials up to a degree bound,
/// used to decide membership by pivot elimination. Scalars form a ring, not
/// a field, so rows whose reduced image carries a unit coefficient are
/// normalized into reduced echelon form (exact elimination); rows without a
/// unit term keep their lead as a non-unit pivot and are handled by
/// fraction-free cross-multiplication.
class MembershipSolver {
  public:
    MembershipSolver(const CoinvariantAlgebra& m, int degree_bound);

    /// Express x (an element of P) in the PBW basis of M; throws NotInM when
    /// x does not lie in the embedded span up to the solver's degree bound.
    AlgebraElement express(const AlgebraElement& x) const;

    /// Embedded image of an M element.
    AlgebraElement embed(const AlgebraElement& x) const;

    const CoinvariantAlgebra& algebra() const { return m_; }
    int degree_bound() const { return bound_; }

  private:
    struct Row {
        AlgebraElement img, pre;  // embed(pre) == img
        Monomial pivot;
        bool unit = false;  // pivot coefficient normalized to 1
    };
    CoinvariantAlgebra m_;
    int bound_ = 0;
    std::vector<Row> rows_;
};

}  // namespace entwine
