#pragma once

#include <functional>
#include <memory>
#include <mutex>

#include "entwine/convolution.hpp"
#include "entwine/tensor.hpp"

namespace entwine {

/// One failed axiom instance: the tested input plus both sides, rendered.
struct Counterexample {
    std::string input;
    std::string lhs;
    std::string rhs;
};

struct ClauseResult {
    std::string name;
    bool pass = true;
    std::vector<Counterexample> counterexamples;
};

struct AxiomReport {
    std::vector<ClauseResult> clauses;
    int window = 0;
    int degree_bound = 0;
    bool pass() const {
        for (const auto& c : clauses)
            if (!c.pass) return false;
        return true;
    }
};

/// Entwining data (P, C, psi, e, psi^C). The psi table assigns to each
/// (basis element of C, generator letter of P) a [P,C] tensor; words are
/// handled by the multiplicative cascade. psi^C acts on basis pairs.
class EntwiningData {
  public:
    using PsiTable = std::function<TensorExpression(const CBasis&, const Letter&)>;
    using PsiCTable = std::function<TensorExpression(const CBasis&, const CBasis&)>;

    EntwiningData() = default;
    EntwiningData(std::shared_ptr<const Presentation> pres, CoalgebraSpec spec, PsiTable psi,
                  CBasis e, PsiCTable psiC);

    const Presentation& presentation() const { return *pres_; }
    std::shared_ptr<const Presentation> presentation_ptr() const { return pres_; }
    const CoalgebraSpec& coalgebra() const { return spec_; }
    const CBasis& grouplike() const { return e_; }

    /// psi on a basis element and a single letter (table lookup).
    TensorExpression psi_letter(const CBasis& b, const Letter& l) const;
    /// psi on a basis element and a raw word (the (ent.A) cascade, memoized).
    TensorExpression psi_word(const CBasis& b, const Word& w) const;
    /// psi^C on a basis pair.
    TensorExpression psiC(const CBasis& b, const CBasis& c) const;

  private:
    std::shared_ptr<const Presentation> pres_;
    CoalgebraSpec spec_;
    PsiTable psi_;
    CBasis e_;
    PsiCTable psiC_;
    struct Memo {
        std::map<std::pair<CBasis, Word>, TensorExpression> cache;
        std::mutex mu;
    };
    std::shared_ptr<Memo> memo_;
};

/// Bilinear extension of psi to C (x) P.
TensorExpression extend_psi(const CoalgebraElement& c, const AlgebraElement& u,
                            const EntwiningData& data);

/// Apply psi inside a tensor expression to the (C, P) legs at positions
/// (c_leg, p_leg); the C output lands on p_leg and the P output on c_leg.
TensorExpression apply_psi(const TensorExpression& t, size_t c_leg, size_t p_leg,
                           const EntwiningData& data);

/// Apply psi^C to the (C, C) legs at positions (b_leg, c_leg):
/// psi^C(b (x) c) = c_A (x) b^A.
TensorExpression apply_psiC(const TensorExpression& t, size_t b_leg, size_t c_leg,
                            const EntwiningData& data);

/// All four (ent.A) clauses plus relation compatibility.
AxiomReport verify_entwining(const EntwiningData& data, int window, int degree_bound);

/// The psi^C clauses: coassociativity-intertwining, counit, e-clause.
AxiomReport verify_psiC(const EntwiningData& data, int window);

/// Right coaction Delta_R u = psi(e (x) u).
TensorExpression coaction(const AlgebraElement& u, const EntwiningData& data);

/// Delta_R x = x (x) e.
bool is_coinvariant(const AlgebraElement& x, const EntwiningData& data);

/// Commutator table for the inhomogeneous matrix framework:
/// [a_ij, x_n] = kappa * gamma_{ij,n} with gamma in the commutative block.
struct CommutatorTable {
    int n = 0;           // matrix dimension
    int num_x = 0;       // number of coordinate generators
    /// gamma[(i-1)*n+j-1][k]: block element for [a_ij, x_k] (sans kappa), as
    /// a polynomial over the block presentation of the coalgebra.
    std::vector<std::vector<AlgebraElement>> gamma;
    /// x relations: [x_m, x_n] = kappa * sum_k lambda[m][n][k] x_k.
    std::vector<std::vector<std::vector<Scalar>>> lambda;

    static CommutatorTable classical(int n, int num_x);
};

/// Build entwining data for an inhomogeneous matrix quantum group from a
/// commutator table: C is the matrix function coalgebra, e = 1,
/// psi(b (x) x_k) = x_k (x) b + sum_n a_kn (x) [b, x_n],
/// psi(b (x) a_kl) = sum_n a_kn (x) b*a_nl,
/// psi^C(b (x) c) = c_(1) (x) b*c_(2).
/// The presentation of P is assembled and checked for confluence; an
/// inconsistent table throws InconsistentTable.
EntwiningData build_matrix_entwining(const CommutatorTable& table);

/// Hopf-algebra specialization psi(h (x) u) = u_(0) (x) h u_(1) for the
/// group-like Hopf algebra C[Z,Z^-1] acting through a declared comodule
/// table: each generator letter maps to a finite list of
/// (coefficient, P-element, degree shift) coaction terms.
struct CoactionTable {
    // per letter: Delta_R(letter) = sum_i elem_i (x) Z^{shift_i}
    std::map<Letter, std::vector<std::pair<AlgebraElement, int>>> entries;
};

EntwiningData hopf_entwining(std::shared_ptr<const Presentation> hopf,
                             const CoactionTable& coaction_table);

}  // namespace entwine
