#pragma once

#include <cstdint>
#include <optional>

#include "entwine/membership.hpp"

namespace entwine {

/// Element of the crossed product M (x) C: sparse mapping
/// (canonical M-monomial, C-basis index) -> Scalar.
class CrossedProductElement {
  public:
    using Key = std::pair<Monomial, CBasis>;
    using Terms = std::map<Key, Scalar>;

    CrossedProductElement() = default;
    static CrossedProductElement pure(const AlgebraElement& x, const CBasis& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Key& k, const Scalar& s);
    CrossedProductElement operator+(const CrossedProductElement& o) const;
    CrossedProductElement operator-(const CrossedProductElement& o) const;
    CrossedProductElement scaled(const Scalar& s) const;
    bool operator==(const CrossedProductElement& o) const { return terms_ == o.terms_; }

  private:
    Terms terms_;
};

std::string render(const CrossedProductElement& u, const Presentation& mpres,
                   const CoalgebraSpec& spec);

/// Crossed product data (rho, sigma) over fixed entwining data and a
/// presented coinvariant subalgebra. rho and sigma are evaluated in P;
/// sigma_m / rho_m re-express the results in the PBW basis of M.
class CrossedData {
  public:
    using RhoFn = std::function<AlgebraElement(const CBasis&, const Monomial&)>;
    using SigmaFn = std::function<AlgebraElement(const CBasis&, const CBasis&)>;

    CrossedData() = default;
    CrossedData(EntwiningData data, std::shared_ptr<const MembershipSolver> m, RhoFn rho,
                SigmaFn sigma, std::optional<ConvolutionMap> phi,
                std::optional<ConvolutionMap> phi_inv);

    const EntwiningData& entwining() const { return data_; }
    const MembershipSolver& solver() const { return *m_; }
    std::shared_ptr<const MembershipSolver> solver_ptr() const { return m_; }
    const Presentation& mpres() const { return *m_->algebra().pres; }

    bool cleft() const { return phi_.has_value(); }
    const ConvolutionMap& phi() const { return *phi_; }
    const ConvolutionMap& phi_inverse() const { return *phi_inv_; }

    /// rho(c, u) evaluated in P (linear in u, memoized per monomial).
    AlgebraElement rho(const CBasis& c, const AlgebraElement& u) const;
    /// sigma(b, c) evaluated in P (memoized).
    AlgebraElement sigma_p(const CBasis& b, const CBasis& c) const;
    /// sigma(b, c) expressed in M's PBW basis.
    AlgebraElement sigma_m(const CBasis& b, const CBasis& c) const;
    /// rho on an element of M (given in M's basis), expressed back in M.
    AlgebraElement rho_m(const CBasis& c, const AlgebraElement& x) const;

  private:
    EntwiningData data_;
    std::shared_ptr<const MembershipSolver> m_;
    RhoFn rho_;
    SigmaFn sigma_;
    std::optional<ConvolutionMap> phi_, phi_inv_;
    struct Memo {
        std::map<std::pair<CBasis, Monomial>, AlgebraElement> rho;
        std::map<std::pair<CBasis, CBasis>, AlgebraElement> sigma;
        std::mutex mu;
    };
    std::shared_ptr<Memo> memo_;
};

/// Cleft construction: rho(c,u) = Phi(c_(1)) u_a Phi^-1(c_(2)^a),
/// sigma(b,c) = Phi(b_(1)) Phi(c_A) Phi^-1(b_(2)^A). Checks Phi(e) = 1, the
/// intertwining condition psi (id (x) Phi) = (Phi (x) id) psiC on the test
/// window, and that every sigma value lands in M.
CrossedData cleft_data(const ConvolutionMap& phi, const EntwiningData& data,
                       std::shared_ptr<const MembershipSolver> m, int window, int degree_bound);

/// Declared-table data: rho given on generator letters only, extended to
/// monomials by the condition (ii) recursion; valid only when condition (ii)
/// verification passes.
CrossedData declared_data(const EntwiningData& data, std::shared_ptr<const MembershipSolver> m,
                          const std::function<AlgebraElement(const CBasis&, const Letter&)>& rho_gen,
                          const CrossedData::SigmaFn& sigma);

/// The five crossed-product conditions, each an exact TensorExpression
/// identity in M (x) C; x, y range over M-monomials up to degree_bound and
/// a, b, c over the coalgebra sweep basis.
AxiomReport verify_conditions(const CrossedData& cd, int window, int degree_bound);

/// (x (x) b)(y (x) c) = x rho(b_(1), y_a) sigma(b_(2)^a_(1), c_A) (x) b_(2)^a_(2)^A.
CrossedProductElement crossed_multiply(const CrossedProductElement& u,
                                       const CrossedProductElement& w, const CrossedData& cd);

/// The unit 1 (x) e.
CrossedProductElement crossed_unit(const CrossedData& cd);

/// theta(x (x) c) = embed(x) * Phi(c), the cleft isomorphism onto P.
AlgebraElement theta(const CrossedProductElement& u, const CrossedData& cd);

/// theta suite: multiplicativity on seeded random pairs plus linear
/// injectivity/surjectivity of the truncated transfer matrix at an exact
/// numeric substitution point.
AxiomReport verify_theta(const CrossedData& cd, int window, int degree_bound, std::uint64_t seed);

/// Gauge transformation by gamma: C -> M. Checks gamma(e) = 1, convolution
/// invertibility, that gamma lands in M, and the admissibility condition on
/// the window; returns the data (rho', sigma').
CrossedData gauge_transform(const CrossedData& cd, const ConvolutionMap& gamma, int window);

/// The gauge isomorphism x (x) c -> x gamma(c_(1)) (x) c_(2) from the primed
/// product to the base product, checked multiplicative on seeded pairs.
bool gauge_iso_multiplicative(const CrossedData& primed, const CrossedData& base,
                              const ConvolutionMap& gamma, int window, int degree_bound,
                              std::uint64_t seed, int samples);

}  // namespace entwine
