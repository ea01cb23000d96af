#pragma once

#include <map>
#include <vector>

#include "entwine/scalar.hpp"

namespace entwine {

/// Commutative monomial over a block of variables: dense exponent vector.
using CExp = std::vector<int>;

/// Degree-lexicographic order.
bool deglex_less(const CExp& a, const CExp& b);

struct DeglexLess {
    bool operator()(const CExp& a, const CExp& b) const { return deglex_less(a, b); }
};

/// Commutative polynomial with Gaussian-rational coefficients.
class CPoly {
  public:
    using Terms = std::map<CExp, GaussianRational, DeglexLess>;

    CPoly() = default;
    explicit CPoly(size_t nvars, GaussianRational c = GaussianRational(0));

    static CPoly monomial(CExp e, GaussianRational c = GaussianRational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t nvars() const;

    void add_term(const CExp& e, const GaussianRational& c);
    CPoly operator+(const CPoly& o) const;
    CPoly operator-(const CPoly& o) const;
    CPoly operator*(const CPoly& o) const;
    CPoly scaled(const GaussianRational& c) const;
    bool operator==(const CPoly& o) const { return terms_ == o.terms_; }

    /// Leading term under deglex.
    const std::pair<const CExp, GaussianRational>& lead() const;

  private:
    Terms terms_;
};

/// Reduced degree-lexicographic Groebner basis of a polynomial ideal,
/// computed by a plain Buchberger procedure.
class GroebnerBasis {
  public:
    GroebnerBasis() = default;
    explicit GroebnerBasis(std::vector<CPoly> generators);

    bool empty() const { return basis_.empty(); }
    const std::vector<CPoly>& polys() const { return basis_; }

    /// Full normal form modulo the basis.
    CPoly reduce(const CPoly& p) const;

    bool operator==(const GroebnerBasis& o) const { return basis_ == o.basis_; }

  private:
    std::vector<CPoly> basis_;
};

/// Generators of the ideal of SO(n): A*At - I, At*A - I, det A - 1,
/// over n*n variables a_ij indexed row-major.
std::vector<CPoly> orthogonality_ideal(int n);

}  // namespace entwine
