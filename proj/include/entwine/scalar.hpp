#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace entwine {

/// Exact Gaussian rational: re + im*i with arbitrary-precision rational parts.
struct GaussianRational {
    mpq_class re{0};
    mpq_class im{0};

    GaussianRational() = default;
    GaussianRational(long n) : re(n) {}
    GaussianRational(mpq_class r) : re(std::move(r)) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational inverse() const {
        mpq_class n = re * re + im * im;
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {re / n, -im / n};
    }
    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }
    bool operator<(const GaussianRational& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }

    std::string str() const;
};

GaussianRational gr_pow(const GaussianRational& b, long e);

/// Formal parameters of the coefficient ring Q(i)[q^±1, mu+^±1, mu-^±1, kappa].
enum Param : int { PQ = 0, PMUP = 1, PMUM = 2, PKAPPA = 3 };
constexpr int kNumParams = 4;

/// Exponent vector over (q, mu+, mu-, kappa). kappa exponent must stay >= 0.
using ExpVec = std::array<int, kNumParams>;

/// Element of the coefficient ring: sparse map exponent-vector -> Gaussian rational.
/// No zero coefficients are stored; equality is map equality.
class Scalar {
  public:
    using Terms = std::map<ExpVec, GaussianRational>;

    Scalar() = default;
    Scalar(long n);
    explicit Scalar(GaussianRational c);
    Scalar(GaussianRational c, ExpVec e);

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar i() { return Scalar(GaussianRational::i()); }
    static Scalar rational(long num, long den);
    /// q^e, mu+^e, mu-^e, kappa^e (kappa requires e >= 0).
    static Scalar param(Param p, int e = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// Single-term with invertible indeterminates only (kappa exponent 0).
    bool is_unit() const;
    Scalar inverse() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const { return terms_ < o.terms_; }

    /// Evaluate at numeric parameter values (q, mu+, mu- must be nonzero).
    GaussianRational substitute(const std::array<GaussianRational, kNumParams>& vals) const;

    /// Substitute a numeric value for a single parameter, keeping the rest formal.
    Scalar substitute_param(Param p, const GaussianRational& val) const;

    /// Exact division; nullopt when *this is not divisible by d in the ring.
    std::optional<Scalar> divide_exact(const Scalar& d) const;

    std::string str() const;

  private:
    void add_term(const ExpVec& e, const GaussianRational& c);
    Terms terms_;
};

inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

}  // namespace entwine
