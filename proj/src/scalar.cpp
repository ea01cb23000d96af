#include "entwine/scalar.hpp"

#include <sstream>

namespace entwine {

std::string GaussianRational::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re.get_str();
    } else if (re == 0) {
        if (im == 1) os << "i";
        else if (im == -1) os << "-i";
        else os << im.get_str() << "*i";
    } else {
        os << "(" << re.get_str();
        if (im > 0) os << "+";
        if (im == 1) os << "i";
        else if (im == -1) os << "-i";
        else os << im.get_str() << "*i";
        os << ")";
    }
    return os.str();
}

GaussianRational gr_pow(const GaussianRational& b, long e) {
    GaussianRational base = e < 0 ? b.inverse() : b;
    unsigned long n = e < 0 ? -(unsigned long)e : (unsigned long)e;
    GaussianRational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

Scalar::Scalar(long n) {
    if (n != 0) terms_[{0, 0, 0, 0}] = GaussianRational(n);
}

Scalar::Scalar(GaussianRational c) {
    if (!c.is_zero()) terms_[{0, 0, 0, 0}] = std::move(c);
}

Scalar::Scalar(GaussianRational c, ExpVec e) {
    if (e[PKAPPA] < 0) throw std::domain_error("Scalar: negative kappa exponent");
    if (!c.is_zero()) terms_[e] = std::move(c);
}

Scalar Scalar::rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(GaussianRational(q));
}

Scalar Scalar::param(Param p, int e) {
    ExpVec v{0, 0, 0, 0};
    v[p] = e;
    return Scalar(GaussianRational(1), v);
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ExpVec{0, 0, 0, 0} &&
           terms_.begin()->second.is_one();
}

bool Scalar::is_unit() const {
    return terms_.size() == 1 && terms_.begin()->first[PKAPPA] == 0;
}

Scalar Scalar::inverse() const {
    if (!is_unit()) throw std::domain_error("Scalar: not a unit");
    const auto& [e, c] = *terms_.begin();
    ExpVec inv{-e[PQ], -e[PMUP], -e[PMUM], 0};
    return Scalar(c.inverse(), inv);
}

void Scalar::add_term(const ExpVec& e, const GaussianRational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            ExpVec e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
            r.add_term(e, c1 * c2);
        }
    return r;
}

GaussianRational Scalar::substitute(const std::array<GaussianRational, kNumParams>& vals) const {
    GaussianRational acc(0);
    for (const auto& [e, c] : terms_) {
        GaussianRational t = c;
        for (int p = 0; p < kNumParams; ++p)
            if (e[p] != 0) t *= gr_pow(vals[p], e[p]);
        acc += t;
    }
    return acc;
}

Scalar Scalar::substitute_param(Param p, const GaussianRational& val) const {
    Scalar r;
    for (const auto& [e, c] : terms_) {
        ExpVec e2 = e;
        e2[p] = 0;
        r.add_term(e2, c * gr_pow(val, e[p]));
    }
    return r;
}

std::optional<Scalar> Scalar::divide_exact(const Scalar& d) const {
    if (d.is_zero()) return std::nullopt;
    Scalar rem = *this, quot;
    const auto& dlead = *d.terms_.rbegin();
    int guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 100000) return std::nullopt;
        const auto& rlead = *rem.terms_.rbegin();
        ExpVec e{rlead.first[0] - dlead.first[0], rlead.first[1] - dlead.first[1],
                 rlead.first[2] - dlead.first[2], rlead.first[3] - dlead.first[3]};
        if (e[PKAPPA] < 0) return std::nullopt;
        Scalar t(rlead.second / dlead.second, e);
        quot += t;
        rem -= t * d;
        // leading exponent must strictly decrease, otherwise not divisible
        if (!rem.is_zero() && !(rem.terms_.rbegin()->first < rlead.first)) return std::nullopt;
    }
    return quot;
}

namespace {
const char* kParamNames[kNumParams] = {"q", "mu+", "mu-", "kappa"};
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string coeff = c.str();
        bool bare = (e != ExpVec{0, 0, 0, 0});
        if (!first) {
            if (!coeff.empty() && coeff[0] == '-') {
                os << " - ";
                coeff = coeff.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        bool printed = false;
        if (!bare || !(coeff == "1")) {
            if (bare && coeff == "-1") {
                os << "-";
            } else {
                os << coeff;
                printed = true;
            }
        }
        for (int p = 0; p < kNumParams; ++p) {
            if (e[p] == 0) continue;
            if (printed) os << "*";
            os << kParamNames[p];
            if (e[p] != 1) os << "^" << e[p];
            printed = true;
        }
    }
    return os.str();
}

}  // namespace entwine
