#include "entwine/tensor.hpp"

#include "entwine/errors.hpp"

namespace entwine {

bool legkey_less(const LegKey& a, const LegKey& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (std::holds_alternative<Monomial>(a))
        return std::get<Monomial>(a) < std::get<Monomial>(b);
    return std::get<CBasis>(a) < std::get<CBasis>(b);
}

bool PureTensorLess::operator()(const std::vector<LegKey>& a, const std::vector<LegKey>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t k = 0; k < a.size(); ++k) {
        if (legkey_less(a[k], b[k])) return true;
        if (legkey_less(b[k], a[k])) return false;
    }
    return false;
}

void TensorExpression::add_term(std::vector<LegKey> legs, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = terms_.find(legs);
    if (it == terms_.end()) {
        terms_.emplace(std::move(legs), s);
    } else {
        it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorExpression TensorExpression::operator+(const TensorExpression& o) const {
    TensorExpression r = *this;
    if (r.sig_.empty()) r.sig_ = o.sig_;
    for (const auto& [l, s] : o.terms_) r.add_term(l, s);
    return r;
}

TensorExpression TensorExpression::operator-(const TensorExpression& o) const {
    TensorExpression r = *this;
    if (r.sig_.empty()) r.sig_ = o.sig_;
    for (const auto& [l, s] : o.terms_) r.add_term(l, -s);
    return r;
}

TensorExpression TensorExpression::scaled(const Scalar& s) const {
    TensorExpression r(sig_);
    if (s.is_zero()) return r;
    for (const auto& [l, c] : terms_) r.add_term(l, c * s);
    return r;
}

TensorExpression& TensorExpression::operator+=(const TensorExpression& o) {
    if (sig_.empty()) sig_ = o.sig_;
    for (const auto& [l, s] : o.terms_) add_term(l, s);
    return *this;
}

TensorExpression TensorExpression::pure(
    std::vector<Space> sig, const std::vector<std::variant<AlgebraElement, CoalgebraElement>>& legs) {
    TensorExpression out(sig);
    std::vector<std::pair<std::vector<LegKey>, Scalar>> acc{{{}, Scalar::one()}};
    for (size_t i = 0; i < legs.size(); ++i) {
        std::vector<std::pair<std::vector<LegKey>, Scalar>> next;
        if (std::holds_alternative<AlgebraElement>(legs[i])) {
            const auto& e = std::get<AlgebraElement>(legs[i]);
            for (const auto& [pref, s] : acc)
                for (const auto& [m, c] : e.terms()) {
                    auto l = pref;
                    l.emplace_back(m);
                    next.emplace_back(std::move(l), s * c);
                }
        } else {
            const auto& e = std::get<CoalgebraElement>(legs[i]);
            for (const auto& [pref, s] : acc)
                for (const auto& [b, c] : e.terms()) {
                    auto l = pref;
                    l.emplace_back(b);
                    next.emplace_back(std::move(l), s * c);
                }
        }
        acc = std::move(next);
    }
    for (auto& [l, s] : acc) out.add_term(std::move(l), s);
    return out;
}

namespace {
std::vector<Space> erase_at(std::vector<Space> v, size_t i) {
    v.erase(v.begin() + i);
    return v;
}
}  // namespace

TensorExpression TensorExpression::apply_delta(size_t i, const CoalgebraSpec& spec) const {
    std::vector<Space> sig = sig_;
    sig.insert(sig.begin() + i + 1, Space::C);
    TensorExpression out(sig);
    for (const auto& [legs, s] : terms_) {
        const CBasis& b = std::get<CBasis>(legs[i]);
        TensorExpression d = coproduct(b, spec);
        for (const auto& [dl, ds] : d.terms()) {
            std::vector<LegKey> nl = legs;
            nl[i] = dl[0];
            nl.insert(nl.begin() + i + 1, dl[1]);
            out.add_term(std::move(nl), s * ds);
        }
    }
    return out;
}

TensorExpression TensorExpression::apply_counit(size_t i, const CoalgebraSpec& spec) const {
    TensorExpression out(erase_at(sig_, i));
    for (const auto& [legs, s] : terms_) {
        Scalar e = counit(std::get<CBasis>(legs[i]), spec);
        if (e.is_zero()) continue;
        std::vector<LegKey> nl = legs;
        nl.erase(nl.begin() + i);
        out.add_term(std::move(nl), s * e);
    }
    return out;
}

TensorExpression TensorExpression::map_algebra_leg(
    size_t i, const std::function<AlgebraElement(const Monomial&)>& f) const {
    TensorExpression out(sig_);
    for (const auto& [legs, s] : terms_) {
        AlgebraElement img = f(std::get<Monomial>(legs[i]));
        for (const auto& [m, c] : img.terms()) {
            std::vector<LegKey> nl = legs;
            nl[i] = m;
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

TensorExpression TensorExpression::map_c_leg(
    size_t i, Space to, const std::function<AlgebraElement(const CBasis&)>& f) const {
    std::vector<Space> sig = sig_;
    sig[i] = to;
    TensorExpression out(sig);
    for (const auto& [legs, s] : terms_) {
        AlgebraElement img = f(std::get<CBasis>(legs[i]));
        for (const auto& [m, c] : img.terms()) {
            std::vector<LegKey> nl = legs;
            nl[i] = m;
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

TensorExpression TensorExpression::map_c_leg_c(
    size_t i, const std::function<CoalgebraElement(const CBasis&)>& f) const {
    TensorExpression out(sig_);
    for (const auto& [legs, s] : terms_) {
        CoalgebraElement img = f(std::get<CBasis>(legs[i]));
        for (const auto& [b, c] : img.terms()) {
            std::vector<LegKey> nl = legs;
            nl[i] = b;
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

TensorExpression TensorExpression::multiply_adjacent(size_t i, const Presentation& pres) const {
    TensorExpression out(erase_at(sig_, i + 1));
    for (const auto& [legs, s] : terms_) {
        AlgebraElement prod = multiply(AlgebraElement::monomial(std::get<Monomial>(legs[i])),
                                       AlgebraElement::monomial(std::get<Monomial>(legs[i + 1])),
                                       pres);
        for (const auto& [m, c] : prod.terms()) {
            std::vector<LegKey> nl = legs;
            nl[i] = m;
            nl.erase(nl.begin() + i + 1);
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

TensorExpression TensorExpression::multiply_adjacent_c(size_t i, const CoalgebraSpec& spec) const {
    TensorExpression out(erase_at(sig_, i + 1));
    for (const auto& [legs, s] : terms_) {
        CoalgebraElement prod =
            coalg_multiply(CoalgebraElement::basis(std::get<CBasis>(legs[i])),
                           CoalgebraElement::basis(std::get<CBasis>(legs[i + 1])), spec);
        for (const auto& [b, c] : prod.terms()) {
            std::vector<LegKey> nl = legs;
            nl[i] = b;
            nl.erase(nl.begin() + i + 1);
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

TensorExpression TensorExpression::permute(const std::vector<size_t>& perm) const {
    std::vector<Space> sig(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) sig[k] = sig_[perm[k]];
    TensorExpression out(sig);
    for (const auto& [legs, s] : terms_) {
        std::vector<LegKey> nl(perm.size());
        for (size_t k = 0; k < perm.size(); ++k) nl[k] = legs[perm[k]];
        out.add_term(std::move(nl), s);
    }
    return out;
}

TensorExpression TensorExpression::drop_unit_leg(size_t i) const {
    TensorExpression out(erase_at(sig_, i));
    for (const auto& [legs, s] : terms_) {
        if (!std::get<Monomial>(legs[i]).is_one())
            throw EngineError("drop_unit_leg: leg is not the unit monomial");
        std::vector<LegKey> nl = legs;
        nl.erase(nl.begin() + i);
        out.add_term(std::move(nl), s);
    }
    return out;
}

TensorExpression tensor_pc(const AlgebraElement& a, const CoalgebraElement& c) {
    return TensorExpression::pure({Space::P, Space::C}, {a, c});
}

TensorExpression tensor_cc(const CoalgebraElement& a, const CoalgebraElement& b) {
    return TensorExpression::pure({Space::C, Space::C}, {a, b});
}

}  // namespace entwine
