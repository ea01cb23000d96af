#include "entwine/presentation.hpp"

#include <algorithm>
#include <stdexcept>

#include "entwine/errors.hpp"
#include "entwine/rewrite.hpp"

namespace entwine {

int Monomial::degree() const {
    int d = 0;
    for (const auto& [g, e] : factors) d += e < 0 ? -e : e;
    return d;
}

Word Monomial::word() const {
    Word w;
    for (const auto& [g, e] : factors) {
        int n = e < 0 ? -e : e;
        int s = e < 0 ? -1 : 1;
        for (int k = 0; k < n; ++k) w.push_back({g, s});
    }
    return w;
}

Monomial Monomial::from_sorted_word(const Word& w) {
    Monomial m;
    for (const Letter& l : w) {
        if (!m.factors.empty() && m.factors.back().first == l.gen) {
            m.factors.back().second += l.sign;
            if (m.factors.back().second == 0) m.factors.pop_back();
        } else {
            m.factors.emplace_back(l.gen, l.sign);
        }
    }
    return m;
}

RawElement RawElement::scalar(Scalar s) {
    RawElement r;
    if (!s.is_zero()) r.terms.emplace_back(std::move(s), Word{});
    return r;
}

RawElement RawElement::letter(int gen, int sign) {
    RawElement r;
    r.terms.emplace_back(Scalar::one(), Word{{gen, sign}});
    return r;
}

RawElement RawElement::operator+(const RawElement& o) const {
    RawElement r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
}

RawElement RawElement::operator-(const RawElement& o) const {
    RawElement r = *this;
    for (const auto& [s, w] : o.terms) r.terms.emplace_back(-s, w);
    return r;
}

RawElement RawElement::operator*(const RawElement& o) const {
    RawElement r;
    for (const auto& [s1, w1] : terms)
        for (const auto& [s2, w2] : o.terms) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.terms.emplace_back(s1 * s2, std::move(w));
        }
    return r;
}

RawElement RawElement::scaled(const Scalar& s) const {
    RawElement r;
    for (const auto& [c, w] : terms) r.terms.emplace_back(c * s, w);
    return r;
}

AlgebraElement AlgebraElement::scalar(Scalar s) {
    AlgebraElement e;
    if (!s.is_zero()) e.terms_.emplace(Monomial{}, std::move(s));
    return e;
}

AlgebraElement AlgebraElement::monomial(Monomial m, Scalar s) {
    AlgebraElement e;
    if (!s.is_zero()) e.terms_.emplace(std::move(m), std::move(s));
    return e;
}

bool AlgebraElement::is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int AlgebraElement::degree() const {
    int d = 0;
    for (const auto& [m, s] : terms_) d = std::max(d, m.degree());
    return d;
}

void AlgebraElement::add_term(const Monomial& m, const Scalar& s) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!s.is_zero()) terms_.emplace(m, s);
    } else {
        it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [m, s] : o.terms_) r.add_term(m, s);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [m, s] : o.terms_) r.add_term(m, -s);
    return r;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r;
    for (const auto& [m, s] : terms_) r.terms_.emplace(m, -s);
    return r;
}

AlgebraElement AlgebraElement::scaled(const Scalar& s) const {
    AlgebraElement r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) {
        Scalar cs = c * s;
        if (!cs.is_zero()) r.terms_.emplace(m, std::move(cs));
    }
    return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [m, s] : o.terms_) add_term(m, s);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [m, s] : o.terms_) add_term(m, -s);
    return *this;
}

RawElement AlgebraElement::raw() const {
    RawElement r;
    for (const auto& [m, s] : terms_) r.terms.emplace_back(s, m.word());
    return r;
}

int Presentation::add_generator(std::string name, bool invertible, int block) {
    if (finalized_) throw EngineError("Presentation: already finalized");
    int idx = static_cast<int>(gens_.size());
    gens_.push_back({std::move(name), invertible, idx, block});
    if (block >= 0) {
        auto& bg = block_gens_[block];
        if (!bg.empty() && bg.back() != idx - 1)
            throw EngineError("Presentation: block generators must be contiguous");
        bg.push_back(idx);
    }
    return idx;
}

void Presentation::add_rule(Letter hi, Letter lo, RawElement rhs) {
    if (finalized_) throw EngineError("Presentation: already finalized");
    if (hi.gen <= lo.gen) throw EngineError("Presentation: rule key must be descending");
    pending_[{hi, lo}] = std::move(rhs);
}

void Presentation::set_block_ideal(int block, GroebnerBasis basis) {
    if (finalized_) throw EngineError("Presentation: already finalized");
    if (!block_gens_.count(block)) throw EngineError("Presentation: unknown block");
    ideals_[block] = std::move(basis);
}

std::optional<int> Presentation::find_generator(const std::string& name) const {
    for (size_t k = 0; k < gens_.size(); ++k)
        if (gens_[k].name == name) return static_cast<int>(k);
    return std::nullopt;
}

void Presentation::finalize() {
    if (finalized_) return;
    finalized_ = true;  // enable normal_form during rule canonicalization
    // Iterate rule canonicalization to a fixpoint: a rule RHS may use words
    // that other rules reorder.
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        bool missing = false;
        for (const auto& [key, raw] : pending_) {
            AlgebraElement nf;
            try {
                nf = normal_form(raw, *this);
            } catch (const MissingRule&) {
                // a later rule is needed first; seed with the raw swap target
                // and retry on the next pass
                missing = true;
                continue;
            }
            auto it = rules_.find(key);
            if (it == rules_.end() || !(it->second == nf)) {
                rules_[key] = nf;
                changed = true;
            }
        }
        if (!changed && !missing) break;
        if (pass == 7) throw EngineError("Presentation: rule canonicalization did not stabilize");
    }
    // Termination witness: every RHS term must be a word of length <= 1, or a
    // sorted length-2 word starting strictly below the rule's hi generator.
    for (const auto& [key, rhs] : rules_) {
        for (const auto& [m, s] : rhs.terms()) {
            Word w = m.word();
            if (w.size() <= 1) continue;
            if (w.size() == 2 && w[0].gen <= w[1].gen && w[0].gen < key.hi.gen) continue;
            throw EngineError("Presentation: rule for " + gens_[key.hi.gen].name + "*" +
                              gens_[key.lo.gen].name + " violates the termination measure");
        }
    }
}

}  // namespace entwine
