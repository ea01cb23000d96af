#include "entwine/rewrite.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "entwine/errors.hpp"

namespace entwine {

namespace {

class Rewriter {
  public:
    Rewriter(const Presentation& p) : p_(p) {}

    AlgebraElement reduce(const RawElement& e) {
        AlgebraElement out;
        for (const auto& [s, w] : e.terms)
            if (!s.is_zero()) out += nf(w).scaled(s);
        return out;
    }

    /// Apply the single redex at position i of w (caller guarantees one exists).
    static RawElement single_step(const Presentation& p, const Scalar& coeff, const Word& w,
                                  size_t i) {
        const Letter &a = w[i], &b = w[i + 1];
        RawElement out;
        if (a.gen == b.gen && a.sign != b.sign) {
            Word nw(w.begin(), w.begin() + i);
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            out.terms.emplace_back(coeff, std::move(nw));
            return out;
        }
        const auto& ga = p.generator(a.gen);
        const auto& gb = p.generator(b.gen);
        if (a.gen > b.gen && ga.block >= 0 && ga.block == gb.block) {
            Word nw = w;
            std::swap(nw[i], nw[i + 1]);
            out.terms.emplace_back(coeff, std::move(nw));
            return out;
        }
        auto it = p.rules().find({a, b});
        if (it == p.rules().end())
            throw MissingRule("no rule for " + ga.name + (a.sign < 0 ? "^-1" : "") + " * " +
                              gb.name + (b.sign < 0 ? "^-1" : ""));
        for (const auto& [m, s] : it->second.terms()) {
            Word nw(w.begin(), w.begin() + i);
            Word mid = m.word();
            nw.insert(nw.end(), mid.begin(), mid.end());
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            out.terms.emplace_back(coeff * s, std::move(nw));
        }
        return out;
    }

  private:
    // Memoized per reduction: identical intermediate words collapse, which
    // keeps branching rules (e.g. kappa-type reorderings) polynomial.
    const AlgebraElement& nf(const Word& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        AlgebraElement r = compute_nf(w);
        return cache_.emplace(w, std::move(r)).first->second;
    }

    AlgebraElement compute_nf(const Word& w0) {
        Word w = w0;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            const Letter &a = w[i], &b = w[i + 1];
            if (a.gen == b.gen) {
                if (a.sign != b.sign) {
                    bump();
                    Word nw(w.begin(), w.begin() + i);
                    nw.insert(nw.end(), w.begin() + i + 2, w.end());
                    return nf(nw);
                }
                continue;
            }
            if (a.gen < b.gen) continue;
            const auto& ga = p_.generator(a.gen);
            const auto& gb = p_.generator(b.gen);
            if (ga.block >= 0 && ga.block == gb.block) {
                // free commutation inside a block: bubble locally
                bump();
                std::swap(w[i], w[i + 1]);
                if (i >= 2) i -= 2;  // recheck the new left neighbour
                else i = static_cast<size_t>(-1);
                continue;
            }
            auto it = p_.rules().find({a, b});
            if (it == p_.rules().end())
                throw MissingRule("no rule for " + ga.name + (a.sign < 0 ? "^-1" : "") + " * " +
                                  gb.name + (b.sign < 0 ? "^-1" : ""));
            bump();
            AlgebraElement out;
            for (const auto& [m, s] : it->second.terms()) {
                Word nw(w.begin(), w.begin() + i);
                Word mid = m.word();
                nw.insert(nw.end(), mid.begin(), mid.end());
                nw.insert(nw.end(), w.begin() + i + 2, w.end());
                out += nf(nw).scaled(s);
            }
            return out;
        }
        Monomial m = Monomial::from_sorted_word(w);
        if (auto reduced = block_reduce(m)) {
            AlgebraElement out;
            for (const auto& [s, nw] : *reduced) out += nf(nw).scaled(s);
            return out;
        }
        return AlgebraElement::monomial(std::move(m));
    }

    void bump() {
        if (++steps_ > p_.step_budget)
            throw NonTerminating("rewriting exceeded the step budget");
    }

    // Reduce the first non-normal commutative block run, if any.
    std::optional<std::vector<std::pair<Scalar, Word>>> block_reduce(const Monomial& m) {
        for (size_t i = 0; i < m.factors.size();) {
            int blk = p_.generator(m.factors[i].first).block;
            auto ideal = blk >= 0 ? p_.block_ideals().find(blk) : p_.block_ideals().end();
            if (blk < 0 || ideal == p_.block_ideals().end()) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j < m.factors.size() && p_.generator(m.factors[j].first).block == blk) ++j;
            const auto& vars = p_.block_gens(blk);
            CExp exp(vars.size(), 0);
            for (size_t k = i; k < j; ++k)
                exp[m.factors[k].first - vars.front()] = m.factors[k].second;
            CPoly reduced = ideal->second.reduce(CPoly::monomial(exp));
            if (!(reduced == CPoly::monomial(exp))) {
                bump();
                std::vector<std::pair<Scalar, Word>> out;
                for (const auto& [e, c] : reduced.terms()) {
                    Monomial nm;
                    nm.factors.assign(m.factors.begin(), m.factors.begin() + i);
                    for (size_t v = 0; v < e.size(); ++v)
                        if (e[v] != 0) nm.factors.emplace_back(vars[v], e[v]);
                    nm.factors.insert(nm.factors.end(), m.factors.begin() + j, m.factors.end());
                    out.emplace_back(Scalar(c), nm.word());
                }
                return out;
            }
            i = j;
        }
        return std::nullopt;
    }

    const Presentation& p_;
    std::map<Word, AlgebraElement> cache_;
    long steps_ = 0;
};

}  // namespace

AlgebraElement normal_form(const RawElement& e, const Presentation& pres) {
    return Rewriter(pres).reduce(e);
}

AlgebraElement normal_form(const AlgebraElement& e, const Presentation& pres) {
    return normal_form(e.raw(), pres);
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                        const Presentation& pres) {
    return normal_form(a.raw() * b.raw(), pres);
}

AlgebraElement power(const AlgebraElement& a, int n, const Presentation& pres) {
    if (n < 0) return power(invert_unit(a, pres), -n, pres);
    AlgebraElement r = AlgebraElement::one();
    for (int k = 0; k < n; ++k) r = multiply(r, a, pres);
    return r;
}

AlgebraElement invert_unit(const AlgebraElement& e, const Presentation& pres) {
    if (e.terms().size() != 1) throw NotAUnit("not a single-term element");
    const auto& [m, s] = *e.terms().begin();
    if (!s.is_unit()) throw NotAUnit("coefficient is not a unit scalar");
    for (const auto& [g, ex] : m.factors)
        if (!pres.generator(g).invertible) throw NotAUnit("non-invertible generator in monomial");
    Word inv;
    Word w = m.word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->gen, -it->sign});
    RawElement r;
    r.terms.emplace_back(s.inverse(), std::move(inv));
    return normal_form(r, pres);
}

namespace {

std::vector<Letter> all_letters(const Presentation& pres) {
    std::vector<Letter> ls;
    for (size_t g = 0; g < pres.generators().size(); ++g) {
        ls.push_back({static_cast<int>(g), 1});
        if (pres.generators()[g].invertible) ls.push_back({static_cast<int>(g), -1});
    }
    return ls;
}

bool is_redex(const Presentation& pres, const Letter& a, const Letter& b) {
    if (a.gen == b.gen) return a.sign != b.sign;
    if (a.gen < b.gen) return false;
    const auto& ga = pres.generator(a.gen);
    const auto& gb = pres.generator(b.gen);
    if (ga.block >= 0 && ga.block == gb.block) return true;
    return pres.rules().count({a, b}) > 0;
}

RawElement block_poly_to_raw(const Presentation& pres, int block, const CPoly& p) {
    const auto& vars = pres.block_gens(block);
    RawElement r;
    for (const auto& [e, c] : p.terms()) {
        Word w;
        for (size_t v = 0; v < e.size(); ++v)
            for (int k = 0; k < e[v]; ++k) w.push_back({vars[v], 1});
        r.terms.emplace_back(Scalar(c), std::move(w));
    }
    return r;
}

}  // namespace

AmbiguityReport check_confluence(const Presentation& pres, int degree_bound) {
    AmbiguityReport report;
    auto letters = all_letters(pres);
    (void)degree_bound;  // all rule LHS are length 2, so overlaps are triples

    for (const Letter& a : letters)
        for (const Letter& b : letters) {
            if (!is_redex(pres, a, b)) continue;
            for (const Letter& c : letters) {
                if (!is_redex(pres, b, c)) continue;
                Word w{a, b, c};
                ++report.overlaps_checked;
                RawElement left = Rewriter::single_step(pres, Scalar::one(), w, 0);
                RawElement right = Rewriter::single_step(pres, Scalar::one(), w, 1);
                AlgebraElement nl = normal_form(left, pres);
                AlgebraElement nr = normal_form(right, pres);
                if (!(nl == nr)) report.unresolved.push_back({w, nl, nr});
            }
        }

    // rule-vs-ideal overlaps: a letter moved through an ideal generator must
    // annihilate it
    for (const auto& [block, basis] : pres.block_ideals()) {
        for (const CPoly& g : basis.polys()) {
            RawElement graw = block_poly_to_raw(pres, block, g);
            for (const Letter& l : letters) {
                if (pres.generator(l.gen).block == block) continue;
                RawElement lw = RawElement::letter(l.gen, l.sign);
                for (const RawElement& probe : {lw * graw, graw * lw}) {
                    ++report.overlaps_checked;
                    AlgebraElement nf = normal_form(probe, pres);
                    if (!nf.is_zero()) {
                        Word w = probe.terms.front().second;
                        report.unresolved.push_back({w, nf, AlgebraElement{}});
                    }
                }
            }
        }
    }
    return report;
}

Morphism::Morphism(std::map<int, AlgebraElement> images, const Presentation* source,
                   const Presentation* target)
    : images_(std::move(images)), source_(source), target_(target) {
    for (size_t g = 0; g < source_->generators().size(); ++g) {
        if (!images_.count(static_cast<int>(g)))
            throw MissingImage("no image for generator " + source_->generators()[g].name);
        if (source_->generators()[g].invertible)
            invert_unit(images_.at(static_cast<int>(g)), *target_);  // throws if not a unit
    }
    // validation: every relation of the source maps to zero in the target
    multiplicative_ = true;
    for (const auto& [key, rhs] : source_->rules()) {
        Word lhs{key.hi, key.lo};
        AlgebraElement diff = apply_word(lhs) - apply(rhs);
        if (!normal_form(diff, *target_).is_zero()) {
            multiplicative_ = false;
            return;
        }
    }
    for (const auto& [block, basis] : source_->block_ideals()) {
        for (const CPoly& g : basis.polys()) {
            RawElement graw = block_poly_to_raw(*source_, block, g);
            AlgebraElement acc;
            for (const auto& [s, w] : graw.terms) acc += apply_word(w).scaled(s);
            if (!normal_form(acc, *target_).is_zero()) {
                multiplicative_ = false;
                return;
            }
        }
    }
}

AlgebraElement Morphism::apply_word(const Word& w) const {
    AlgebraElement r = AlgebraElement::one();
    for (const Letter& l : w) {
        AlgebraElement img = images_.at(l.gen);
        if (l.sign < 0) img = invert_unit(img, *target_);
        r = multiply(r, img, *target_);
    }
    return r;
}

AlgebraElement Morphism::apply(const AlgebraElement& e) const {
    AlgebraElement r;
    for (const auto& [m, s] : e.terms()) r += apply_word(m.word()).scaled(s);
    return r;
}

Morphism define_morphism(const std::map<int, AlgebraElement>& images, const Presentation& source,
                         const Presentation& target) {
    return Morphism(images, &source, &target);
}

namespace {

void enumerate(const Presentation& pres, int gen, int remaining, Monomial& cur,
               std::vector<Monomial>& out) {
    if (gen == static_cast<int>(pres.generators().size())) {
        out.push_back(cur);
        return;
    }
    enumerate(pres, gen + 1, remaining, cur, out);  // exponent 0
    const bool inv = pres.generators()[gen].invertible;
    for (int e = 1; e <= remaining; ++e) {
        cur.factors.emplace_back(gen, e);
        enumerate(pres, gen + 1, remaining - e, cur, out);
        cur.factors.pop_back();
        if (inv) {
            cur.factors.emplace_back(gen, -e);
            enumerate(pres, gen + 1, remaining - e, cur, out);
            cur.factors.pop_back();
        }
    }
}

}  // namespace

std::vector<Monomial> monomials_up_to(const Presentation& pres, int bound) {
    std::vector<Monomial> all;
    Monomial cur;
    enumerate(pres, 0, bound, cur, all);
    // keep only canonical monomials (commutative blocks in normal form)
    std::vector<Monomial> out;
    for (const Monomial& m : all) {
        AlgebraElement nf = normal_form(AlgebraElement::monomial(m), pres);
        if (nf.terms().size() == 1 && nf.terms().begin()->first == m &&
            nf.terms().begin()->second.is_one())
            out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace entwine
