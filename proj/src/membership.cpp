#include "entwine/membership.hpp"

#include <algorithm>

#include "entwine/errors.hpp"
#include "entwine/render.hpp"

namespace entwine {

namespace {

const std::pair<const Monomial, Scalar>& lead(const AlgebraElement& e) {
    return *e.terms().rbegin();
}

}  // namespace

CoinvariantAlgebra make_coinvariant_algebra(std::shared_ptr<const Presentation> pres,
                                            const std::map<int, AlgebraElement>& images,
                                            const EntwiningData& data) {
    Morphism embed = define_morphism(images, *pres, data.presentation());
    if (!embed.multiplicative())
        throw EngineError("coinvariant subalgebra: embedding does not respect the relations");
    for (const auto& [gen, img] : images)
        if (!is_coinvariant(img, data))
            throw NotInM("generator image " + render(img, data.presentation()) +
                         " is not coinvariant");
    return {std::move(pres), std::move(embed)};
}

MembershipSolver::MembershipSolver(const CoinvariantAlgebra& m, int degree_bound)
    : m_(m), bound_(degree_bound) {
    std::vector<std::pair<AlgebraElement, AlgebraElement>> raw;
    for (const Monomial& mono : monomials_up_to(*m_.pres, bound_)) {
        AlgebraElement pre = AlgebraElement::monomial(mono);
        raw.emplace_back(m_.embed.apply(pre), pre);
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        return lead(b.first).first < lead(a.first).first;
    });
    for (auto& [img, pre] : raw) {
        // eliminate the unit pivots accumulated so far (exact: pivot coeff 1)
        for (const Row& r : rows_) {
            if (!r.unit) continue;
            auto it = img.terms().find(r.pivot);
            if (it == img.terms().end()) continue;
            const Scalar c = it->second;
            img -= r.img.scaled(c);
            pre -= r.pre.scaled(c);
        }
        if (img.is_zero())
            throw EngineError("coinvariant subalgebra: embedded basis is linearly dependent");
        // pivot: the largest monomial carrying a unit coefficient
        Row row;
        for (auto it = img.terms().rbegin(); it != img.terms().rend(); ++it)
            if (it->second.is_unit()) {
                const Scalar inv = it->second.inverse();
                row = {img.scaled(inv), pre.scaled(inv), it->first, true};
                break;
            }
        if (row.unit) {
            // back-eliminate the new pivot to keep reduced echelon form
            for (Row& r : rows_) {
                auto it = r.img.terms().find(row.pivot);
                if (it == r.img.terms().end()) continue;
                const Scalar c = it->second;
                r.img -= row.img.scaled(c);
                r.pre -= row.pre.scaled(c);
            }
        } else {
            Monomial lm = lead(img).first;
            row = {std::move(img), std::move(pre), std::move(lm), false};
        }
        rows_.push_back(std::move(row));
    }
}

AlgebraElement MembershipSolver::express(const AlgebraElement& x) const {
    AlgebraElement num = x;
    AlgebraElement out;
    // unit-pivot rows are mutually reduced, so one pass in any order suffices
    for (const Row& r : rows_) {
        if (!r.unit || num.is_zero()) continue;
        auto it = num.terms().find(r.pivot);
        if (it == num.terms().end()) continue;
        const Scalar c = it->second;
        num -= r.img.scaled(c);
        out += r.pre.scaled(c);
    }
    if (num.is_zero()) return out;
    // residual against non-unit rows: fraction-free elimination, then the
    // accumulated denominator must divide out (PBW coordinates are unique)
    AlgebraElement out_num;
    Scalar den = Scalar::one();
    while (!num.is_zero()) {
        const auto& [mono, c] = lead(num);
        const Row* row = nullptr;
        for (const Row& r : rows_)
            if (!r.unit && r.pivot == mono) {
                row = &r;
                break;
            }
        if (!row)
            throw NotInM("element is not in the coinvariant subalgebra (degree bound " +
                         std::to_string(bound_) + ")");
        const Scalar piv = lead(row->img).second;
        if (auto ratio = c.divide_exact(piv)) {
            num -= row->img.scaled(*ratio);
            out_num += row->pre.scaled(*ratio);
        } else {
            const Scalar cc = c;  // lead() reference dies when num is rebuilt
            num = num.scaled(piv) - row->img.scaled(cc);
            out_num = out_num.scaled(piv) + row->pre.scaled(cc);
            den = den * piv;
        }
    }
    for (const auto& [m, s] : out_num.terms()) {
        auto q = s.divide_exact(den);
        if (!q)
            throw NotInM("element is not in the coinvariant subalgebra (degree bound " +
                         std::to_string(bound_) + ")");
        out.add_term(m, *q);
    }
    return out;
}

AlgebraElement MembershipSolver::embed(const AlgebraElement& x) const {
    return m_.embed.apply(x);
}

}  // namespace entwine
