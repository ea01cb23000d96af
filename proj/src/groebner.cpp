#include "entwine/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace entwine {

bool deglex_less(const CExp& a, const CExp& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

CPoly::CPoly(size_t nvars, GaussianRational c) {
    if (!c.is_zero()) terms_[CExp(nvars, 0)] = std::move(c);
}

CPoly CPoly::monomial(CExp e, GaussianRational c) {
    CPoly p;
    if (!c.is_zero()) p.terms_[std::move(e)] = std::move(c);
    return p;
}

size_t CPoly::nvars() const {
    return terms_.empty() ? 0 : terms_.begin()->first.size();
}

void CPoly::add_term(const CExp& e, const GaussianRational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CPoly CPoly::operator+(const CPoly& o) const {
    CPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

CPoly CPoly::operator-(const CPoly& o) const {
    CPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

CPoly CPoly::operator*(const CPoly& o) const {
    CPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            CExp e(e1.size());
            for (size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
            r.add_term(e, c1 * c2);
        }
    return r;
}

CPoly CPoly::scaled(const GaussianRational& c) const {
    CPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

const std::pair<const CExp, GaussianRational>& CPoly::lead() const {
    if (terms_.empty()) throw std::domain_error("CPoly: lead of zero");
    return *terms_.rbegin();
}

namespace {

bool divides(const CExp& a, const CExp& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

CExp lcm_exp(const CExp& a, const CExp& b) {
    CExp e(a.size());
    for (size_t k = 0; k < a.size(); ++k) e[k] = std::max(a[k], b[k]);
    return e;
}

CExp sub_exp(const CExp& a, const CExp& b) {
    CExp e(a.size());
    for (size_t k = 0; k < a.size(); ++k) e[k] = a[k] - b[k];
    return e;
}

bool coprime(const CExp& a, const CExp& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0 && b[k] > 0) return false;
    return true;
}

CPoly reduce_mod(const CPoly& p, const std::vector<CPoly>& basis) {
    CPoly rem;
    CPoly work = p;
    while (!work.is_zero()) {
        const auto& [le, lc] = work.lead();
        bool reduced = false;
        for (const auto& g : basis) {
            const auto& [ge, gc] = g.lead();
            if (divides(ge, le)) {
                CPoly t = CPoly::monomial(sub_exp(le, ge), lc / gc);
                work = work - t * g;
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.add_term(le, lc);
            CPoly t = CPoly::monomial(le, lc);
            work = work - t;
        }
    }
    return rem;
}

}  // namespace

GroebnerBasis::GroebnerBasis(std::vector<CPoly> generators) {
    std::vector<CPoly> g;
    for (auto& p : generators)
        if (!p.is_zero()) g.push_back(p.scaled(p.lead().second.inverse()));

    // Normal selection strategy: treat pairs by increasing lcm so reducers
    // are available early; monic basis elements keep coefficients small.
    std::multimap<CExp, std::pair<size_t, size_t>, DeglexLess> pending;
    auto enqueue = [&](size_t i, size_t j) {
        const CExp& ei = g[i].lead().first;
        const CExp& ej = g[j].lead().first;
        if (coprime(ei, ej)) return;  // Buchberger's first criterion
        pending.emplace(lcm_exp(ei, ej), std::make_pair(i, j));
    };
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j) enqueue(i, j);

    while (!pending.empty()) {
        auto it = pending.begin();
        const CExp l = it->first;
        auto [i, j] = it->second;
        pending.erase(it);
        // chain criterion: (i,j) is superfluous when another lead divides the
        // lcm and both flanking pairs have strictly smaller lcms
        bool skip = false;
        const CExp& ei = g[i].lead().first;
        const CExp& ej = g[j].lead().first;
        for (size_t k = 0; k < g.size() && !skip; ++k) {
            if (k == i || k == j) continue;
            const CExp& ek = g[k].lead().first;
            if (divides(ek, l) && !(lcm_exp(ei, ek) == l) && !(lcm_exp(ej, ek) == l)) skip = true;
        }
        if (skip) continue;
        const GaussianRational& ci = g[i].lead().second;
        const GaussianRational& cj = g[j].lead().second;
        CPoly s = g[i] * CPoly::monomial(sub_exp(l, ei), GaussianRational(1) / ci) -
                  g[j] * CPoly::monomial(sub_exp(l, ej), GaussianRational(1) / cj);
        CPoly r = reduce_mod(s, g);
        if (!r.is_zero()) {
            size_t t = g.size();
            g.push_back(r.scaled(r.lead().second.inverse()));
            for (size_t k = 0; k < t; ++k) enqueue(k, t);
        }
    }

    // minimalize: drop polys whose lead is divisible by another lead
    std::vector<CPoly> minimal;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size(); ++j) {
            if (i == j) continue;
            if (divides(g[j].lead().first, g[i].lead().first) &&
                !(g[i].lead().first == g[j].lead().first && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    // inter-reduce tails and normalize lead coefficient to 1
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<CPoly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        CPoly r = reduce_mod(minimal[i], others);
        minimal[i] = r.scaled(r.lead().second.inverse());
    }
    std::sort(minimal.begin(), minimal.end(), [](const CPoly& a, const CPoly& b) {
        return deglex_less(a.lead().first, b.lead().first);
    });
    basis_ = std::move(minimal);
}

CPoly GroebnerBasis::reduce(const CPoly& p) const {
    if (basis_.empty()) return p;
    return reduce_mod(p, basis_);
}

std::vector<CPoly> orthogonality_ideal(int n) {
    auto var = [n](int i, int j) {
        CExp e(n * n, 0);
        e[i * n + j] = 1;
        return CPoly::monomial(e);
    };
    std::vector<CPoly> gens;
    // A*At = I and At*A = I
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            CPoly p, q;
            for (int k = 0; k < n; ++k) {
                p = p + var(i, k) * var(j, k);
                q = q + var(k, i) * var(k, j);
            }
            if (i == j) {
                p = p - CPoly(n * n, GaussianRational(1));
                q = q - CPoly(n * n, GaussianRational(1));
            }
            gens.push_back(p);
            gens.push_back(q);
        }
    // det A = 1 (Leibniz expansion)
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    CPoly det;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        CPoly t(n * n, GaussianRational(inv % 2 ? -1 : 1));
        for (int i = 0; i < n; ++i) t = t * var(i, perm[i]);
        det = det + t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    det = det - CPoly(n * n, GaussianRational(1));
    gens.push_back(det);
    return gens;
}

}  // namespace entwine
