#include "entwine/entwining.hpp"

#include <algorithm>
#include <exception>
#include <optional>

#include "entwine/errors.hpp"
#include "entwine/parallel.hpp"
#include "entwine/render.hpp"
#include "entwine/rewrite.hpp"

namespace entwine {

namespace {

constexpr size_t kMaxCounterexamples = 5;

/// Sweep a clause over n independent inputs. Slots are preallocated so the
/// parallel and serial paths report counterexamples in the same order.
ClauseResult run_clause(std::string name, size_t n,
                        const std::function<std::optional<Counterexample>(size_t)>& check) {
    std::vector<std::optional<Counterexample>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    parallel_for(n, [&](size_t i) {
        try {
            slots[i] = check(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    ClauseResult r;
    r.name = std::move(name);
    for (auto& s : slots) {
        if (!s) continue;
        r.pass = false;
        if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(*s);
    }
    return r;
}

TensorExpression pure_pc(const Monomial& m, const CBasis& b) {
    TensorExpression t({Space::P, Space::C});
    t.add_term({LegKey(m), LegKey(b)}, Scalar::one());
    return t;
}

}  // namespace

EntwiningData::EntwiningData(std::shared_ptr<const Presentation> pres, CoalgebraSpec spec,
                             PsiTable psi, CBasis e, PsiCTable psiC)
    : pres_(std::move(pres)),
      spec_(std::move(spec)),
      psi_(std::move(psi)),
      e_(std::move(e)),
      psiC_(std::move(psiC)),
      memo_(std::make_shared<Memo>()) {}

TensorExpression EntwiningData::psi_letter(const CBasis& b, const Letter& l) const {
    return psi_(b, l);
}

TensorExpression EntwiningData::psi_word(const CBasis& b, const Word& w) const {
    {
        std::lock_guard<std::mutex> lk(memo_->mu);
        auto it = memo_->cache.find({b, w});
        if (it != memo_->cache.end()) return it->second;
    }
    TensorExpression out({Space::P, Space::C});
    if (w.empty()) {
        out.add_term({LegKey(Monomial{}), LegKey(b)}, Scalar::one());
    } else {
        // psi(b (x) l w') = (m_P (x) id) (psi_l (x) id) (id (x) psi_{w'})
        Word rest(w.begin() + 1, w.end());
        TensorExpression head = psi_(b, w.front());
        for (const auto& [legs1, s1] : head.terms()) {
            const Monomial& u0 = std::get<Monomial>(legs1[0]);
            const CBasis& b1 = std::get<CBasis>(legs1[1]);
            TensorExpression tail = psi_word(b1, rest);
            for (const auto& [legs2, s2] : tail.terms()) {
                AlgebraElement prod =
                    multiply(AlgebraElement::monomial(u0),
                             AlgebraElement::monomial(std::get<Monomial>(legs2[0])), *pres_);
                const CBasis& b2 = std::get<CBasis>(legs2[1]);
                Scalar weight = s1 * s2;
                for (const auto& [m, c] : prod.terms())
                    out.add_term({LegKey(m), LegKey(b2)}, weight * c);
            }
        }
    }
    std::lock_guard<std::mutex> lk(memo_->mu);
    return memo_->cache.emplace(std::make_pair(b, w), out).first->second;
}

TensorExpression EntwiningData::psiC(const CBasis& b, const CBasis& c) const {
    return psiC_(b, c);
}

TensorExpression extend_psi(const CoalgebraElement& c, const AlgebraElement& u,
                            const EntwiningData& data) {
    TensorExpression out({Space::P, Space::C});
    for (const auto& [cb, sc] : c.terms())
        for (const auto& [m, sm] : u.terms()) out += data.psi_word(cb, m.word()).scaled(sc * sm);
    return out;
}

TensorExpression apply_psi(const TensorExpression& t, size_t c_leg, size_t p_leg,
                           const EntwiningData& data) {
    std::vector<Space> sig = t.signature();
    std::swap(sig[c_leg], sig[p_leg]);
    TensorExpression out(sig);
    for (const auto& [legs, s] : t.terms()) {
        const CBasis& b = std::get<CBasis>(legs[c_leg]);
        const Monomial& m = std::get<Monomial>(legs[p_leg]);
        TensorExpression r = data.psi_word(b, m.word());
        for (const auto& [rl, rs] : r.terms()) {
            std::vector<LegKey> nl = legs;
            nl[c_leg] = rl[0];
            nl[p_leg] = rl[1];
            out.add_term(std::move(nl), s * rs);
        }
    }
    return out;
}

TensorExpression apply_psiC(const TensorExpression& t, size_t b_leg, size_t c_leg,
                            const EntwiningData& data) {
    TensorExpression out(t.signature());
    for (const auto& [legs, s] : t.terms()) {
        const CBasis& b = std::get<CBasis>(legs[b_leg]);
        const CBasis& c = std::get<CBasis>(legs[c_leg]);
        TensorExpression r = data.psiC(b, c);
        for (const auto& [rl, rs] : r.terms()) {
            std::vector<LegKey> nl = legs;
            nl[b_leg] = rl[0];
            nl[c_leg] = rl[1];
            out.add_term(std::move(nl), s * rs);
        }
    }
    return out;
}

AxiomReport verify_entwining(const EntwiningData& data, int window, int degree_bound) {
    AxiomReport rep;
    rep.window = window;
    rep.degree_bound = degree_bound;
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();

    // Matrix-function coalgebras pair a large basis with many generators, so
    // the sweep is clamped to keep the product of the two ranges tractable.
    const bool matrix = spec.kind() == CoalgebraSpec::MatrixFunction;
    const int c_bound = matrix ? 1 : std::min(degree_bound, 2);
    const int p_bound = matrix ? std::min(degree_bound, 2) : degree_bound;
    std::vector<CBasis> cbasis = spec.sweep_basis(window, c_bound);
    std::vector<Monomial> monos = monomials_up_to(pres, p_bound);

    auto describe = [&](const CBasis& c, const Monomial& m) {
        return render(c, spec) + " (x) " + render(AlgebraElement::monomial(m), pres);
    };

    // psi(c (x) uw) = the cascade of psi(c (x) u) and psi(- (x) w)
    {
        struct Task {
            CBasis c;
            Monomial u, w;
        };
        std::vector<Task> tasks;
        for (const auto& c : cbasis)
            for (const auto& u : monos)
                for (const auto& w : monos) {
                    if (u.degree() + w.degree() > p_bound) continue;
                    tasks.push_back({c, u, w});
                }
        rep.clauses.push_back(run_clause(
            "multiplicativity", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                AlgebraElement prod = multiply(AlgebraElement::monomial(t.u),
                                               AlgebraElement::monomial(t.w), pres);
                TensorExpression lhs = extend_psi(CoalgebraElement::basis(t.c), prod, data);
                Word cat = t.u.word();
                Word ww = t.w.word();
                cat.insert(cat.end(), ww.begin(), ww.end());
                TensorExpression rhs = data.psi_word(t.c, cat);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{describe(t.c, t.u) + " * " + render(AlgebraElement::monomial(t.w), pres),
                                      render(lhs, pres, spec), render(rhs, pres, spec)};
            }));
    }

    // psi(c (x) 1) = 1 (x) c
    rep.clauses.push_back(
        run_clause("unit", cbasis.size(), [&](size_t i) -> std::optional<Counterexample> {
            TensorExpression lhs = data.psi_word(cbasis[i], {});
            TensorExpression rhs = pure_pc(Monomial{}, cbasis[i]);
            if (lhs == rhs) return std::nullopt;
            return Counterexample{describe(cbasis[i], Monomial{}), render(lhs, pres, spec),
                                  render(rhs, pres, spec)};
        }));

    // (id (x) Delta) psi = psi_12 psi_23 (Delta (x) id)
    {
        struct Task {
            CBasis c;
            Monomial u;
        };
        std::vector<Task> tasks;
        for (const auto& c : cbasis)
            for (const auto& u : monos) tasks.push_back({c, u});
        rep.clauses.push_back(run_clause(
            "coproduct", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                TensorExpression lhs = data.psi_word(t.c, t.u.word()).apply_delta(1, spec);
                TensorExpression start({Space::C, Space::C, Space::P});
                for (const auto& [cl, s] : coproduct(t.c, spec).terms())
                    start.add_term({cl[0], cl[1], LegKey(t.u)}, s);
                TensorExpression rhs = apply_psi(apply_psi(start, 1, 2, data), 0, 1, data);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{describe(t.c, t.u), render(lhs, pres, spec),
                                      render(rhs, pres, spec)};
            }));

        // (id (x) eps) psi(c (x) u) = eps(c) u
        rep.clauses.push_back(
            run_clause("counit", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                TensorExpression lhs = data.psi_word(t.c, t.u.word()).apply_counit(1, spec);
                TensorExpression rhs({Space::P});
                rhs.add_term({LegKey(t.u)}, counit(t.c, spec));
                if (lhs == rhs) return std::nullopt;
                return Counterexample{describe(t.c, t.u), render(lhs, pres, spec),
                                      render(rhs, pres, spec)};
            }));
    }

    // psi kills every defining relation of P
    {
        struct Task {
            CBasis c;
            Word lhs_word;
            AlgebraElement rhs;
            std::string label;
        };
        std::vector<Task> tasks;
        for (const auto& c : cbasis) {
            for (const auto& [key, rhs] : pres.rules()) {
                Word w{key.hi, key.lo};
                tasks.push_back({c, w, rhs,
                                 render(c, spec) + " (x) relation " +
                                     render(Monomial::from_sorted_word({key.lo, key.hi}), pres)});
            }
            for (const auto& [block, gb] : pres.block_ideals()) {
                const std::vector<int>& vars = pres.block_gens(block);
                for (const CPoly& poly : gb.polys()) {
                    AlgebraElement rhs;  // ideal member: psi of it must vanish
                    Word lead;
                    bool first = true;
                    AlgebraElement rest;
                    for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
                        Word w;
                        for (size_t v = 0; v < it->first.size(); ++v)
                            for (int rep2 = 0; rep2 < it->first[v]; ++rep2)
                                w.push_back({vars[v], 1});
                        if (first) {
                            lead = w;
                            first = false;
                        } else {
                            rest.add_term(Monomial::from_sorted_word(w),
                                          Scalar(GaussianRational(0) - it->second));
                        }
                    }
                    Scalar lc(poly.lead().second);
                    tasks.push_back({c, lead, rest.scaled(lc.inverse()),
                                     render(c, spec) + " (x) ideal relation"});
                }
            }
        }
        rep.clauses.push_back(run_clause(
            "relations", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                TensorExpression lhs = data.psi_word(t.c, t.lhs_word);
                TensorExpression rhs({Space::P, Space::C});
                for (const auto& [m, s] : t.rhs.terms())
                    rhs += data.psi_word(t.c, m.word()).scaled(s);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{t.label, render(lhs, pres, spec), render(rhs, pres, spec)};
            }));
    }

    return rep;
}

AxiomReport verify_psiC(const EntwiningData& data, int window) {
    AxiomReport rep;
    rep.window = window;
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();
    // degree 1 suffices for the matrix variant: psiC is built from the
    // (multiplicative) coproduct, and the quadratic sweep is prohibitively
    // large there
    const int c_bound = spec.kind() == CoalgebraSpec::MatrixFunction ? 1 : 2;
    std::vector<CBasis> cbasis = spec.sweep_basis(window, c_bound);

    struct Task {
        CBasis b, c;
    };
    std::vector<Task> tasks;
    for (const auto& b : cbasis)
        for (const auto& c : cbasis) tasks.push_back({b, c});

    auto describe = [&](const Task& t) {
        return render(t.b, spec) + " (x) " + render(t.c, spec);
    };

    // (id (x) Delta) psiC = psiC_12 psiC_23 (Delta (x) id)
    rep.clauses.push_back(run_clause(
        "coassociativity", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
            const Task& t = tasks[i];
            TensorExpression lhs = data.psiC(t.b, t.c).apply_delta(1, spec);
            TensorExpression start({Space::C, Space::C, Space::C});
            for (const auto& [cl, s] : coproduct(t.b, spec).terms())
                start.add_term({cl[0], cl[1], LegKey(t.c)}, s);
            TensorExpression rhs = apply_psiC(apply_psiC(start, 1, 2, data), 0, 1, data);
            if (lhs == rhs) return std::nullopt;
            return Counterexample{describe(t), render(lhs, pres, spec), render(rhs, pres, spec)};
        }));

    // (id (x) eps) psiC(b (x) c) = eps(b) c
    rep.clauses.push_back(
        run_clause("counit", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
            const Task& t = tasks[i];
            TensorExpression lhs = data.psiC(t.b, t.c).apply_counit(1, spec);
            TensorExpression rhs({Space::C});
            rhs.add_term({LegKey(t.c)}, counit(t.b, spec));
            if (lhs == rhs) return std::nullopt;
            return Counterexample{describe(t), render(lhs, pres, spec), render(rhs, pres, spec)};
        }));

    // psiC(e (x) c) = Delta c
    rep.clauses.push_back(
        run_clause("grouplike", cbasis.size(), [&](size_t i) -> std::optional<Counterexample> {
            TensorExpression lhs = data.psiC(data.grouplike(), cbasis[i]);
            TensorExpression rhs = coproduct(cbasis[i], spec);
            if (lhs == rhs) return std::nullopt;
            return Counterexample{render(data.grouplike(), spec) + " (x) " +
                                      render(cbasis[i], spec),
                                  render(lhs, pres, spec), render(rhs, pres, spec)};
        }));

    return rep;
}

TensorExpression coaction(const AlgebraElement& u, const EntwiningData& data) {
    return extend_psi(CoalgebraElement::basis(data.grouplike()), u, data);
}

bool is_coinvariant(const AlgebraElement& x, const EntwiningData& data) {
    return coaction(x, data) == tensor_pc(x, CoalgebraElement::basis(data.grouplike()));
}

CommutatorTable CommutatorTable::classical(int n, int num_x) {
    CommutatorTable t;
    t.n = n;
    t.num_x = num_x;
    t.gamma.assign(n * n, std::vector<AlgebraElement>(num_x));
    t.lambda.assign(num_x,
                    std::vector<std::vector<Scalar>>(num_x, std::vector<Scalar>(num_x)));
    return t;
}

EntwiningData build_matrix_entwining(const CommutatorTable& table) {
    const int n = table.n;
    const int m = table.num_x;
    CoalgebraSpec spec = CoalgebraSpec::matrix_function(n);
    const Presentation& block = spec.matrix_presentation();

    auto pres = std::make_shared<Presentation>();
    for (const auto& g : block.generators()) pres->add_generator(g.name, g.invertible, 0);
    std::vector<int> xg(m);
    for (int k = 1; k <= m; ++k) xg[k - 1] = pres->add_generator("x[" + std::to_string(k) + "]");

    const Scalar kap = Scalar::param(PKAPPA);
    // x_k a_ij -> a_ij x_k - kappa * gamma_{ij,k}
    for (int g = 0; g < n * n; ++g)
        for (int k = 0; k < m; ++k) {
            RawElement rhs = RawElement::letter(g) * RawElement::letter(xg[k]) -
                             table.gamma[g][k].raw().scaled(kap);
            pres->add_rule({xg[k], 1}, {g, 1}, rhs);
        }
    // x_r x_p -> x_p x_r - kappa * sum_k lambda[p][r][k] x_k   (p < r)
    for (int p = 0; p < m; ++p)
        for (int r = p + 1; r < m; ++r) {
            RawElement rhs = RawElement::letter(xg[p]) * RawElement::letter(xg[r]);
            for (int k = 0; k < m; ++k)
                rhs = rhs - RawElement::letter(xg[k]).scaled(kap * table.lambda[p][r][k]);
            pres->add_rule({xg[r], 1}, {xg[p], 1}, rhs);
        }
    if (!block.block_ideals().empty())
        pres->set_block_ideal(0, block.block_ideals().begin()->second);
    pres->finalize();

    AmbiguityReport amb = check_confluence(*pres, 3);
    if (!amb.confluent())
        throw InconsistentTable("commutator table is inconsistent: " +
                                std::to_string(amb.unresolved.size()) +
                                " unresolved overlap(s)");

    CommutatorTable tab = table;

    // [b, x_k] for a block monomial b, by the Leibniz rule; lands in the
    // block presentation (with its Groebner reduction), kappa included.
    auto leibniz = [spec, tab, kap](const Monomial& bm, int k) -> AlgebraElement {
        const Presentation& bp = spec.matrix_presentation();
        Word w = bm.word();
        AlgebraElement total;
        for (size_t t = 0; t < w.size(); ++t) {
            const AlgebraElement& g = tab.gamma[w[t].gen][k];
            if (g.is_zero()) continue;
            Word rest;
            rest.reserve(w.size() - 1);
            for (size_t j = 0; j < w.size(); ++j)
                if (j != t) rest.push_back(w[j]);
            RawElement r = g.raw() * RawElement{{{Scalar::one(), rest}}};
            total += normal_form(r, bp);
        }
        return total.scaled(kap);
    };

    auto psi = [spec, tab, leibniz, n, m](const CBasis& b, const Letter& l) -> TensorExpression {
        TensorExpression out({Space::P, Space::C});
        if (l.gen >= n * n) {
            // psi(b (x) x_k) = x_k (x) b + sum_t a_kt (x) [b, x_t]
            const int k = l.gen - n * n;
            out.add_term({LegKey(Monomial{{{l.gen, 1}}}), LegKey(b)}, Scalar::one());
            for (int t = 0; t < m; ++t) {
                AlgebraElement der = leibniz(b.mono, t);
                int ag = spec.matrix_gen(k + 1, t + 1);
                for (const auto& [mono, c] : der.terms())
                    out.add_term({LegKey(Monomial{{{ag, 1}}}), LegKey(CBasis{0, mono})}, c);
            }
        } else {
            // psi(b (x) a_kl) = sum_t a_kt (x) b a_tl
            const int k = l.gen / n + 1;
            const int lcol = l.gen % n + 1;
            for (int t = 1; t <= n; ++t) {
                CoalgebraElement prod = coalg_multiply(
                    CoalgebraElement::basis(b),
                    CoalgebraElement::basis(CBasis{0, Monomial{{{spec.matrix_gen(t, lcol), 1}}}}),
                    spec);
                int ag = spec.matrix_gen(k, t);
                for (const auto& [cb, c] : prod.terms())
                    out.add_term({LegKey(Monomial{{{ag, 1}}}), LegKey(cb)}, c);
            }
        }
        return out;
    };

    auto psiC = [spec](const CBasis& b, const CBasis& c) -> TensorExpression {
        // psiC(b (x) c) = c_(1) (x) b c_(2)
        TensorExpression out({Space::C, Space::C});
        for (const auto& [cl, s] : coproduct(c, spec).terms()) {
            CoalgebraElement prod = coalg_multiply(
                CoalgebraElement::basis(b), CoalgebraElement::basis(std::get<CBasis>(cl[1])), spec);
            for (const auto& [cb, sc] : prod.terms())
                out.add_term({cl[0], LegKey(cb)}, s * sc);
        }
        return out;
    };

    return EntwiningData(pres, spec, psi, CBasis{0, Monomial{}}, psiC);
}

EntwiningData hopf_entwining(std::shared_ptr<const Presentation> hopf,
                             const CoactionTable& coaction_table) {
    CoalgebraSpec spec = CoalgebraSpec::group_like("c");
    CoactionTable tab = coaction_table;
    auto psi = [tab](const CBasis& b, const Letter& l) -> TensorExpression {
        auto it = tab.entries.find(l);
        if (it == tab.entries.end())
            throw MissingImage("no coaction entry for generator letter");
        TensorExpression out({Space::P, Space::C});
        for (const auto& [elem, shift] : it->second)
            for (const auto& [mono, s] : elem.terms())
                out.add_term({LegKey(mono), LegKey(CBasis{b.p + shift, {}})}, s);
        return out;
    };
    auto psiC = [](const CBasis& b, const CBasis& c) -> TensorExpression {
        TensorExpression out({Space::C, Space::C});
        out.add_term({LegKey(c), LegKey(CBasis{b.p + c.p, {}})}, Scalar::one());
        return out;
    };
    return EntwiningData(std::move(hopf), spec, psi, CBasis{0, {}}, psiC);
}

}  // namespace entwine
