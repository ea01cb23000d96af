#include "entwine/crossed.hpp"

#include <algorithm>
#include <random>

#include "entwine/errors.hpp"
#include "entwine/parallel.hpp"
#include "entwine/render.hpp"

namespace entwine {

namespace {

constexpr size_t kMaxCounterexamples = 5;

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

/// Contract legs (i: C, i+1: P) through a bilinear map into one P leg.
TensorExpression contract_cp(const TensorExpression& t, size_t i,
                             const std::function<AlgebraElement(const CBasis&, const Monomial&)>& f) {
    std::vector<Space> sig = t.signature();
    sig[i] = Space::P;
    sig.erase(sig.begin() + i + 1);
    TensorExpression out(sig);
    for (const auto& [legs, s] : t.terms()) {
        AlgebraElement v = f(std::get<CBasis>(legs[i]), std::get<Monomial>(legs[i + 1]));
        std::vector<LegKey> base = legs;
        base.erase(base.begin() + i + 1);
        for (const auto& [m, c] : v.terms()) {
            std::vector<LegKey> nl = base;
            nl[i] = LegKey(m);
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

/// Contract legs (i: C, i+1: C) through a bilinear map into one P leg.
TensorExpression contract_cc(const TensorExpression& t, size_t i,
                             const std::function<AlgebraElement(const CBasis&, const CBasis&)>& f) {
    std::vector<Space> sig = t.signature();
    sig[i] = Space::P;
    sig.erase(sig.begin() + i + 1);
    TensorExpression out(sig);
    for (const auto& [legs, s] : t.terms()) {
        AlgebraElement v = f(std::get<CBasis>(legs[i]), std::get<CBasis>(legs[i + 1]));
        std::vector<LegKey> base = legs;
        base.erase(base.begin() + i + 1);
        for (const auto& [m, c] : v.terms()) {
            std::vector<LegKey> nl = base;
            nl[i] = LegKey(m);
            out.add_term(std::move(nl), s * c);
        }
    }
    return out;
}

/// Re-express the P leg of a [P,C] tensor in M's PBW basis.
TensorExpression to_mc(const TensorExpression& t, const MembershipSolver& solver) {
    // group by the C leg first: only the accumulated P coefficient of each
    // basis element is required to lie in M, not the individual monomials
    std::map<LegKey, AlgebraElement> grouped;
    for (const auto& [legs, s] : t.terms())
        grouped[legs[1]].add_term(std::get<Monomial>(legs[0]), s);
    TensorExpression out({Space::M, Space::C});
    for (const auto& [ck, p] : grouped) {
        AlgebraElement m = solver.express(p);
        for (const auto& [mm, c] : m.terms()) out.add_term({LegKey(mm), ck}, c);
    }
    return out;
}

AlgebraElement to_algebra(const TensorExpression& t) {
    AlgebraElement out;
    for (const auto& [legs, s] : t.terms()) out.add_term(std::get<Monomial>(legs[0]), s);
    return out;
}

/// Delta(c) with extra legs appended: (c_(1), c_(2), extras...).
TensorExpression delta_with(const CBasis& c, const CoalgebraSpec& spec,
                            const std::vector<std::pair<Space, LegKey>>& extras) {
    std::vector<Space> sig{Space::C, Space::C};
    for (const auto& [sp, k] : extras) sig.push_back(sp);
    TensorExpression out(sig);
    for (const auto& [cl, s] : coproduct(c, spec).terms()) {
        std::vector<LegKey> legs{cl[0], cl[1]};
        for (const auto& [sp, k] : extras) legs.push_back(k);
        out.add_term(std::move(legs), s);
    }
    return out;
}

/// (Delta a, Delta b, extras...) = (a_(1), a_(2), b_(1), b_(2), extras...).
TensorExpression delta_delta_with(const CBasis& a, const CBasis& b, const CoalgebraSpec& spec,
                                  const std::vector<std::pair<Space, LegKey>>& extras) {
    std::vector<Space> sig{Space::C, Space::C, Space::C, Space::C};
    for (const auto& [sp, k] : extras) sig.push_back(sp);
    TensorExpression out(sig);
    for (const auto& [al, sa] : coproduct(a, spec).terms())
        for (const auto& [bl, sb] : coproduct(b, spec).terms()) {
            std::vector<LegKey> legs{al[0], al[1], bl[0], bl[1]};
            for (const auto& [sp, k] : extras) legs.push_back(k);
            out.add_term(std::move(legs), sa * sb);
        }
    return out;
}

GaussianRational num_eval(const Scalar& s) {
    static const std::array<GaussianRational, kNumParams> point{
        GaussianRational(2), GaussianRational(3), GaussianRational(5), GaussianRational(7)};
    return s.substitute(point);
}

size_t matrix_rank(std::vector<std::vector<GaussianRational>> m) {
    size_t rank = 0;
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        GaussianRational inv = m[rank][col].inverse();
        for (size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            GaussianRational f = m[r][col];
            for (size_t j = col; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

// --- CrossedProductElement ---------------------------------------------

CrossedProductElement CrossedProductElement::pure(const AlgebraElement& x, const CBasis& c) {
    CrossedProductElement u;
    for (const auto& [m, s] : x.terms()) u.add_term({m, c}, s);
    return u;
}

void CrossedProductElement::add_term(const Key& k, const Scalar& s) {
    if (s.is_zero()) return;
    auto [it, fresh] = terms_.emplace(k, s);
    if (!fresh) {
        it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CrossedProductElement CrossedProductElement::operator+(const CrossedProductElement& o) const {
    CrossedProductElement r = *this;
    for (const auto& [k, s] : o.terms_) r.add_term(k, s);
    return r;
}

CrossedProductElement CrossedProductElement::operator-(const CrossedProductElement& o) const {
    CrossedProductElement r = *this;
    for (const auto& [k, s] : o.terms_) r.add_term(k, -s);
    return r;
}

CrossedProductElement CrossedProductElement::scaled(const Scalar& s) const {
    CrossedProductElement r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
}

std::string render(const CrossedProductElement& u, const Presentation& mpres,
                   const CoalgebraSpec& spec) {
    if (u.is_zero()) return "0";
    std::string out;
    for (const auto& [k, s] : u.terms()) {
        std::string term = render(AlgebraElement::monomial(k.first, s), mpres) + " (x) " +
                           render(k.second, spec);
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

// --- CrossedData ---------------------------------------------------------

CrossedData::CrossedData(EntwiningData data, std::shared_ptr<const MembershipSolver> m,
                         RhoFn rho, SigmaFn sigma, std::optional<ConvolutionMap> phi,
                         std::optional<ConvolutionMap> phi_inv)
    : data_(std::move(data)),
      m_(std::move(m)),
      rho_(std::move(rho)),
      sigma_(std::move(sigma)),
      phi_(std::move(phi)),
      phi_inv_(std::move(phi_inv)),
      memo_(std::make_shared<Memo>()) {}

AlgebraElement CrossedData::rho(const CBasis& c, const AlgebraElement& u) const {
    AlgebraElement out;
    for (const auto& [m, s] : u.terms()) {
        AlgebraElement v;
        bool hit = false;
        {
            std::lock_guard<std::mutex> lk(memo_->mu);
            auto it = memo_->rho.find({c, m});
            if (it != memo_->rho.end()) {
                v = it->second;
                hit = true;
            }
        }
        if (!hit) {
            v = rho_(c, m);
            std::lock_guard<std::mutex> lk(memo_->mu);
            memo_->rho.emplace(std::make_pair(c, m), v);
        }
        out += v.scaled(s);
    }
    return out;
}

AlgebraElement CrossedData::sigma_p(const CBasis& b, const CBasis& c) const {
    {
        std::lock_guard<std::mutex> lk(memo_->mu);
        auto it = memo_->sigma.find({b, c});
        if (it != memo_->sigma.end()) return it->second;
    }
    AlgebraElement v = sigma_(b, c);
    std::lock_guard<std::mutex> lk(memo_->mu);
    return memo_->sigma.emplace(std::make_pair(b, c), v).first->second;
}

AlgebraElement CrossedData::sigma_m(const CBasis& b, const CBasis& c) const {
    return m_->express(sigma_p(b, c));
}

AlgebraElement CrossedData::rho_m(const CBasis& c, const AlgebraElement& x) const {
    return m_->express(rho(c, m_->embed(x)));
}

// --- cleft construction --------------------------------------------------

CrossedData cleft_data(const ConvolutionMap& phi, const EntwiningData& data,
                       std::shared_ptr<const MembershipSolver> m, int window, int degree_bound) {
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();

    if (phi(data.grouplike()) != AlgebraElement::one())
        throw IntertwinerFails("Phi(e) != 1");

    ConvolutionMap phi_inv = convolution_inverse(phi, spec, pres);

    // Eq. (1): psi (id (x) Phi) = (Phi (x) id) psiC on the test window.
    const int c_bound = std::min(degree_bound, 2);
    std::vector<CBasis> cbasis = spec.sweep_basis(window, c_bound);
    for (const CBasis& b : cbasis)
        for (const CBasis& c : cbasis) {
            TensorExpression lhs = extend_psi(CoalgebraElement::basis(b), phi(c), data);
            TensorExpression rhs = data.psiC(b, c).map_c_leg(
                0, Space::P, [&](const CBasis& k) { return phi(k); });
            if (!(lhs == rhs))
                throw IntertwinerFails("intertwining condition fails at " + render(b, spec) +
                                       " (x) " + render(c, spec) + ": " +
                                       render(lhs, pres, spec) + " != " +
                                       render(rhs, pres, spec));
        }

    CrossedData::RhoFn rho = [phi, phi_inv, data](const CBasis& c,
                                                  const Monomial& um) -> AlgebraElement {
        const CoalgebraSpec& sp = data.coalgebra();
        const Presentation& pr = data.presentation();
        // Phi(c_(1)) u_a Phi^-1(c_(2)^a)
        TensorExpression t = delta_with(c, sp, {{Space::P, LegKey(um)}});
        t = apply_psi(t, 1, 2, data);
        AlgebraElement out;
        for (const auto& [legs, s] : t.terms()) {
            AlgebraElement v = multiply(phi(std::get<CBasis>(legs[0])),
                                        AlgebraElement::monomial(std::get<Monomial>(legs[1])), pr);
            v = multiply(v, phi_inv(std::get<CBasis>(legs[2])), pr);
            out += v.scaled(s);
        }
        return out;
    };

    CrossedData::SigmaFn sigma = [phi, phi_inv, data](const CBasis& b,
                                                      const CBasis& c) -> AlgebraElement {
        const CoalgebraSpec& sp = data.coalgebra();
        const Presentation& pr = data.presentation();
        // Phi(b_(1)) Phi(c_A) Phi^-1(b_(2)^A)
        TensorExpression t = delta_with(b, sp, {{Space::C, LegKey(c)}});
        t = apply_psiC(t, 1, 2, data);
        AlgebraElement out;
        for (const auto& [legs, s] : t.terms()) {
            AlgebraElement v = multiply(phi(std::get<CBasis>(legs[0])),
                                        phi(std::get<CBasis>(legs[1])), pr);
            v = multiply(v, phi_inv(std::get<CBasis>(legs[2])), pr);
            out += v.scaled(s);
        }
        return out;
    };

    CrossedData cd(data, std::move(m), std::move(rho), std::move(sigma), phi, phi_inv);

    // every sigma value must land in M
    for (const CBasis& b : cbasis)
        for (const CBasis& c : cbasis) {
            AlgebraElement v = cd.sigma_p(b, c);
            if (!is_coinvariant(v, data))
                throw SigmaNotCoinvariant("sigma(" + render(b, spec) + ", " + render(c, spec) +
                                          ") = " + render(v, pres) + " is not coinvariant");
            cd.sigma_m(b, c);  // NotInM propagates
        }

    return cd;
}

CrossedData declared_data(const EntwiningData& data, std::shared_ptr<const MembershipSolver> m,
                          const std::function<AlgebraElement(const CBasis&, const Letter&)>& rho_gen,
                          const CrossedData::SigmaFn& sigma) {
    // extend rho from generator letters to monomials by the condition (ii)
    // recursion: rho(c, l w) = rho(c_(1), l_a) rho(c_(2)^a, w)
    auto memo = std::make_shared<std::map<std::pair<CBasis, Monomial>, AlgebraElement>>();
    auto mu = std::make_shared<std::mutex>();
    struct Rec {
        const EntwiningData& data;
        std::function<AlgebraElement(const CBasis&, const Letter&)> gen;
        std::shared_ptr<std::map<std::pair<CBasis, Monomial>, AlgebraElement>> memo;
        std::shared_ptr<std::mutex> mu;
        AlgebraElement operator()(const CBasis& c, const Monomial& um, int depth) const {
            if (depth > 64) throw NonTerminating("rho recursion too deep");
            const CoalgebraSpec& sp = data.coalgebra();
            const Presentation& pr = data.presentation();
            Word w = um.word();
            if (w.empty()) return AlgebraElement::scalar(counit(c, sp));
            {
                std::lock_guard<std::mutex> lk(*mu);
                auto it = memo->find({c, um});
                if (it != memo->end()) return it->second;
            }
            AlgebraElement out;
            if (w.size() == 1) {
                out = gen(c, w[0]);
            } else {
                Word rest(w.begin() + 1, w.end());
                Monomial rm = Monomial::from_sorted_word(rest);
                for (const auto& [cl, s] : coproduct(c, sp).terms()) {
                    TensorExpression pl = data.psi_letter(std::get<CBasis>(cl[1]), w[0]);
                    for (const auto& [legs, s2] : pl.terms()) {
                        AlgebraElement v =
                            multiply((*this)(std::get<CBasis>(cl[0]),
                                             std::get<Monomial>(legs[0]), depth + 1),
                                     (*this)(std::get<CBasis>(legs[1]), rm, depth + 1), pr);
                        out += v.scaled(s * s2);
                    }
                }
            }
            std::lock_guard<std::mutex> lk(*mu);
            return memo->emplace(std::make_pair(c, um), out).first->second;
        }
    };
    Rec rec{data, rho_gen, memo, mu};
    CrossedData::RhoFn rho = [rec](const CBasis& c, const Monomial& um) { return rec(c, um, 0); };
    return CrossedData(data, std::move(m), std::move(rho), sigma, std::nullopt, std::nullopt);
}

// --- conditions (i)-(v) ---------------------------------------------------

AxiomReport verify_conditions(const CrossedData& cd, int window, int degree_bound) {
    AxiomReport rep;
    rep.window = window;
    rep.degree_bound = degree_bound;
    const EntwiningData& data = cd.entwining();
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();
    const MembershipSolver& solver = cd.solver();
    const CBasis e = data.grouplike();

    const int c_bound = 1;  // matrix coalgebras sweep generator-level basis
    std::vector<CBasis> cbasis = spec.sweep_basis(window, c_bound);
    std::vector<Monomial> mmonos = monomials_up_to(cd.mpres(), degree_bound);

    auto rho_pm = [&](const CBasis& c, const Monomial& m) {
        return cd.rho(c, AlgebraElement::monomial(m));
    };
    auto sigma_pc = [&](const CBasis& b, const CBasis& c) { return cd.sigma_p(b, c); };

    auto cmp = [&](const TensorExpression& lhs, const TensorExpression& rhs,
                   const std::string& input) -> std::optional<Counterexample> {
        try {
            if (to_mc(lhs, solver) == to_mc(rhs, solver)) return std::nullopt;
        } catch (const NotInM& ex) {
            return Counterexample{input + " [" + ex.what() + "]", render(lhs, pres, spec),
                                  render(rhs, pres, spec)};
        }
        return Counterexample{input, render(lhs, pres, spec), render(rhs, pres, spec)};
    };

    // (i) rho(e, x) = x and rho(c, 1) = eps(c) 1
    {
        size_t nx = mmonos.size(), nc = cbasis.size();
        rep.clauses.push_back(run_clause(
            "(i)", nx + nc, [&](size_t i) -> std::optional<Counterexample> {
                if (i < nx) {
                    AlgebraElement x = solver.embed(AlgebraElement::monomial(mmonos[i]));
                    AlgebraElement lhs = cd.rho(e, x);
                    if (lhs == x) return std::nullopt;
                    return Counterexample{"rho(e, " + render(x, pres) + ")", render(lhs, pres),
                                          render(x, pres)};
                }
                const CBasis& c = cbasis[i - nx];
                AlgebraElement lhs = cd.rho(c, AlgebraElement::one());
                AlgebraElement rhs = AlgebraElement::scalar(counit(c, spec));
                if (lhs == rhs) return std::nullopt;
                return Counterexample{"rho(" + render(c, spec) + ", 1)", render(lhs, pres),
                                      render(rhs, pres)};
            }));
    }

    // (ii) rho(c1, (xy)_a) (x) c2^a = rho(c1, x_a) rho(c2^a_1, y_b) (x) c2^a_2^b
    {
        struct Task {
            CBasis c;
            Monomial x, y;
        };
        std::vector<Task> tasks;
        for (const auto& c : cbasis)
            for (const auto& x : mmonos)
                for (const auto& y : mmonos) {
                    if (x.degree() + y.degree() > degree_bound) continue;
                    tasks.push_back({c, x, y});
                }
        rep.clauses.push_back(run_clause(
            "(ii)", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                AlgebraElement xe = solver.embed(AlgebraElement::monomial(t.x));
                AlgebraElement ye = solver.embed(AlgebraElement::monomial(t.y));
                AlgebraElement xy = multiply(xe, ye, pres);
                TensorExpression lhs({Space::C, Space::C, Space::P});
                for (const auto& [cl, s] : coproduct(t.c, spec).terms())
                    for (const auto& [m, sm] : xy.terms())
                        lhs.add_term({cl[0], cl[1], LegKey(m)}, s * sm);
                lhs = contract_cp(apply_psi(lhs, 1, 2, data), 0, rho_pm);

                TensorExpression rhs({Space::C, Space::C, Space::P, Space::P});
                for (const auto& [cl, s] : coproduct(t.c, spec).terms())
                    for (const auto& [mx, sx] : xe.terms())
                        for (const auto& [my, sy] : ye.terms())
                            rhs.add_term({cl[0], cl[1], LegKey(mx), LegKey(my)}, s * sx * sy);
                rhs = apply_psi(rhs, 1, 2, data);
                rhs = rhs.apply_delta(2, spec);
                rhs = apply_psi(rhs, 3, 4, data);
                rhs = contract_cp(rhs, 0, rho_pm);
                rhs = contract_cp(rhs, 1, rho_pm);
                rhs = rhs.multiply_adjacent(0, pres);
                return cmp(lhs, rhs,
                           render(t.c, spec) + ", x=" +
                               render(AlgebraElement::monomial(t.x), cd.mpres()) + ", y=" +
                               render(AlgebraElement::monomial(t.y), cd.mpres()));
            }));
    }

    // (iii) sigma(e, c) = eps(c) 1 and sigma(c1, e_A) (x) c2^A = 1 (x) c
    {
        size_t nc = cbasis.size();
        rep.clauses.push_back(run_clause(
            "(iii)", 2 * nc, [&](size_t i) -> std::optional<Counterexample> {
                const CBasis& c = cbasis[i % nc];
                if (i < nc) {
                    AlgebraElement lhs = cd.sigma_p(e, c);
                    AlgebraElement rhs = AlgebraElement::scalar(counit(c, spec));
                    if (lhs == rhs) return std::nullopt;
                    return Counterexample{"sigma(e, " + render(c, spec) + ")", render(lhs, pres),
                                          render(rhs, pres)};
                }
                TensorExpression lhs = delta_with(c, spec, {{Space::C, LegKey(e)}});
                lhs = apply_psiC(lhs, 1, 2, data);
                lhs = contract_cc(lhs, 0, sigma_pc);
                TensorExpression rhs({Space::P, Space::C});
                rhs.add_term({LegKey(Monomial{}), LegKey(c)}, Scalar::one());
                return cmp(lhs, rhs, "sigma(" + render(c, spec) + "_(1), e_A) (x) ...");
            }));
    }

    // (iv) the sigma cocycle condition
    {
        struct Task {
            CBasis a, b, c;
        };
        std::vector<Task> tasks;
        for (const auto& a : cbasis)
            for (const auto& b : cbasis)
                for (const auto& c : cbasis) tasks.push_back({a, b, c});
        rep.clauses.push_back(run_clause(
            "(iv)", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                TensorExpression lhs =
                    delta_delta_with(t.a, t.b, spec, {{Space::C, LegKey(t.c)}});
                lhs = apply_psiC(lhs, 3, 4, data);          // (a1,a2,b1,c_A,b2^A)
                lhs = contract_cc(lhs, 2, sigma_pc);        // (a1,a2,s,b2^A)
                lhs = apply_psi(lhs, 1, 2, data);           // (a1,s_a,a2^a,b2^A)
                lhs = lhs.apply_delta(2, spec);             // (a1,s_a,a2^a1,a2^a2,b2^A)
                lhs = apply_psiC(lhs, 3, 4, data);          // (a1,s_a,a2^a1,b2^A_B,a2^a2^B)
                lhs = contract_cp(lhs, 0, rho_pm);          // (r,a2^a1,b2^A_B,last)
                lhs = contract_cc(lhs, 1, sigma_pc);        // (r,s2,last)
                lhs = lhs.multiply_adjacent(0, pres);

                TensorExpression rhs = delta_with(
                    t.a, spec, {{Space::C, LegKey(t.b)}, {Space::C, LegKey(t.c)}});
                rhs = apply_psiC(rhs, 1, 2, data);          // (a1,b_A,a2^A,c)
                rhs = contract_cc(rhs, 0, sigma_pc);        // (s1,a2^A,c)
                rhs = rhs.apply_delta(1, spec);             // (s1,a2^A1,a2^A2,c)
                rhs = apply_psiC(rhs, 2, 3, data);          // (s1,a2^A1,c_B,a2^A2^B)
                rhs = contract_cc(rhs, 1, sigma_pc);        // (s1,s2,last)
                rhs = rhs.multiply_adjacent(0, pres);
                return cmp(lhs, rhs,
                           "a=" + render(t.a, spec) + ", b=" + render(t.b, spec) +
                               ", c=" + render(t.c, spec));
            }));
    }

    // (v) the mixed rho/sigma condition
    {
        struct Task {
            CBasis a, b;
            Monomial x;
        };
        std::vector<Task> tasks;
        for (const auto& a : cbasis)
            for (const auto& b : cbasis)
                for (const auto& x : mmonos) tasks.push_back({a, b, x});
        rep.clauses.push_back(run_clause(
            "(v)", tasks.size(), [&](size_t i) -> std::optional<Counterexample> {
                const Task& t = tasks[i];
                AlgebraElement xe = solver.embed(AlgebraElement::monomial(t.x));
                TensorExpression lhs(std::vector<Space>{});
                {
                    TensorExpression start({Space::C, Space::C, Space::C, Space::C, Space::P});
                    for (const auto& [al, sa] : coproduct(t.a, spec).terms())
                        for (const auto& [bl, sb] : coproduct(t.b, spec).terms())
                            for (const auto& [mx, sx] : xe.terms())
                                start.add_term({al[0], al[1], bl[0], bl[1], LegKey(mx)},
                                               sa * sb * sx);
                    lhs = apply_psi(start, 3, 4, data);     // (a1,a2,b1,x_a,b2^a)
                    lhs = contract_cp(lhs, 2, rho_pm);      // (a1,a2,r,b2^a)
                    lhs = apply_psi(lhs, 1, 2, data);       // (a1,r_b,a2^b,b2^a)
                    lhs = lhs.apply_delta(2, spec);         // (a1,r_b,a2^b1,a2^b2,b2^a)
                    lhs = apply_psiC(lhs, 3, 4, data);      // (a1,r_b,a2^b1,b2^a_A,a2^b2^A)
                    lhs = contract_cp(lhs, 0, rho_pm);      // (r2,a2^b1,b2^a_A,last)
                    lhs = contract_cc(lhs, 1, sigma_pc);    // (r2,s,last)
                    lhs = lhs.multiply_adjacent(0, pres);
                }
                TensorExpression rhs(std::vector<Space>{});
                {
                    TensorExpression start({Space::C, Space::C, Space::C, Space::P});
                    for (const auto& [al, sa] : coproduct(t.a, spec).terms())
                        for (const auto& [mx, sx] : xe.terms())
                            start.add_term({al[0], al[1], LegKey(t.b), LegKey(mx)}, sa * sx);
                    rhs = apply_psiC(start, 1, 2, data);    // (a1,b_A,a2^A,x)
                    rhs = contract_cc(rhs, 0, sigma_pc);    // (s,a2^A,x)
                    rhs = rhs.apply_delta(1, spec);         // (s,a2^A1,a2^A2,x)
                    rhs = apply_psi(rhs, 2, 3, data);       // (s,a2^A1,x_a,a2^A2^a)
                    rhs = contract_cp(rhs, 1, rho_pm);      // (s,r,last)
                    rhs = rhs.multiply_adjacent(0, pres);
                }
                return cmp(lhs, rhs,
                           "a=" + render(t.a, spec) + ", b=" + render(t.b, spec) +
                               ", x=" + render(AlgebraElement::monomial(t.x), cd.mpres()));
            }));
    }

    return rep;
}

// --- product, theta, gauge -------------------------------------------------

CrossedProductElement crossed_multiply(const CrossedProductElement& u,
                                       const CrossedProductElement& w, const CrossedData& cd) {
    const EntwiningData& data = cd.entwining();
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();
    const MembershipSolver& solver = cd.solver();

    CrossedProductElement out;
    for (const auto& [ku, su] : u.terms())
        for (const auto& [kw, sw] : w.terms()) {
            const auto& [xm, b] = ku;
            const auto& [ym, c] = kw;
            AlgebraElement xe = solver.embed(AlgebraElement::monomial(xm));
            AlgebraElement ye = solver.embed(AlgebraElement::monomial(ym));
            // (b1, b2, y, c)
            TensorExpression t = delta_with(
                b, spec, {{Space::P, LegKey(Monomial{})}, {Space::C, LegKey(c)}});
            {
                TensorExpression t2(t.signature());
                for (const auto& [legs, s] : t.terms())
                    for (const auto& [my, sy] : ye.terms()) {
                        std::vector<LegKey> nl = legs;
                        nl[2] = LegKey(my);
                        t2.add_term(std::move(nl), s * sy);
                    }
                t = std::move(t2);
            }
            t = apply_psi(t, 1, 2, data);    // (b1, y_a, b2^a, c)
            t = t.apply_delta(2, spec);      // (b1, y_a, b2^a1, b2^a2, c)
            t = apply_psiC(t, 3, 4, data);   // (b1, y_a, b2^a1, c_A, b2^a2^A)
            for (const auto& [legs, s] : t.terms()) {
                AlgebraElement v = multiply(
                    xe,
                    cd.rho(std::get<CBasis>(legs[0]),
                           AlgebraElement::monomial(std::get<Monomial>(legs[1]))),
                    pres);
                v = multiply(v, cd.sigma_p(std::get<CBasis>(legs[2]), std::get<CBasis>(legs[3])),
                             pres);
                AlgebraElement vm = solver.express(v);
                for (const auto& [m, sm] : vm.terms())
                    out.add_term({m, std::get<CBasis>(legs[4])}, su * sw * s * sm);
            }
        }
    return out;
}

CrossedProductElement crossed_unit(const CrossedData& cd) {
    CrossedProductElement u;
    u.add_term({Monomial{}, cd.entwining().grouplike()}, Scalar::one());
    return u;
}

AlgebraElement theta(const CrossedProductElement& u, const CrossedData& cd) {
    if (!cd.cleft()) throw EngineError("theta requires cleft data");
    const Presentation& pres = cd.entwining().presentation();
    AlgebraElement out;
    for (const auto& [k, s] : u.terms()) {
        AlgebraElement x = cd.solver().embed(AlgebraElement::monomial(k.first));
        out += multiply(x, cd.phi()(k.second), pres).scaled(s);
    }
    return out;
}

namespace {

CrossedProductElement random_cpe(std::mt19937_64& rng, const std::vector<Monomial>& mmonos,
                                 const std::vector<CBasis>& cbasis) {
    CrossedProductElement u;
    std::uniform_int_distribution<size_t> dm(0, mmonos.size() - 1);
    std::uniform_int_distribution<size_t> dc(0, cbasis.size() - 1);
    std::uniform_int_distribution<int> dcoef(1, 3);
    std::uniform_int_distribution<int> dterms(1, 2);
    int nt = dterms(rng);
    for (int t = 0; t < nt; ++t)
        u.add_term({mmonos[dm(rng)], cbasis[dc(rng)]}, Scalar(dcoef(rng)));
    return u;
}

}  // namespace

AxiomReport verify_theta(const CrossedData& cd, int window, int degree_bound,
                         std::uint64_t seed) {
    AxiomReport rep;
    rep.window = window;
    rep.degree_bound = degree_bound;
    const EntwiningData& data = cd.entwining();
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();

    const int c_bound = 1;
    const int m_bound =
        spec.kind() == CoalgebraSpec::MatrixFunction ? std::min(degree_bound, 2) : degree_bound;
    std::vector<CBasis> cbasis = spec.sweep_basis(window, c_bound);
    std::vector<Monomial> mmonos = monomials_up_to(cd.mpres(), m_bound);

    // multiplicativity on seeded random pairs
    {
        std::mt19937_64 rng(seed);
        const size_t samples = 200;
        std::vector<std::pair<CrossedProductElement, CrossedProductElement>> pairs;
        pairs.reserve(samples);
        for (size_t i = 0; i < samples; ++i)
            pairs.emplace_back(random_cpe(rng, mmonos, cbasis), random_cpe(rng, mmonos, cbasis));
        rep.clauses.push_back(run_clause(
            "multiplicative", samples, [&](size_t i) -> std::optional<Counterexample> {
                const auto& [u, w] = pairs[i];
                AlgebraElement lhs = theta(crossed_multiply(u, w, cd), cd);
                AlgebraElement rhs = multiply(theta(u, cd), theta(w, cd), pres);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{render(u, cd.mpres(), spec) + " * " +
                                          render(w, cd.mpres(), spec),
                                      render(lhs, pres), render(rhs, pres)};
            }));
    }

    // transfer matrix at the numeric point q=2, mu+=3, mu-=5, kappa=7
    std::vector<AlgebraElement> images;
    for (const auto& m : mmonos)
        for (const auto& c : cbasis)
            images.push_back(theta(CrossedProductElement::pure(AlgebraElement::monomial(m), c), cd));
    std::map<Monomial, size_t> row_of;
    for (const auto& img : images)
        for (const auto& [m, s] : img.terms()) row_of.emplace(m, 0);
    {
        size_t r = 0;
        for (auto& [m, idx] : row_of) idx = r++;
    }
    std::vector<std::vector<GaussianRational>> a(row_of.size(),
                                                 std::vector<GaussianRational>(images.size()));
    for (size_t j = 0; j < images.size(); ++j)
        for (const auto& [m, s] : images[j].terms()) a[row_of.at(m)][j] = num_eval(s);
    const size_t base_rank = matrix_rank(a);

    {
        ClauseResult cr;
        cr.name = "injective";
        if (base_rank != images.size()) {
            cr.pass = false;
            cr.counterexamples.push_back({"transfer matrix rank " + std::to_string(base_rank) +
                                              " of " + std::to_string(images.size()),
                                          "", ""});
        }
        rep.clauses.push_back(std::move(cr));
    }

    // surjectivity onto the inner truncation: degree <= 1 monomials of P
    {
        std::vector<Monomial> targets = monomials_up_to(pres, 1);
        rep.clauses.push_back(run_clause(
            "surjective", targets.size(), [&](size_t i) -> std::optional<Counterexample> {
                auto it = row_of.find(targets[i]);
                std::string name = render(AlgebraElement::monomial(targets[i]), pres);
                if (it == row_of.end())
                    return Counterexample{name, "monomial absent from the image span", ""};
                auto aug = a;
                for (size_t r = 0; r < aug.size(); ++r)
                    aug[r].push_back(r == it->second ? GaussianRational(1) : GaussianRational(0));
                if (matrix_rank(aug) == base_rank) return std::nullopt;
                return Counterexample{name, "not in the image span", ""};
            }));
    }

    return rep;
}

CrossedData gauge_transform(const CrossedData& cd, const ConvolutionMap& gamma, int window) {
    const EntwiningData& data = cd.entwining();
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();

    if (gamma(data.grouplike()) != AlgebraElement::one())
        throw GaugeConditionFails("gamma(e) != 1");

    ConvolutionMap gamma_inv = convolution_inverse(gamma, spec, pres);

    std::vector<CBasis> cbasis = spec.sweep_basis(window, 1);
    for (const CBasis& c : cbasis) {
        cd.solver().express(gamma(c));  // gamma must land in M (NotInM propagates)
        if (!is_coinvariant(gamma(c), data))
            throw GaugeConditionFails("gamma(" + render(c, spec) + ") is not coinvariant");
    }

    // admissibility: psiC_23 psi_12 (id (x) gamma (x) id)(id (x) Delta)
    //              = (gamma (x) id (x) id)(Delta (x) id) psiC
    for (const CBasis& b : cbasis)
        for (const CBasis& c : cbasis) {
            TensorExpression lhs({Space::C, Space::P, Space::C});
            for (const auto& [cl, s] : coproduct(c, spec).terms())
                for (const auto& [m, sm] : gamma(std::get<CBasis>(cl[0])).terms())
                    lhs.add_term({LegKey(b), LegKey(m), cl[1]}, s * sm);
            lhs = apply_psi(lhs, 0, 1, data);   // (g_a, b^a, c2)
            lhs = apply_psiC(lhs, 1, 2, data);  // (g_a, c2_A, b^a^A)

            TensorExpression rhs = data.psiC(b, c);     // (c_A, b^A)
            rhs = rhs.apply_delta(0, spec);             // (c_A1, c_A2, b^A)
            rhs = rhs.map_c_leg(0, Space::P, [&](const CBasis& k) { return gamma(k); });
            if (!(lhs == rhs))
                throw GaugeConditionFails("admissibility fails at " + render(b, spec) + " (x) " +
                                          render(c, spec) + ": " + render(lhs, pres, spec) +
                                          " != " + render(rhs, pres, spec));
        }

    CrossedData base = cd;
    CrossedData::RhoFn rho2 = [base, gamma, gamma_inv, data](const CBasis& c,
                                                             const Monomial& um) {
        const CoalgebraSpec& sp = data.coalgebra();
        const Presentation& pr = data.presentation();
        // gamma(c1) rho(c2, u_a) gamma^-1(c3^a)
        TensorExpression t({Space::C, Space::C, Space::C, Space::P});
        for (const auto& [cl, s] : coproduct(c, sp).terms()) {
            TensorExpression d2 = coproduct(std::get<CBasis>(cl[1]), sp);
            for (const auto& [cl2, s2] : d2.terms())
                t.add_term({cl[0], cl2[0], cl2[1], LegKey(um)}, s * s2);
        }
        t = apply_psi(t, 2, 3, data);  // (c1, c2, u_a, c3^a)
        AlgebraElement out;
        for (const auto& [legs, s] : t.terms()) {
            AlgebraElement v = multiply(
                gamma(std::get<CBasis>(legs[0])),
                base.rho(std::get<CBasis>(legs[1]),
                         AlgebraElement::monomial(std::get<Monomial>(legs[2]))),
                pr);
            v = multiply(v, gamma_inv(std::get<CBasis>(legs[3])), pr);
            out += v.scaled(s);
        }
        return out;
    };

    CrossedData::SigmaFn sigma2 = [base, gamma, gamma_inv, data](const CBasis& b,
                                                                 const CBasis& c) {
        const CoalgebraSpec& sp = data.coalgebra();
        const Presentation& pr = data.presentation();
        // gamma(b1) rho(b2, gamma(c_A1)_a) sigma(b3^a, c_A2) gamma^-1(b4^A)
        // legs: (b1, b2, b3, b4, c)
        TensorExpression t({Space::C, Space::C, Space::C, Space::C, Space::C});
        for (const auto& [bl, s] : coproduct(b, sp).terms()) {
            TensorExpression l2 = coproduct(std::get<CBasis>(bl[0]), sp);
            TensorExpression r2 = coproduct(std::get<CBasis>(bl[1]), sp);
            for (const auto& [ll, sl] : l2.terms())
                for (const auto& [rl, sr] : r2.terms())
                    t.add_term({ll[0], ll[1], rl[0], rl[1], LegKey(c)}, s * sl * sr);
        }
        t = apply_psiC(t, 3, 4, data);  // (b1, b2, b3, c_A, b4^A)
        t = t.apply_delta(3, sp);       // (b1, b2, b3, c_A1, c_A2, b4^A)
        t = t.map_c_leg(3, Space::P, [&](const CBasis& k) { return gamma(k); });
        t = apply_psi(t, 2, 3, data);   // (b1, b2, g_a, b3^a, c_A2, b4^A)
        AlgebraElement out;
        for (const auto& [legs, s] : t.terms()) {
            AlgebraElement v = multiply(
                gamma(std::get<CBasis>(legs[0])),
                base.rho(std::get<CBasis>(legs[1]),
                         AlgebraElement::monomial(std::get<Monomial>(legs[2]))),
                pr);
            v = multiply(v, base.sigma_p(std::get<CBasis>(legs[3]), std::get<CBasis>(legs[4])),
                         pr);
            v = multiply(v, gamma_inv(std::get<CBasis>(legs[5])), pr);
            out += v.scaled(s);
        }
        return out;
    };

    return CrossedData(data, cd.solver_ptr(), std::move(rho2), std::move(sigma2), std::nullopt,
                       std::nullopt);
}

bool gauge_iso_multiplicative(const CrossedData& primed, const CrossedData& base,
                              const ConvolutionMap& gamma, int window, int degree_bound,
                              std::uint64_t seed, int samples) {
    const EntwiningData& data = base.entwining();
    const Presentation& pres = data.presentation();
    const CoalgebraSpec& spec = data.coalgebra();
    const MembershipSolver& solver = base.solver();

    std::vector<CBasis> cbasis = spec.sweep_basis(window, 1);
    std::vector<Monomial> mmonos = monomials_up_to(base.mpres(), degree_bound);

    // Theta_gamma(x (x) c) = x gamma(c_(1)) (x) c_(2), primed -> base
    auto g = [&](const CrossedProductElement& u) {
        CrossedProductElement out;
        for (const auto& [k, s] : u.terms()) {
            AlgebraElement xe = solver.embed(AlgebraElement::monomial(k.first));
            for (const auto& [cl, sc] : coproduct(k.second, spec).terms()) {
                AlgebraElement v =
                    multiply(xe, gamma(std::get<CBasis>(cl[0])), pres);
                AlgebraElement vm = solver.express(v);
                for (const auto& [m, sm] : vm.terms())
                    out.add_term({m, std::get<CBasis>(cl[1])}, s * sc * sm);
            }
        }
        return out;
    };

    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        CrossedProductElement u = random_cpe(rng, mmonos, cbasis);
        CrossedProductElement w = random_cpe(rng, mmonos, cbasis);
        CrossedProductElement lhs = g(crossed_multiply(u, w, primed));
        CrossedProductElement rhs = crossed_multiply(g(u), g(w), base);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace entwine
