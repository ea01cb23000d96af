#include "entwine/bundles.hpp"

#include "entwine/errors.hpp"
#include "entwine/render.hpp"
#include "entwine/rewrite.hpp"

namespace entwine {

namespace {

AlgebraElement gen_pow(int g, int e, Scalar s = Scalar::one()) {
    if (e == 0) return AlgebraElement::scalar(std::move(s));
    return AlgebraElement::monomial(Monomial{{{g, e}}}, std::move(s));
}

std::shared_ptr<const MembershipSolver> make_solver(std::shared_ptr<const Presentation> mpres,
                                                    const std::map<int, AlgebraElement>& images,
                                                    const EntwiningData& data, int bound) {
    CoinvariantAlgebra m = make_coinvariant_algebra(std::move(mpres), images, data);
    return std::make_shared<MembershipSolver>(m, bound);
}

}  // namespace

Bundle build_eq2(int s, int W) {
    auto pres = std::make_shared<Presentation>();
    const int v = pres->add_generator("v", true);
    const int np = pres->add_generator("n+");
    const int nm = pres->add_generator("n-");

    const Scalar q2 = Scalar::param(PQ, 2);
    const Scalar qi2 = Scalar::param(PQ, -2);
    // v n± = q^2 n± v, n+ n- = q^2 n- n+
    for (int ng : {np, nm}) {
        pres->add_rule({ng, 1}, {v, 1},
                       (RawElement::letter(v) * RawElement::letter(ng)).scaled(qi2));
        pres->add_rule({ng, 1}, {v, -1},
                       (RawElement::letter(v, -1) * RawElement::letter(ng)).scaled(q2));
    }
    pres->add_rule({nm, 1}, {np, 1},
                   (RawElement::letter(np) * RawElement::letter(nm)).scaled(qi2));
    pres->finalize();

    CoalgebraSpec spec = CoalgebraSpec::group_like("c", W);

    auto psi = [v, np, nm](const CBasis& b, const Letter& l) -> TensorExpression {
        const int p = b.p;
        TensorExpression out({Space::P, Space::C});
        if (l.gen == v) {
            out.add_term({LegKey(Monomial{{{v, l.sign}}}), LegKey(CBasis{p + l.sign, {}})},
                         Scalar::one());
            return out;
        }
        const bool plus = (l.gen == np);
        const int d = plus ? 1 : -1;
        const Scalar c = Scalar::param(plus ? PMUP : PMUM) * Scalar::param(PQ, 2 * p);
        out.add_term({LegKey(Monomial{{{l.gen, 1}}}), LegKey(CBasis{p, {}})}, Scalar::one());
        out.add_term({LegKey(Monomial{{{v, d}}}), LegKey(CBasis{p, {}})}, c);
        out.add_term({LegKey(Monomial{{{v, d}}}), LegKey(CBasis{p + d, {}})}, -c);
        return out;
    };
    auto psiC = [s](const CBasis& b, const CBasis& c) -> TensorExpression {
        TensorExpression out({Space::C, Space::C});
        out.add_term({LegKey(c), LegKey(CBasis{b.p + c.p - s, {}})}, Scalar::one());
        return out;
    };

    EntwiningData data(pres, spec, psi, CBasis{s, {}}, psiC);

    auto mpres = std::make_shared<Presentation>();
    const int zp = mpres->add_generator("z+");
    const int zm = mpres->add_generator("z-");
    // z+ z- = q^2 z- z+ + (1 - q^2)
    mpres->add_rule({zm, 1}, {zp, 1},
                    (RawElement::letter(zp) * RawElement::letter(zm)).scaled(qi2) +
                        RawElement::scalar(Scalar::one() - qi2));
    mpres->finalize();

    const Scalar cp = Scalar::param(PMUP, -1) * Scalar::param(PQ, -2 * s);
    const Scalar cm = Scalar::param(PMUM, -1) * Scalar::param(PQ, -2 * s);
    std::map<int, AlgebraElement> images;
    images[zp] = gen_pow(v, 1) + gen_pow(np, 1, cp);
    images[zm] = gen_pow(v, -1) + gen_pow(nm, 1, cm);

    Bundle b;
    b.name = "eq2";
    b.s = s;
    b.window = W;
    b.data = data;
    b.mpres = mpres;
    b.solver = make_solver(mpres, images, data, 8);
    b.phi = ConvolutionMap::from_function(
        [v, s](const CBasis& c) { return gen_pow(v, c.p - s); });
    b.expected_rho = [v, np, s](const CBasis& c, const Letter& l) -> AlgebraElement {
        if (l.gen == v) return AlgebraElement::one();
        const bool plus = (l.gen == np);
        const Scalar q2p = Scalar::param(PQ, 2 * c.p);
        const Scalar mu = Scalar::param(plus ? PMUP : PMUM);
        AlgebraElement r = gen_pow(l.gen, 1, q2p * Scalar::param(PQ, -2 * s));
        r += gen_pow(v, plus ? 1 : -1, q2p * mu);
        r += AlgebraElement::scalar(-(q2p * mu));
        return r;
    };
    b.expected_sigma = [](const CBasis&, const CBasis&) { return Scalar::one(); };
    return b;
}

Bundle build_ekappa2(int W, bool kappa_zero) {
    auto pres = std::make_shared<Presentation>();
    const int w = pres->add_generator("w", true);
    const int ap = pres->add_generator("a+");
    const int am = pres->add_generator("a-");

    const Scalar k = kappa_zero ? Scalar::zero() : Scalar::param(PKAPPA);
    // [w, a+] = kappa (1 - w), [w, a-] = kappa (w^2 - w), [a+, a-] = kappa (a+ + a-)
    pres->add_rule({ap, 1}, {w, 1},
                   RawElement::letter(w) * RawElement::letter(ap) +
                       RawElement::letter(w).scaled(k) - RawElement::scalar(k));
    pres->add_rule({ap, 1}, {w, -1},
                   RawElement::letter(w, -1) * RawElement::letter(ap) -
                       RawElement::letter(w, -1).scaled(k) +
                       (RawElement::letter(w, -1) * RawElement::letter(w, -1)).scaled(k));
    pres->add_rule({am, 1}, {w, 1},
                   RawElement::letter(w) * RawElement::letter(am) -
                       (RawElement::letter(w) * RawElement::letter(w)).scaled(k) +
                       RawElement::letter(w).scaled(k));
    pres->add_rule({am, 1}, {w, -1},
                   RawElement::letter(w, -1) * RawElement::letter(am) + RawElement::scalar(k) -
                       RawElement::letter(w, -1).scaled(k));
    pres->add_rule({am, 1}, {ap, 1},
                   RawElement::letter(ap) * RawElement::letter(am) -
                       RawElement::letter(ap).scaled(k) - RawElement::letter(am).scaled(k));
    pres->finalize();

    CoalgebraSpec spec = CoalgebraSpec::group_like("c", W);

    auto psi = [w, ap, k](const CBasis& b, const Letter& l) -> TensorExpression {
        const int p = b.p;
        TensorExpression out({Space::P, Space::C});
        if (l.gen == w) {
            out.add_term({LegKey(Monomial{{{w, l.sign}}}), LegKey(CBasis{p + l.sign, {}})},
                         Scalar::one());
            return out;
        }
        const int d = (l.gen == ap) ? 1 : -1;
        out.add_term({LegKey(Monomial{{{l.gen, 1}}}), LegKey(CBasis{p, {}})}, Scalar::one());
        if (p != 0 && !k.is_zero()) {
            const Scalar kp = Scalar(p) * k;
            out.add_term({LegKey(Monomial{{{w, -d}}}), LegKey(CBasis{p - d, {}})}, kp);
            out.add_term({LegKey(Monomial{{{w, -d}}}), LegKey(CBasis{p, {}})}, -kp);
        }
        return out;
    };
    auto psiC = [](const CBasis& b, const CBasis& c) -> TensorExpression {
        TensorExpression out({Space::C, Space::C});
        out.add_term({LegKey(c), LegKey(CBasis{b.p + c.p, {}})}, Scalar::one());
        return out;
    };

    EntwiningData data(pres, spec, psi, CBasis{0, {}}, psiC);

    auto mpres = std::make_shared<Presentation>();
    const int mp = mpres->add_generator("a+");
    const int mm = mpres->add_generator("a-");
    mpres->add_rule({mm, 1}, {mp, 1},
                    RawElement::letter(mp) * RawElement::letter(mm) -
                        RawElement::letter(mp).scaled(k) - RawElement::letter(mm).scaled(k));
    mpres->finalize();

    std::map<int, AlgebraElement> images;
    images[mp] = gen_pow(ap, 1);
    images[mm] = gen_pow(am, 1);

    Bundle b;
    b.name = kappa_zero ? "ekappa2-classical" : "ekappa2";
    b.window = W;
    b.data = data;
    b.mpres = mpres;
    b.solver = make_solver(mpres, images, data, 8);
    b.phi = ConvolutionMap::from_function([w](const CBasis& c) { return gen_pow(w, c.p); });
    b.expected_rho = [w](const CBasis&, const Letter& l) -> AlgebraElement {
        if (l.gen == w) return AlgebraElement::one();
        return gen_pow(l.gen, 1);
    };
    b.expected_sigma = [](const CBasis&, const CBasis&) { return Scalar::one(); };
    return b;
}

CommutatorTable ekappa3_deformed_x_table() {
    CommutatorTable t = CommutatorTable::classical(3, 3);
    // [x_1, x_3] = kappa x_1, [x_2, x_3] = kappa x_2
    t.lambda[0][2][0] = Scalar::one();
    t.lambda[1][2][1] = Scalar::one();
    return t;
}

Bundle build_ekappa3(const CommutatorTable& table) {
    EntwiningData data = build_matrix_entwining(table);
    auto pres = data.presentation_ptr();
    const CoalgebraSpec spec = data.coalgebra();
    const int n = table.n;
    const int m = table.num_x;
    const Scalar k = Scalar::param(PKAPPA);

    auto mpres = std::make_shared<Presentation>();
    std::map<int, AlgebraElement> images;
    for (int i = 1; i <= m; ++i) {
        int g = mpres->add_generator("x[" + std::to_string(i) + "]");
        images[g] = gen_pow(n * n + i - 1, 1);
    }
    for (int p = 0; p < m; ++p)
        for (int r = p + 1; r < m; ++r) {
            RawElement rhs = RawElement::letter(p) * RawElement::letter(r);
            for (int t = 0; t < m; ++t)
                rhs = rhs - RawElement::letter(t).scaled(k * table.lambda[p][r][t]);
            mpres->add_rule({r, 1}, {p, 1}, rhs);
        }
    mpres->finalize();

    std::map<int, AlgebraElement> phi_images;
    for (int g = 0; g < n * n; ++g) phi_images[g] = gen_pow(g, 1);

    bool classical_gamma = true;
    for (const auto& row : table.gamma)
        for (const auto& e : row)
            if (!e.is_zero()) classical_gamma = false;

    Bundle b;
    b.name = "ekappa3";
    b.data = data;
    b.mpres = mpres;
    b.solver = make_solver(mpres, images, data, 6);
    b.phi = ConvolutionMap::multiplicative(spec, *pres, phi_images);
    b.deformed_slot_user_supplied = classical_gamma;
    b.expected_rho = [spec, n](const CBasis& c, const Letter& l) -> AlgebraElement {
        const Scalar eps = counit(c, spec);
        if (l.gen < n * n) {
            const int i = l.gen / n, j = l.gen % n;
            return i == j ? AlgebraElement::scalar(eps) : AlgebraElement();
        }
        return gen_pow(l.gen, 1, eps);
    };
    b.expected_sigma = [spec](const CBasis& x, const CBasis& y) {
        return counit(x, spec) * counit(y, spec);
    };
    return b;
}

Bundle build_hopf_sanity() {
    auto pres = std::make_shared<Presentation>();
    const int z = pres->add_generator("Z", true);
    pres->finalize();

    CoactionTable table;
    table.entries[{z, 1}] = {{gen_pow(z, 1), 1}};
    table.entries[{z, -1}] = {{gen_pow(z, -1), -1}};
    EntwiningData data = hopf_entwining(pres, table);

    auto mpres = std::make_shared<Presentation>();
    mpres->finalize();

    Bundle b;
    b.name = "hopf";
    b.data = data;
    b.mpres = mpres;
    b.solver = make_solver(mpres, {}, data, 2);
    b.phi = ConvolutionMap::from_function([z](const CBasis& c) { return gen_pow(z, c.p); });
    b.expected_rho = [](const CBasis&, const Letter&) { return AlgebraElement::one(); };
    b.expected_sigma = [](const CBasis&, const CBasis&) { return Scalar::one(); };
    return b;
}

bool non_comodule_witness(const Bundle& eq2) {
    const EntwiningData& data = eq2.data;
    const Presentation& pres = data.presentation();
    const int v = *pres.find_generator("v");
    const int np = *pres.find_generator("n+");
    const int s = eq2.s;

    AlgebraElement u = multiply(gen_pow(v, 1), gen_pow(np, 1), pres);
    TensorExpression lhs = coaction(u, data);

    // leg-wise product of the factor coactions under c_p * c_r -> c_{p+r-s}
    TensorExpression f1 = coaction(gen_pow(v, 1), data);
    TensorExpression f2 = coaction(gen_pow(np, 1), data);
    TensorExpression rhs({Space::P, Space::C});
    for (const auto& [l1, s1] : f1.terms())
        for (const auto& [l2, s2] : f2.terms()) {
            AlgebraElement prod =
                multiply(AlgebraElement::monomial(std::get<Monomial>(l1[0])),
                         AlgebraElement::monomial(std::get<Monomial>(l2[0])), pres);
            const int p = std::get<CBasis>(l1[1]).p + std::get<CBasis>(l2[1]).p - s;
            for (const auto& [mono, c] : prod.terms())
                rhs.add_term({LegKey(mono), LegKey(CBasis{p, {}})}, s1 * s2 * c);
        }
    return !(lhs == rhs);
}

BundleReport verify_bundle(const Bundle& b, int window, int degree_bound, std::uint64_t seed) {
    BundleReport rep;
    rep.bundle = b.name;
    rep.window = window;
    rep.degree_bound = degree_bound;
    rep.seed = seed;
    if (b.deformed_slot_user_supplied)
        rep.notes.push_back(
            "deformed a-x commutator slot is user-supplied; shipped default is the classical "
            "table");

    auto run = [&rep](const std::string& name, const std::function<AxiomReport()>& f) {
        StageResult st;
        st.name = name;
        try {
            AxiomReport r = f();
            st.clauses = r.clauses;
            st.pass = r.pass();
        } catch (const EngineError& e) {
            st.pass = false;
            st.error = e.what();
        }
        rep.stages.push_back(std::move(st));
        return rep.stages.back().pass;
    };

    {
        StageResult st;
        st.name = "confluence";
        try {
            AmbiguityReport pa = check_confluence(b.data.presentation(), 4);
            AmbiguityReport ma = check_confluence(*b.mpres, 4);
            st.pass = pa.confluent() && ma.confluent();
            if (!st.pass)
                st.error = std::to_string(pa.unresolved.size() + ma.unresolved.size()) +
                           " unresolved overlap(s)";
        } catch (const EngineError& e) {
            st.pass = false;
            st.error = e.what();
        }
        rep.stages.push_back(std::move(st));
    }

    run("entwining", [&] { return verify_entwining(b.data, window, degree_bound); });
    run("psiC", [&] { return verify_psiC(b.data, window); });

    std::optional<CrossedData> cd;
    {
        StageResult st;
        st.name = "cleft";
        try {
            cd = cleft_data(b.phi, b.data, b.solver, window, degree_bound);
        } catch (const EngineError& e) {
            st.pass = false;
            st.error = e.what();
        }
        rep.stages.push_back(std::move(st));
    }
    if (!cd) return rep;

    run("conditions", [&] { return verify_conditions(*cd, window, degree_bound); });
    run("theta", [&] { return verify_theta(*cd, window, degree_bound, seed); });

    if (b.expected_rho && b.expected_sigma) rep.stages.push_back(compare_tables(b, *cd, window));
    return rep;
}

// declared-table comparison: rho on generator letters, sigma on pairs
StageResult compare_tables(const Bundle& b, const CrossedData& cd, int window) {
    StageResult st;
    st.name = "tables";
    if (b.expected_rho && b.expected_sigma) {
        const Presentation& pres = b.data.presentation();
        const CoalgebraSpec& spec = b.data.coalgebra();
        std::vector<Letter> letters;
        for (size_t g = 0; g < pres.generators().size(); ++g) {
            letters.push_back({(int)g, 1});
            if (pres.generator((int)g).invertible) letters.push_back({(int)g, -1});
        }
        const std::vector<CBasis> sweep = spec.sweep_basis(window, 1);
        ClauseResult rho_clause{"rho", true, {}};
        ClauseResult sigma_clause{"sigma", true, {}};
        try {
            for (const CBasis& c : sweep)
                for (const Letter& l : letters) {
                    AlgebraElement got =
                        cd.rho(c, AlgebraElement::monomial(Monomial{{{l.gen, l.sign}}}));
                    AlgebraElement want = normal_form(b.expected_rho(c, l), pres);
                    if (got != want && rho_clause.counterexamples.size() < 5) {
                        rho_clause.pass = false;
                        rho_clause.counterexamples.push_back(
                            {render(c, spec) + " , " + pres.generator(l.gen).name +
                                 (l.sign < 0 ? "^-1" : ""),
                             render(got, pres), render(want, pres)});
                    }
                }
            for (const CBasis& x : sweep)
                for (const CBasis& y : sweep) {
                    AlgebraElement got = cd.sigma_p(x, y);
                    AlgebraElement want = AlgebraElement::scalar(b.expected_sigma(x, y));
                    if (got != want && sigma_clause.counterexamples.size() < 5) {
                        sigma_clause.pass = false;
                        sigma_clause.counterexamples.push_back(
                            {render(x, spec) + " , " + render(y, spec), render(got, pres),
                             render(want, pres)});
                    }
                }
        } catch (const EngineError& e) {
            st.error = e.what();
            st.pass = false;
        }
        st.clauses = {rho_clause, sigma_clause};
        if (!rho_clause.pass || !sigma_clause.pass) st.pass = false;
    }
    return st;
}

}  // namespace entwine
