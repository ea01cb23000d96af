#include "entwine/dsl.hpp"

#include "entwine/rewrite.hpp"

namespace entwine {

namespace {

std::vector<Token> take_rhs(Lexer& lex) {
    std::vector<Token> out;
    while (lex.peek().kind != Tok::Semi && lex.peek().kind != Tok::End) out.push_back(lex.next());
    expect(lex, Tok::Semi, "';'");
    return out;
}

Token expect_keyword(Lexer& lex, const std::string& word) {
    Token t = lex.next();
    if (t.kind != Tok::Name || t.text != word)
        throw SyntaxError(t.pos, "'" + word + "'", "'" + t.text + "'");
    return t;
}

/// Generator occurrence: name with optional bracket indices and ^-1.
Letter parse_letter(Lexer& lex, const Presentation& pres, const ParseEnv& env) {
    Token t = expect(lex, Tok::Name, "a generator name");
    std::string name = t.text;
    if (lex.peek().kind == Tok::LBracket) {
        lex.next();
        name += "[" + std::to_string(parse_int_expr(lex, env));
        while (lex.peek().kind == Tok::Comma) {
            lex.next();
            name += "," + std::to_string(parse_int_expr(lex, env));
        }
        expect(lex, Tok::RBracket, "']'");
        name += "]";
    }
    auto g = pres.find_generator(name);
    if (!g) throw ResolutionError(t.pos, name);
    int sign = 1;
    if (lex.peek().kind == Tok::Caret) {
        lex.next();
        Token e = lex.next();
        long v = 0;
        if (e.kind == Tok::Int) v = e.value;
        else if (e.kind == Tok::Minus) v = -expect(lex, Tok::Int, "an integer").value;
        else throw SyntaxError(e.pos, "an exponent", "'" + e.text + "'");
        if (v != 1 && v != -1) throw SyntaxError(e.pos, "exponent 1 or -1", std::to_string(v));
        sign = (int)v;
    }
    return {*g, sign};
}

/// "c[var]" pattern in a declaration head; returns the variable name.
std::string parse_index_pattern(Lexer& lex, const std::string& basis) {
    expect_keyword(lex, basis);
    expect(lex, Tok::LBracket, "'['");
    Token v = expect(lex, Tok::Name, "an index variable");
    expect(lex, Tok::RBracket, "']'");
    return v.text;
}

struct IndexedName {
    std::string base;
    std::vector<int> idx;
};

IndexedName parse_indexed(Lexer& lex, const ParseEnv& env) {
    IndexedName out;
    out.base = expect(lex, Tok::Name, "a name").text;
    if (lex.peek().kind == Tok::LBracket) {
        lex.next();
        out.idx.push_back((int)parse_int_expr(lex, env));
        while (lex.peek().kind == Tok::Comma) {
            lex.next();
            out.idx.push_back((int)parse_int_expr(lex, env));
        }
        expect(lex, Tok::RBracket, "']'");
    }
    return out;
}

}  // namespace

void add_relation(Presentation& pres, const RawElement& lhs, const RawElement& rhs,
                  const SourcePos& pos) {
    std::map<Word, Scalar> terms;
    for (const auto& [s, w] : lhs.terms) terms[w] += s;
    for (const auto& [s, w] : rhs.terms) terms[w] -= s;
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);

    auto descending = [&pres](const Word& w) {
        if (w.size() != 2) return false;
        const Letter &a = w[0], &b = w[1];
        if (a.gen <= b.gen) return false;
        const auto &ga = pres.generator(a.gen), &gb = pres.generator(b.gen);
        return !(ga.block >= 0 && ga.block == gb.block);
    };
    std::vector<Word> candidates;
    for (const auto& [w, s] : terms)
        if (descending(w)) candidates.push_back(w);
    if (candidates.size() != 1)
        throw SyntaxError(pos, "a relation with exactly one descending two-letter word",
                          std::to_string(candidates.size()) + " candidates");
    const Word key = candidates[0];
    const Scalar coeff = terms[key];
    if (!coeff.is_unit())
        throw SyntaxError(pos, "a unit coefficient on the descending word", coeff.str());
    const Scalar neg_inv = -coeff.inverse();
    RawElement rest;
    for (const auto& [w, s] : terms)
        if (!(w == key)) rest.terms.push_back({s * neg_inv, w});
    pres.add_rule(key[0], key[1], rest);
}

DslDocument parse_document(const std::string& source) {
    DslDocument doc;
    Lexer lex(source);
    ParseEnv env;  // document parameters, grown as declarations appear

    auto need_algebra = [&doc](const SourcePos& pos) -> Presentation& {
        if (!doc.algebra) throw SyntaxError(pos, "an algebra block before this declaration", "");
        return *doc.algebra;
    };

    while (!lex.at_end()) {
        Token head = expect(lex, Tok::Name, "a declaration keyword");
        const std::string& kw = head.text;
        if (kw == "bundle") {
            doc.bundle_name = expect(lex, Tok::Name, "a bundle name").text;
            expect(lex, Tok::Semi, "';'");
        } else if (kw == "param") {
            std::string name = expect(lex, Tok::Name, "a parameter name").text;
            expect(lex, Tok::Equals, "'='");
            long v = parse_int_expr(lex, env);
            expect(lex, Tok::Semi, "';'");
            doc.params[name] = (int)v;
            env.vars[name] = (int)v;
        } else if (kw == "window") {
            doc.window = (int)parse_int_expr(lex, env);
            expect(lex, Tok::Semi, "';'");
        } else if (kw == "algebra") {
            expect(lex, Tok::LBrace, "'{'");
            doc.algebra = std::make_shared<Presentation>();
            while (lex.peek().kind != Tok::RBrace) {
                Token d = expect(lex, Tok::Name, "'gen' or 'rel'");
                if (d.text == "gen") {
                    std::string name = expect(lex, Tok::Name, "a generator name").text;
                    bool inv = false;
                    if (lex.peek().kind == Tok::Name && lex.peek().text == "inv") {
                        lex.next();
                        inv = true;
                    }
                    expect(lex, Tok::Semi, "';'");
                    doc.algebra->add_generator(name, inv);
                } else if (d.text == "rel") {
                    RawElement l = parse_raw_element(lex, *doc.algebra, env);
                    expect(lex, Tok::Equals, "'='");
                    RawElement r = parse_raw_element(lex, *doc.algebra, env);
                    expect(lex, Tok::Semi, "';'");
                    add_relation(*doc.algebra, l, r, d.pos);
                } else {
                    throw SyntaxError(d.pos, "'gen' or 'rel'", "'" + d.text + "'");
                }
            }
            lex.next();
            doc.algebra->finalize();
        } else if (kw == "coalgebra") {
            Token kind = expect(lex, Tok::Name, "'grouplike' or 'matrix'");
            if (kind.text == "grouplike") {
                doc.basis_name = expect(lex, Tok::Name, "a basis name").text;
            } else if (kind.text == "matrix") {
                std::string name = expect(lex, Tok::Name, "a generator prefix").text;
                if (name != "a")
                    throw SyntaxError(kind.pos, "matrix prefix 'a'", "'" + name + "'");
                expect_keyword(lex, "dim");
                doc.matrix_dim = (int)parse_int_expr(lex, env);
            } else {
                throw SyntaxError(kind.pos, "'grouplike' or 'matrix'", "'" + kind.text + "'");
            }
            expect(lex, Tok::Semi, "';'");
        } else if (kw == "coords") {
            doc.coords = (int)parse_int_expr(lex, env);
            expect(lex, Tok::Semi, "';'");
        } else if (kw == "commutator") {
            IndexedName a = parse_indexed(lex, env);
            IndexedName b = parse_indexed(lex, env);
            expect(lex, Tok::Equals, "'='");
            std::vector<Token> rhs = take_rhs(lex);
            if (a.base == "a" && a.idx.size() == 2 && b.base == "x" && b.idx.size() == 1) {
                doc.gamma_decls.push_back({a.idx[0], a.idx[1], b.idx[0], std::move(rhs)});
            } else if (a.base == "x" && a.idx.size() == 1 && b.base == "x" &&
                       b.idx.size() == 1) {
                doc.lambda_decls.push_back({a.idx[0], b.idx[0], std::move(rhs)});
            } else {
                throw SyntaxError(head.pos, "commutator [a[i,j], x[k]] or [x[m], x[n]]", "");
            }
        } else if (kw == "entwine") {
            Presentation& pres = need_algebra(head.pos);
            expect(lex, Tok::LBrace, "'{'");
            const std::string basis = doc.basis_name.empty() ? "c" : doc.basis_name;
            while (lex.peek().kind != Tok::RBrace) {
                Token d = expect(lex, Tok::Name, "'e', 'psi' or 'psiC'");
                if (d.text == "e") {
                    expect(lex, Tok::Equals, "'='");
                    doc.e_index = take_rhs(lex);
                } else if (d.text == "psi") {
                    expect(lex, Tok::LParen, "'('");
                    DslDocument::PsiDecl pd;
                    pd.var = parse_index_pattern(lex, basis);
                    expect(lex, Tok::Comma, "','");
                    pd.letter = parse_letter(lex, pres, env);
                    expect(lex, Tok::RParen, "')'");
                    expect(lex, Tok::Equals, "'='");
                    pd.rhs = take_rhs(lex);
                    doc.psi_decls.push_back(std::move(pd));
                } else if (d.text == "psiC") {
                    expect(lex, Tok::LParen, "'('");
                    DslDocument::PsiCDecl pd;
                    pd.var1 = parse_index_pattern(lex, basis);
                    expect(lex, Tok::Comma, "','");
                    pd.var2 = parse_index_pattern(lex, basis);
                    expect(lex, Tok::RParen, "')'");
                    expect(lex, Tok::Equals, "'='");
                    pd.rhs = take_rhs(lex);
                    doc.psiC_decl = std::move(pd);
                } else {
                    throw SyntaxError(d.pos, "'e', 'psi' or 'psiC'", "'" + d.text + "'");
                }
            }
            lex.next();
        } else if (kw == "hopf") {
            Presentation& pres = need_algebra(head.pos);
            expect(lex, Tok::LBrace, "'{'");
            while (lex.peek().kind != Tok::RBrace) {
                Token d = expect_keyword(lex, "coact");
                expect(lex, Tok::LParen, "'('");
                DslDocument::CoactDecl cd;
                cd.letter = parse_letter(lex, pres, env);
                expect(lex, Tok::RParen, "')'");
                expect(lex, Tok::Equals, "'='");
                cd.rhs = take_rhs(lex);
                doc.coact_decls.push_back(std::move(cd));
                (void)d;
            }
            lex.next();
        } else if (kw == "coinv") {
            expect(lex, Tok::LBrace, "'{'");
            doc.coinv = std::make_shared<Presentation>();
            while (lex.peek().kind != Tok::RBrace) {
                Token d = expect(lex, Tok::Name, "'gen' or 'rel'");
                if (d.text == "gen") {
                    std::string name = expect(lex, Tok::Name, "a generator name").text;
                    int g = doc.coinv->add_generator(name);
                    expect(lex, Tok::Equals, "'='");
                    doc.coinv_images[g] = take_rhs(lex);
                } else if (d.text == "rel") {
                    RawElement l = parse_raw_element(lex, *doc.coinv, env);
                    expect(lex, Tok::Equals, "'='");
                    RawElement r = parse_raw_element(lex, *doc.coinv, env);
                    expect(lex, Tok::Semi, "';'");
                    add_relation(*doc.coinv, l, r, d.pos);
                } else {
                    throw SyntaxError(d.pos, "'gen' or 'rel'", "'" + d.text + "'");
                }
            }
            lex.next();
            doc.coinv->finalize();
        } else if (kw == "map") {
            std::string name = expect(lex, Tok::Name, "a map name").text;
            expect(lex, Tok::LParen, "'('");
            DslDocument::MapDecl md;
            md.var = parse_index_pattern(lex, doc.basis_name.empty() ? "c" : doc.basis_name);
            expect(lex, Tok::RParen, "')'");
            expect(lex, Tok::Equals, "'='");
            md.rhs = take_rhs(lex);
            doc.maps[name] = std::move(md);
        } else if (kw == "expect") {
            Presentation& pres = need_algebra(head.pos);
            Token which = expect(lex, Tok::Name, "'rho' or 'sigma'");
            const std::string basis = doc.basis_name.empty() ? "c" : doc.basis_name;
            expect(lex, Tok::LParen, "'('");
            if (which.text == "rho") {
                DslDocument::ExpectRho er;
                er.var = parse_index_pattern(lex, basis);
                expect(lex, Tok::Comma, "','");
                er.letter = parse_letter(lex, pres, env);
                expect(lex, Tok::RParen, "')'");
                expect(lex, Tok::Equals, "'='");
                er.rhs = take_rhs(lex);
                doc.expect_rho.push_back(std::move(er));
            } else if (which.text == "sigma") {
                DslDocument::ExpectSigma es;
                es.var1 = parse_index_pattern(lex, basis);
                expect(lex, Tok::Comma, "','");
                es.var2 = parse_index_pattern(lex, basis);
                expect(lex, Tok::RParen, "')'");
                expect(lex, Tok::Equals, "'='");
                es.rhs = take_rhs(lex);
                doc.expect_sigma = std::move(es);
            } else {
                throw SyntaxError(which.pos, "'rho' or 'sigma'", "'" + which.text + "'");
            }
        } else {
            throw SyntaxError(head.pos, "a declaration keyword", "'" + kw + "'");
        }
    }
    return doc;
}

namespace {

AlgebraElement eval_element(const std::vector<Token>& toks, const Presentation& pres,
                            const ParseEnv& env) {
    Lexer lex(toks);
    RawElement r = parse_raw_element(lex, pres, env);
    expect(lex, Tok::End, "end of declaration");
    return normal_form(r, pres);
}

}  // namespace

Bundle assemble(const DslDocument& doc) {
    ParseEnv base;
    base.vars = doc.params;

    if (doc.matrix_dim > 0) {
        const int n = doc.matrix_dim;
        const int m = doc.coords > 0 ? doc.coords : n;
        CoalgebraSpec spec0 = CoalgebraSpec::matrix_function(n);
        CommutatorTable t = CommutatorTable::classical(n, m);
        for (const auto& gd : doc.gamma_decls)
            t.gamma[(gd.i - 1) * n + gd.j - 1][gd.k - 1] =
                eval_element(gd.rhs, spec0.matrix_presentation(), base);
        if (!doc.lambda_decls.empty()) {
            Presentation xp;
            for (int k = 1; k <= m; ++k) xp.add_generator("x[" + std::to_string(k) + "]");
            xp.finalize();
            for (const auto& ld : doc.lambda_decls) {
                AlgebraElement e = eval_element(ld.rhs, xp, base);
                for (const auto& [mono, s] : e.terms()) {
                    if (mono.factors.size() != 1 || mono.factors[0].second != 1)
                        throw EngineError("commutator [x,x] must be linear in x");
                    t.lambda[ld.m - 1][ld.n - 1][mono.factors[0].first] = s;
                }
            }
        }
        Bundle b = build_ekappa3(t);
        if (!doc.bundle_name.empty()) b.name = doc.bundle_name;
        b.window = doc.window;
        return b;
    }

    if (!doc.algebra) throw EngineError("document declares no algebra");
    auto pres = doc.algebra;
    const std::string basis = doc.basis_name.empty() ? "c" : doc.basis_name;
    CoalgebraSpec spec = CoalgebraSpec::group_like(basis, doc.window);

    EntwiningData data;
    if (!doc.coact_decls.empty()) {
        CoactionTable tab;
        for (const auto& cd : doc.coact_decls) {
            Lexer lx(cd.rhs);
            TensorExpression t = parse_tensor_pc(lx, *pres, spec, base);
            expect(lx, Tok::End, "end of declaration");
            for (const auto& [legs, s] : t.terms())
                tab.entries[cd.letter].push_back(
                    {AlgebraElement::monomial(std::get<Monomial>(legs[0]), s),
                     std::get<CBasis>(legs[1]).p});
        }
        data = hopf_entwining(pres, tab);
    } else {
        if (doc.e_index.empty() || !doc.psiC_decl || doc.psi_decls.empty())
            throw EngineError("document declares no complete entwine block");
        Lexer el(doc.e_index);
        CBasis e = parse_cbasis(el, spec, base);
        expect(el, Tok::End, "end of declaration");

        auto decls = doc.psi_decls;
        auto psi = [decls, pres, spec, base](const CBasis& b, const Letter& l) {
            for (const auto& d : decls)
                if (d.letter == l) {
                    ParseEnv env = base;
                    env.vars[d.var] = b.p;
                    Lexer lx(d.rhs);
                    TensorExpression t = parse_tensor_pc(lx, *pres, spec, env);
                    expect(lx, Tok::End, "end of declaration");
                    return t;
                }
            throw MissingImage("no psi table entry for generator " +
                               pres->generator(l.gen).name);
        };
        auto pcd = *doc.psiC_decl;
        auto psiC = [pcd, spec, base](const CBasis& b, const CBasis& c) {
            ParseEnv env = base;
            env.vars[pcd.var1] = b.p;
            env.vars[pcd.var2] = c.p;
            Lexer lx(pcd.rhs);
            TensorExpression t = parse_tensor_cc(lx, spec, env);
            expect(lx, Tok::End, "end of declaration");
            return t;
        };
        data = EntwiningData(pres, spec, psi, e, psiC);
    }

    std::shared_ptr<Presentation> mpres = doc.coinv;
    std::map<int, AlgebraElement> images;
    if (!mpres) {
        auto empty = std::make_shared<Presentation>();
        empty->finalize();
        mpres = empty;
    }
    for (const auto& [g, toks] : doc.coinv_images) images[g] = eval_element(toks, *pres, base);

    Bundle b;
    b.name = doc.bundle_name;
    b.window = doc.window;
    if (auto it = doc.params.find("s"); it != doc.params.end()) b.s = it->second;
    b.data = data;
    b.mpres = mpres;
    CoinvariantAlgebra m = make_coinvariant_algebra(mpres, images, data);
    b.solver = std::make_shared<MembershipSolver>(m, 8);

    auto phi_it = doc.maps.find("phi");
    if (phi_it == doc.maps.end()) throw EngineError("document declares no phi map");
    const auto md = phi_it->second;
    b.phi = ConvolutionMap::from_function([md, pres, base](const CBasis& c) {
        ParseEnv env = base;
        env.vars[md.var] = c.p;
        return eval_element(md.rhs, *pres, env);
    });

    if (!doc.expect_rho.empty()) {
        auto ers = doc.expect_rho;
        b.expected_rho = [ers, pres, base](const CBasis& c, const Letter& l) {
            for (const auto& er : ers)
                if (er.letter == l) {
                    ParseEnv env = base;
                    env.vars[er.var] = c.p;
                    return eval_element(er.rhs, *pres, env);
                }
            throw MissingImage("no expected rho entry for generator " +
                               pres->generator(l.gen).name);
        };
    }
    if (doc.expect_sigma) {
        auto es = *doc.expect_sigma;
        b.expected_sigma = [es, pres, base](const CBasis& x, const CBasis& y) {
            ParseEnv env = base;
            env.vars[es.var1] = x.p;
            env.vars[es.var2] = y.p;
            AlgebraElement e = eval_element(es.rhs, *pres, env);
            if (e.is_zero()) return Scalar::zero();
            if (!e.is_scalar()) throw EngineError("expected sigma entry is not a scalar");
            return e.terms().begin()->second;
        };
    }
    return b;
}

ConvolutionMap make_map(const DslDocument& doc, const Bundle& b, const std::string& name) {
    auto it = doc.maps.find(name);
    if (it == doc.maps.end()) throw MissingImage("no map declaration named '" + name + "'");
    ParseEnv base;
    base.vars = doc.params;
    const auto md = it->second;
    auto pres = b.data.presentation_ptr();
    return ConvolutionMap::from_function([md, pres, base](const CBasis& c) {
        ParseEnv env = base;
        env.vars[md.var] = c.p;
        return eval_element(md.rhs, *pres, env);
    });
}

bool bundles_equal(const Bundle& a, const Bundle& b, int window, int degree_bound) {
    if (!(*a.data.presentation_ptr() == *b.data.presentation_ptr())) return false;
    if (!(a.data.coalgebra() == b.data.coalgebra())) return false;
    if (!(a.data.grouplike() == b.data.grouplike())) return false;
    if (!(*a.mpres == *b.mpres)) return false;

    const Presentation& pres = a.data.presentation();
    std::vector<Letter> letters;
    for (size_t g = 0; g < pres.generators().size(); ++g) {
        letters.push_back({(int)g, 1});
        if (pres.generator((int)g).invertible) letters.push_back({(int)g, -1});
    }
    const auto sweep = a.data.coalgebra().sweep_basis(window, std::min(degree_bound, 2));
    for (const CBasis& c : sweep) {
        for (const Letter& l : letters)
            if (!(a.data.psi_letter(c, l) == b.data.psi_letter(c, l))) return false;
        for (const CBasis& d : sweep)
            if (!(a.data.psiC(c, d) == b.data.psiC(c, d))) return false;
    }
    for (size_t g = 0; g < a.mpres->generators().size(); ++g)
        if (!(a.solver->algebra().embed.image((int)g) == b.solver->algebra().embed.image((int)g)))
            return false;
    return maps_equal(a.phi, b.phi, sweep);
}

}  // namespace entwine
