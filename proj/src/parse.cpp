#include "entwine/parse.hpp"

#include <cctype>
#include <optional>

#include "entwine/rewrite.hpp"

namespace entwine {

Lexer::Lexer(const std::string& src) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string t, long v, SourcePos p) {
        toks_.push_back({k, std::move(t), v, p});
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace((unsigned char)c)) {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        SourcePos pos{line, col};
        if (c == '(' && i + 2 < src.size() && src[i + 1] == 'x' && src[i + 2] == ')') {
            push(Tok::Tensor, "(x)", 0, pos);
            i += 3;
            col += 3;
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
            push(Tok::Int, src.substr(i, j - i), std::stol(src.substr(i, j - i)), pos);
            col += (int)(j - i);
            i = j;
            continue;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum((unsigned char)src[j]) || src[j] == '_')) ++j;
            if (j < src.size() && (src[j] == '+' || src[j] == '-')) {
                // signed-name adjacency: the sign is part of the name unless
                // it is followed by the start of a new operand
                char after = j + 1 < src.size() ? src[j + 1] : '\0';
                if (!(std::isalnum((unsigned char)after) || after == '_' || after == '('))
                    ++j;
            }
            push(Tok::Name, src.substr(i, j - i), 0, pos);
            col += (int)(j - i);
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            case ';': k = Tok::Semi; break;
            default:
                throw SyntaxError(pos, "a token", "'" + std::string(1, c) + "'");
        }
        push(k, std::string(1, c), 0, pos);
        ++i;
        ++col;
    }
    toks_.push_back({Tok::End, "<end>", 0, {line, col}});
}

Lexer::Lexer(std::vector<Token> toks) : toks_(std::move(toks)) {
    if (toks_.empty() || toks_.back().kind != Tok::End) {
        SourcePos pos = toks_.empty() ? SourcePos{} : toks_.back().pos;
        toks_.push_back({Tok::End, "<end>", 0, pos});
    }
}

namespace {

std::string tok_desc(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
}

std::optional<Param> param_of(const std::string& name) {
    if (name == "q") return PQ;
    if (name == "mu+") return PMUP;
    if (name == "mu-") return PMUM;
    if (name == "kappa") return PKAPPA;
    return std::nullopt;
}

int env_var(const ParseEnv& env, const Token& t) {
    auto it = env.vars.find(t.text);
    if (it == env.vars.end()) throw ResolutionError(t.pos, t.text);
    return it->second;
}

long int_atom(Lexer& lex, const ParseEnv& env) {
    Token t = lex.next();
    switch (t.kind) {
        case Tok::Int: return t.value;
        case Tok::Minus: return -int_atom(lex, env);
        case Tok::Name: return env_var(env, t);
        case Tok::LParen: {
            long v = parse_int_expr(lex, env);
            expect(lex, Tok::RParen, "')'");
            return v;
        }
        default:
            throw SyntaxError(t.pos, "an integer expression", tok_desc(t));
    }
}

long int_term(Lexer& lex, const ParseEnv& env) {
    long v = int_atom(lex, env);
    while (lex.peek().kind == Tok::Star) {
        lex.next();
        v *= int_atom(lex, env);
    }
    return v;
}

Scalar i_power(long e) {
    static const GaussianRational cyc[4] = {GaussianRational(1), GaussianRational::i(),
                                            GaussianRational(-1),
                                            GaussianRational(mpq_class(0), mpq_class(-1))};
    return Scalar(cyc[((e % 4) + 4) % 4]);
}

/// Generator name with an optional bracket index suffix, reconstructed to the
/// presentation's naming convention ("a[1,2]", "x[1]").
std::string full_name(Lexer& lex, const ParseEnv& env, Token head) {
    std::string name = head.text;
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
    return name;
}

long parse_exponent(Lexer& lex, const ParseEnv& env) {
    expect(lex, Tok::Caret, "'^'");
    return int_atom(lex, env);
}

struct Atom {
    RawElement val;
    std::optional<Letter> letter;  // set when the atom is one bare letter
    std::optional<Scalar> scal;    // set when the atom is one bare scalar
    SourcePos pos;
};

RawElement parse_expr(Lexer& lex, const Presentation& pres, const ParseEnv& env);

Atom parse_atom(Lexer& lex, const Presentation& pres, const ParseEnv& env) {
    Token t = lex.next();
    Atom a;
    a.pos = t.pos;
    switch (t.kind) {
        case Tok::Int:
            a.scal = Scalar(t.value);
            a.val = RawElement::scalar(*a.scal);
            return a;
        case Tok::LParen: {
            a.val = parse_expr(lex, pres, env);
            expect(lex, Tok::RParen, "')'");
            if (a.val.terms.size() == 1 && a.val.terms[0].second.empty())
                a.scal = a.val.terms[0].first;
            return a;
        }
        case Tok::Name: {
            if (t.text == "i") {
                a.scal = Scalar::i();
                a.val = RawElement::scalar(*a.scal);
                return a;
            }
            if (auto p = param_of(t.text)) {
                a.scal = Scalar::param(*p);
                a.val = RawElement::scalar(*a.scal);
                return a;
            }
            std::string name = full_name(lex, env, t);
            auto g = pres.find_generator(name);
            if (!g) {
                // index variables from the environment act as integer scalars
                auto it = env.vars.find(name);
                if (it == env.vars.end()) throw ResolutionError(t.pos, name);
                a.scal = Scalar(it->second);
                a.val = RawElement::scalar(*a.scal);
                return a;
            }
            a.letter = Letter{*g, 1};
            a.val = RawElement::letter(*g);
            return a;
        }
        default:
            throw SyntaxError(t.pos, "an operand", tok_desc(t));
    }
}

RawElement parse_factor(Lexer& lex, const Presentation& pres, const ParseEnv& env) {
    Atom a = parse_atom(lex, pres, env);
    if (lex.peek().kind != Tok::Caret) return a.val;
    long e = parse_exponent(lex, env);
    if (a.letter) {
        if (e == 0) return RawElement::scalar(Scalar::one());
        Word w((size_t)std::abs(e), Letter{a.letter->gen, e > 0 ? a.letter->sign : -a.letter->sign});
        return RawElement{{{Scalar::one(), w}}};
    }
    if (a.scal) {
        const Scalar& s = *a.scal;
        if (s.terms().size() == 1 && s.terms().begin()->first == ExpVec{0, 0, 0, 0} &&
            s.terms().begin()->second == GaussianRational::i())
            return RawElement::scalar(i_power(e));
        if (s.terms().size() == 1) {
            // single-parameter or rational power
            const auto& [ev, c] = *s.terms().begin();
            ExpVec ne = ev;
            for (auto& x : ne) x = (int)(x * e);
            if (ne[PKAPPA] < 0)
                throw SyntaxError(a.pos, "a nonnegative kappa power", "a negative one");
            return RawElement::scalar(Scalar(gr_pow(c, e), ne));
        }
    }
    if (e < 0) throw SyntaxError(a.pos, "a nonnegative exponent on a composite operand",
                                 std::to_string(e));
    RawElement r = RawElement::scalar(Scalar::one());
    for (long k = 0; k < e; ++k) r = r * a.val;
    return r;
}

RawElement parse_term(Lexer& lex, const Presentation& pres, const ParseEnv& env) {
    bool neg = false;
    while (lex.peek().kind == Tok::Minus) {
        lex.next();
        neg = !neg;
    }
    RawElement r = parse_factor(lex, pres, env);
    while (lex.peek().kind == Tok::Star) {
        lex.next();
        r = r * parse_factor(lex, pres, env);
    }
    return neg ? r.scaled(-Scalar::one()) : r;
}

RawElement parse_expr(Lexer& lex, const Presentation& pres, const ParseEnv& env) {
    RawElement r = parse_term(lex, pres, env);
    while (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
        bool minus = lex.next().kind == Tok::Minus;
        RawElement t = parse_term(lex, pres, env);
        r = minus ? r - t : r + t;
    }
    return r;
}

/// A C leg: product of scalar factors and one coalgebra basis symbol
/// (group-like index or a matrix monomial; a bare "1" or scalar product is
/// the counit-normalized basis monomial 1).
CoalgebraElement parse_c_leg(Lexer& lex, const CoalgebraSpec& spec, const ParseEnv& env) {
    Scalar coeff = Scalar::one();
    std::optional<int> p;
    Word mword;
    bool any_basis = false;
    const Presentation* mp =
        spec.kind() == CoalgebraSpec::MatrixFunction ? &spec.matrix_presentation() : nullptr;
    while (true) {
        Token t = lex.peek();
        if (t.kind == Tok::Int) {
            lex.next();
            Scalar s(t.value);
            if (lex.peek().kind == Tok::Caret) s = Scalar(gr_pow(GaussianRational(t.value),
                                                                 parse_exponent(lex, env)));
            coeff *= s;
        } else if (t.kind == Tok::LParen) {
            // a parenthesized scalar coefficient
            lex.next();
            Presentation dummy;
            RawElement e = parse_expr(lex, dummy, env);
            expect(lex, Tok::RParen, "')'");
            Scalar s;
            for (const auto& [sc, w] : e.terms) {
                if (!w.empty()) throw SyntaxError(t.pos, "a scalar coefficient", "a word");
                s += sc;
            }
            coeff *= s;
        } else if (t.kind == Tok::Name) {
            if (t.text == "i") {
                lex.next();
                coeff *= lex.peek().kind == Tok::Caret ? i_power(parse_exponent(lex, env))
                                                       : Scalar::i();
            } else if (auto pr = param_of(t.text)) {
                lex.next();
                coeff *= lex.peek().kind == Tok::Caret
                             ? Scalar::param(*pr, (int)parse_exponent(lex, env))
                             : Scalar::param(*pr);
            } else if (spec.kind() == CoalgebraSpec::GroupLike && t.text == spec.basis_name()) {
                lex.next();
                expect(lex, Tok::LBracket, "'['");
                p = (int)parse_int_expr(lex, env);
                expect(lex, Tok::RBracket, "']'");
                any_basis = true;
            } else if (auto vit = env.vars.find(t.text);
                       vit != env.vars.end() && (!mp || !mp->find_generator(t.text))) {
                lex.next();
                coeff *= Scalar(vit->second);
            } else if (mp) {
                lex.next();
                std::string name = full_name(lex, env, t);
                auto g = mp->find_generator(name);
                if (!g) throw ResolutionError(t.pos, name);
                long e = lex.peek().kind == Tok::Caret ? parse_exponent(lex, env) : 1;
                if (e < 0) throw SyntaxError(t.pos, "a nonnegative exponent", std::to_string(e));
                for (long k = 0; k < e; ++k) mword.push_back({*g, 1});
                any_basis = true;
            } else {
                throw ResolutionError(t.pos, t.text);
            }
        } else {
            throw SyntaxError(t.pos, "a coalgebra leg", tok_desc(t));
        }
        if (lex.peek().kind != Tok::Star) break;
        lex.next();
    }
    if (spec.kind() == CoalgebraSpec::GroupLike) {
        if (!any_basis)
            throw SyntaxError(lex.peek().pos, "a basis symbol " + spec.basis_name() + "[..]",
                              tok_desc(lex.peek()));
        return CoalgebraElement::basis(CBasis{*p, {}}, coeff);
    }
    AlgebraElement nf = normal_form(RawElement{{{coeff, mword}}}, *mp);
    CoalgebraElement out;
    for (const auto& [m, s] : nf.terms()) out.add_term(CBasis{0, m}, s);
    return out;
}

}  // namespace

Token expect(Lexer& lex, Tok kind, const std::string& what) {
    Token t = lex.next();
    if (t.kind != kind) throw SyntaxError(t.pos, what, tok_desc(t));
    return t;
}

long parse_int_expr(Lexer& lex, const ParseEnv& env) {
    long v = int_term(lex, env);
    while (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
        bool minus = lex.next().kind == Tok::Minus;
        long t = int_term(lex, env);
        v = minus ? v - t : v + t;
    }
    return v;
}

CBasis parse_cbasis(Lexer& lex, const CoalgebraSpec& spec, const ParseEnv& env) {
    CoalgebraElement c = parse_c_leg(lex, spec, env);
    if (c.terms().size() != 1 || !c.terms().begin()->second.is_one())
        throw SyntaxError(lex.peek().pos, "a single basis symbol", "a combination");
    return c.terms().begin()->first;
}

RawElement parse_raw_element(Lexer& lex, const Presentation& pres, const ParseEnv& env) {
    return parse_expr(lex, pres, env);
}

RawElement parse_raw_element(const std::string& text, const Presentation& pres,
                             const ParseEnv& env) {
    Lexer lex(text);
    RawElement r = parse_expr(lex, pres, env);
    expect(lex, Tok::End, "end of input");
    return r;
}

AlgebraElement parse_element(const std::string& text, const Presentation& pres,
                             const ParseEnv& env) {
    return normal_form(parse_raw_element(text, pres, env), pres);
}

CoalgebraElement parse_c_element(const std::string& text, const CoalgebraSpec& spec,
                                 const ParseEnv& env) {
    Lexer lex(text);
    CoalgebraElement out;
    bool neg = false;
    if (lex.peek().kind == Tok::Minus) {
        lex.next();
        neg = true;
    }
    while (true) {
        CoalgebraElement leg = parse_c_leg(lex, spec, env);
        out = neg ? out - leg : out + leg;
        if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
            neg = lex.next().kind == Tok::Minus;
            continue;
        }
        break;
    }
    expect(lex, Tok::End, "end of input");
    return out;
}

TensorExpression parse_tensor_pc(Lexer& lex, const Presentation& pres, const CoalgebraSpec& spec,
                                 const ParseEnv& env) {
    TensorExpression out({Space::P, Space::C});
    bool neg = false;
    if (lex.peek().kind == Tok::Minus) {
        lex.next();
        neg = true;
    }
    while (true) {
        RawElement praw = parse_term(lex, pres, env);
        expect(lex, Tok::Tensor, "'(x)'");
        CoalgebraElement cleg = parse_c_leg(lex, spec, env);
        AlgebraElement pnf = normal_form(praw, pres);
        for (const auto& [m, s] : pnf.terms())
            for (const auto& [cb, sc] : cleg.terms())
                out.add_term({LegKey(m), LegKey(cb)}, neg ? -(s * sc) : s * sc);
        if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
            neg = lex.next().kind == Tok::Minus;
            continue;
        }
        break;
    }
    return out;
}

TensorExpression parse_tensor_cc(Lexer& lex, const CoalgebraSpec& spec, const ParseEnv& env) {
    TensorExpression out({Space::C, Space::C});
    bool neg = false;
    if (lex.peek().kind == Tok::Minus) {
        lex.next();
        neg = true;
    }
    while (true) {
        CoalgebraElement a = parse_c_leg(lex, spec, env);
        expect(lex, Tok::Tensor, "'(x)'");
        CoalgebraElement b = parse_c_leg(lex, spec, env);
        for (const auto& [ca, sa] : a.terms())
            for (const auto& [cb, sb] : b.terms())
                out.add_term({LegKey(ca), LegKey(cb)}, neg ? -(sa * sb) : sa * sb);
        if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
            neg = lex.next().kind == Tok::Minus;
            continue;
        }
        break;
    }
    return out;
}

TensorExpression parse_tensor_pc(const std::string& text, const Presentation& pres,
                                 const CoalgebraSpec& spec, const ParseEnv& env) {
    Lexer lex(text);
    TensorExpression t = parse_tensor_pc(lex, pres, spec, env);
    expect(lex, Tok::End, "end of input");
    return t;
}

TensorExpression parse_tensor_cc(const std::string& text, const CoalgebraSpec& spec,
                                 const ParseEnv& env) {
    Lexer lex(text);
    TensorExpression t = parse_tensor_cc(lex, spec, env);
    expect(lex, Tok::End, "end of input");
    return t;
}

}  // namespace entwine
