#pragma once

#include <string>

#include "entwine/errors.hpp"
#include "entwine/tensor.hpp"

namespace entwine {

struct SourcePos {
    int line = 1;
    int col = 1;
};

class SyntaxError : public EngineError {
  public:
    SyntaxError(const SourcePos& pos, const std::string& expected, const std::string& got)
        : EngineError("syntax error at " + std::to_string(pos.line) + ":" +
                      std::to_string(pos.col) + ": expected " + expected + ", got " + got),
          pos(pos) {}
    SourcePos pos;
};

class ResolutionError : public EngineError {
  public:
    ResolutionError(const SourcePos& pos, const std::string& name)
        : EngineError("unresolved name at " + std::to_string(pos.line) + ":" +
                      std::to_string(pos.col) + ": '" + name + "'"),
          pos(pos) {}
    SourcePos pos;
};

enum class Tok {
    Name,
    Int,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Equals,
    Semi,
    Tensor,  // the three-character marker "(x)"
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    long value = 0;  // Int payload
    SourcePos pos;
};

/// Tokenizer shared by the expression grammar and the declaration DSL.
/// A '+' or '-' immediately following a name character belongs to the name
/// (n+, mu-, z+) unless the character after the sign starts a new operand
/// (letter, digit, '_' or '('); binary +/- between named operands therefore
/// need surrounding whitespace. '#' starts a comment running to end of line.
class Lexer {
  public:
    explicit Lexer(const std::string& src);
    /// Re-lex a stored token slice (an End token is appended when missing).
    explicit Lexer(std::vector<Token> toks);
    const Token& peek() const { return toks_[i_]; }
    const Token& peek2() const { return toks_[std::min(i_ + 1, toks_.size() - 1)]; }
    Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool at_end() const { return toks_[i_].kind == Tok::End; }

  private:
    std::vector<Token> toks_;
    size_t i_ = 0;
};

/// Integer values for index/exponent variables (p, r, s, ...).
struct ParseEnv {
    std::map<std::string, int> vars;
};

/// Expressions with + - * ^, integer/parameter scalars (q, kappa, mu+, mu-,
/// i), generator names, and parenthesized subexpressions. Exponents and
/// bracket indices are integer expressions over the environment.
RawElement parse_raw_element(const std::string& text, const Presentation& pres,
                             const ParseEnv& env = {});

/// parse_raw_element followed by normal_form.
AlgebraElement parse_element(const std::string& text, const Presentation& pres,
                             const ParseEnv& env = {});

/// Linear combinations of coalgebra basis symbols (c[p], a[i,j] monomials).
CoalgebraElement parse_c_element(const std::string& text, const CoalgebraSpec& spec,
                                 const ParseEnv& env = {});

/// [P,C] tensor sums: coeff*monomial (x) c-basis + ...
TensorExpression parse_tensor_pc(const std::string& text, const Presentation& pres,
                                 const CoalgebraSpec& spec, const ParseEnv& env = {});

/// [C,C] tensor sums.
TensorExpression parse_tensor_cc(const std::string& text, const CoalgebraSpec& spec,
                                 const ParseEnv& env = {});

// Shared sub-parsers used by the declaration DSL (cursor-style, consuming
// from an open lexer).
RawElement parse_raw_element(Lexer& lex, const Presentation& pres, const ParseEnv& env);
long parse_int_expr(Lexer& lex, const ParseEnv& env);
CBasis parse_cbasis(Lexer& lex, const CoalgebraSpec& spec, const ParseEnv& env);
TensorExpression parse_tensor_pc(Lexer& lex, const Presentation& pres, const CoalgebraSpec& spec,
                                 const ParseEnv& env);
TensorExpression parse_tensor_cc(Lexer& lex, const CoalgebraSpec& spec, const ParseEnv& env);
Token expect(Lexer& lex, Tok kind, const std::string& what);

}  // namespace entwine
