#pragma once

#include "entwine/bundles.hpp"
#include "entwine/parse.hpp"

namespace entwine {

/// Parsed declaration file. Right-hand sides that depend on basis indices
/// (psi tables, maps) are kept as token slices and evaluated on demand with
/// the index environment of the call.
struct DslDocument {
    std::string bundle_name;
    std::map<std::string, int> params;  // named integer parameters (s, ...)
    int window = 5;

    std::shared_ptr<Presentation> algebra;  // null for matrix bundles
    std::string basis_name;                 // group-like coalgebra basis symbol

    // matrix bundles
    int matrix_dim = 0;
    int coords = 0;
    struct GammaDecl {
        int i = 0, j = 0, k = 0;  // [a_ij, x_k] = kappa * rhs
        std::vector<Token> rhs;
    };
    struct LambdaDecl {
        int m = 0, n = 0;  // [x_m, x_n] = kappa * rhs (linear in x)
        std::vector<Token> rhs;
    };
    std::vector<GammaDecl> gamma_decls;
    std::vector<LambdaDecl> lambda_decls;

    // entwine block (group-like bundles)
    std::vector<Token> e_index;
    struct PsiDecl {
        std::string var;
        Letter letter;
        std::vector<Token> rhs;
    };
    std::vector<PsiDecl> psi_decls;
    struct PsiCDecl {
        std::string var1, var2;
        std::vector<Token> rhs;
    };
    std::optional<PsiCDecl> psiC_decl;

    // hopf block: declared coactions per generator letter
    struct CoactDecl {
        Letter letter;
        std::vector<Token> rhs;
    };
    std::vector<CoactDecl> coact_decls;

    std::shared_ptr<Presentation> coinv;
    std::map<int, std::vector<Token>> coinv_images;

    struct MapDecl {
        std::string var;
        std::vector<Token> rhs;
    };
    std::map<std::string, MapDecl> maps;  // phi and gauge maps, by name

    struct ExpectRho {
        std::string var;
        Letter letter;
        std::vector<Token> rhs;
    };
    struct ExpectSigma {
        std::string var1, var2;
        std::vector<Token> rhs;
    };
    std::vector<ExpectRho> expect_rho;
    std::optional<ExpectSigma> expect_sigma;
};

DslDocument parse_document(const std::string& source);

/// Build the bundle a document declares.
Bundle assemble(const DslDocument& doc);

/// Evaluate a named map declaration against the assembled bundle's algebra.
ConvolutionMap make_map(const DslDocument& doc, const Bundle& b, const std::string& name);

/// Reorient an equation lhs = rhs into a reordering rule on the unique
/// descending two-letter word it contains, and register it.
void add_relation(Presentation& pres, const RawElement& lhs, const RawElement& rhs,
                  const SourcePos& pos);

/// Structural bundle comparison: presentations, coalgebra, psi/psiC tables on
/// the sweep window, grouplike, coinvariant data and Phi.
bool bundles_equal(const Bundle& a, const Bundle& b, int window, int degree_bound);

}  // namespace entwine
