#include "entwine/render.hpp"

#include <sstream>

namespace entwine {

namespace {

// A scalar needs parentheses as a coefficient when it has several terms or a
// complex coefficient that renders with a sign.
bool needs_parens(const Scalar& s) {
    if (s.terms().size() != 1) return true;
    const auto& c = s.terms().begin()->second;
    return c.im != 0 && c.re != 0;
}

std::string render_coeff(const Scalar& s) {
    if (needs_parens(s)) return "(" + s.str() + ")";
    return s.str();
}

}  // namespace

std::string render(const Scalar& s) { return s.str(); }

std::string render(const Monomial& m, const Presentation& pres) {
    if (m.is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : m.factors) {
        if (!first) os << "*";
        first = false;
        os << pres.generator(g).name;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::string render(const AlgebraElement& e, const Presentation& pres) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, s] : e.terms()) {
        if (!first) os << " + ";
        first = false;
        if (m.is_one()) {
            os << render_coeff(s);
        } else if (s.is_one()) {
            os << render(m, pres);
        } else {
            os << render_coeff(s) << "*" << render(m, pres);
        }
    }
    return os.str();
}

std::string render(const CBasis& b, const CoalgebraSpec& spec) {
    if (spec.kind() == CoalgebraSpec::GroupLike)
        return spec.basis_name() + "[" + std::to_string(b.p) + "]";
    return render(b.mono, spec.matrix_presentation());
}

std::string render(const CoalgebraElement& c, const CoalgebraSpec& spec) {
    if (c.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, s] : c.terms()) {
        if (!first) os << " + ";
        first = false;
        if (s.is_one()) os << render(b, spec);
        else os << render_coeff(s) << "*" << render(b, spec);
    }
    return os.str();
}

std::string render(const TensorExpression& t, const Presentation& pres,
                   const CoalgebraSpec& spec) {
    if (t.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [legs, s] : t.terms()) {
        if (!first) os << " + ";
        first = false;
        if (!s.is_one()) os << render_coeff(s) << "*";
        bool fl = true;
        for (const auto& l : legs) {
            if (!fl) os << " (x) ";
            fl = false;
            if (std::holds_alternative<Monomial>(l))
                os << render(std::get<Monomial>(l), pres);
            else
                os << render(std::get<CBasis>(l), spec);
        }
    }
    return os.str();
}

}  // namespace entwine
