#pragma once

#include <string>

#include "entwine/coalgebra.hpp"
#include "entwine/tensor.hpp"

namespace entwine {

/// Canonical text rendering; the grammar is shared with the CLI DSL and
/// round-trips through parse_element exactly.
std::string render(const Scalar& s);
std::string render(const Monomial& m, const Presentation& pres);
std::string render(const AlgebraElement& e, const Presentation& pres);
std::string render(const CBasis& b, const CoalgebraSpec& spec);
std::string render(const CoalgebraElement& c, const CoalgebraSpec& spec);
std::string render(const TensorExpression& t, const Presentation& pres, const CoalgebraSpec& spec);

}  // namespace entwine
