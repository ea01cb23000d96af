#pragma once

#include <stdexcept>
#include <string>

namespace entwine {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rule application exceeded the configured step budget; signals a bad presentation.
struct NonTerminating : EngineError {
    using EngineError::EngineError;
};

/// Element is not a recognizable unit.
struct NotAUnit : EngineError {
    using EngineError::EngineError;
};

/// A generator has no image under a morphism definition.
struct MissingImage : EngineError {
    using EngineError::EngineError;
};

/// No reordering rule for a descending generator pair.
struct MissingRule : EngineError {
    using EngineError::EngineError;
};

/// A map is not convolution invertible.
struct NotInvertible : EngineError {
    using EngineError::EngineError;
};

/// Matrix-coalgebra map without a multiplicative handle.
struct NotMultiplicative : EngineError {
    using EngineError::EngineError;
};

/// A shifted basis index left the evaluation window of a declared table.
struct WindowExceeded : EngineError {
    using EngineError::EngineError;
};

/// A commutator table fails the confluence / associativity constraints.
struct InconsistentTable : EngineError {
    using EngineError::EngineError;
};

/// The cleft intertwining condition fails at a tested input.
struct IntertwinerFails : EngineError {
    using EngineError::EngineError;
};

/// A cocycle value does not lie in the coinvariant subalgebra.
struct SigmaNotCoinvariant : EngineError {
    using EngineError::EngineError;
};

/// A rho/sigma output cannot be rewritten into the image of M.
struct NotInM : EngineError {
    using EngineError::EngineError;
};

/// The gauge admissibility condition fails.
struct GaugeConditionFails : EngineError {
    using EngineError::EngineError;
};

}  // namespace entwine
