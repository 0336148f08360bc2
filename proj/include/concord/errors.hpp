#pragma once

#include <stdexcept>
#include <string>

namespace concord {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A world assignment omits an atom that an expression references.
struct MissingAtom : Error {
    using Error::Error;
};

/// Attempt to build a conditional event whose antecedent is a contradiction.
struct UnsatisfiableAntecedent : Error {
    using Error::Error;
};

/// Iterated conditional whose antecedent object is the zero quantity; its
/// prevision is indeterminate and no table is constructed.
struct TrivialIterated : Error {
    using Error::Error;
};

/// conjunction_with_gn called on a pair that is not Goodman-Nguyen ordered.
struct NotGnImplied : Error {
    using Error::Error;
};

/// A table value references a prevision symbol the assessment leaves unbound.
struct UnboundSymbol : Error {
    using Error::Error;
};

/// extension_interval called on a base assessment that is itself incoherent.
struct IncoherentBase : Error {
    using Error::Error;
};

/// Entailment query on a premise family that is not p-consistent.
struct NotPConsistent : Error {
    using Error::Error;
};

/// Single-premise entailment query where the premise can never be true.
struct TrivialPremise : Error {
    using Error::Error;
};

/// Operation invoked with an unsupported number of premises.
struct UnsupportedArity : Error {
    using Error::Error;
};

/// Problem-file syntax or validation error, with 1-based location.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& message, int line_, int column_)
        : Error(message), line(line_), column(column_) {}
};

/// Invariant violation inside the library; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace concord
