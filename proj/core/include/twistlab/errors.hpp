#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands belong to different ground fields.
struct FieldMismatchError : Error {
    using Error::Error;
};

/// Division or inversion of a zero scalar.
struct DivisionByZeroError : Error {
    using Error::Error;
};

/// The field does not contain a primitive root of unity of the requested order.
struct UnsupportedOrderError : Error {
    using Error::Error;
};

/// Domain/codomain of maps do not line up, or spaces disagree.
struct ShapeMismatchError : Error {
    using Error::Error;
};

/// A square map has no inverse.
struct SingularMapError : Error {
    using Error::Error;
};

/// Evaluation touched a column a partial map leaves undefined.
struct UndefinedColumnError : Error {
    explicit UndefinedColumnError(const std::string& label)
        : Error("evaluation touched undefined column at basis element " + label),
          basis_label(label) {}
    std::string basis_label;
};

/// Tensor product would exceed the configured dimension cap.
struct DimensionLimitError : Error {
    using Error::Error;
};

struct DegeneratePairingError : Error {
    using Error::Error;
};

struct NonAssociativePairingError : Error {
    using Error::Error;
};

/// The two mirror-image composites that rebuild a comultiplication (or counit)
/// from a pairing disagreed.  For an associative non-degenerate pairing this
/// cannot happen; surfaced separately so it is never silently absorbed.
struct AmbiguousInducedStructureError : Error {
    using Error::Error;
};

struct UngradedAlgebraError : Error {
    using Error::Error;
};

struct InconsistentBicharacterError : Error {
    using Error::Error;
};

struct NonInvertibleLambdaError : Error {
    using Error::Error;
};

struct UncheckedTwistError : Error {
    using Error::Error;
};

struct NotBijectiveError : Error {
    using Error::Error;
};

/// Extending a seed twist over the relations of the algebras produced two
/// different images for the same monomial; carries both images for diagnosis.
struct InconsistentExtensionError : Error {
    InconsistentExtensionError(const std::string& what, std::string monomial)
        : Error(what), monomial(std::move(monomial)) {}
    std::string monomial;
};

struct IncompleteSeedError : Error {
    using Error::Error;
};

struct NotBialgebraInputsError : Error {
    using Error::Error;
};

struct NotFrobeniusInputsError : Error {
    using Error::Error;
};

struct NotSeparableInputsError : Error {
    using Error::Error;
};

struct NotSpecialInputsError : Error {
    using Error::Error;
};

struct NoInheritedStructureError : Error {
    using Error::Error;
};

/// Two routes that must agree by construction disagreed.  Always a bug in
/// this library (or a falsified coherence statement), never a user error.
struct InternalCoherenceError : Error {
    using Error::Error;
};

struct UnsupportedGroupError : Error {
    using Error::Error;
};

struct InvalidQMatrixError : Error {
    using Error::Error;
};

struct UnsupportedParametersError : Error {
    using Error::Error;
};

struct NotAnActionError : Error {
    using Error::Error;
};

/// Scenario / scalar text could not be parsed; position is 1-based.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what), line(line), column(column) {}
    std::size_t line = 0;
    std::size_t column = 0;
};

struct UnknownPresetError : Error {
    using Error::Error;
};

struct NameResolutionError : Error {
    using Error::Error;
};

struct UnknownDemoError : Error {
    using Error::Error;
};

}  // namespace twistlab
