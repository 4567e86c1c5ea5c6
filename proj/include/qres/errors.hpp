#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qres {

/// Root of every error the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct ParseError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct UndefinedResultant : Error {
    UndefinedResultant() : Error("undefined resultant") {}
};

struct NotASquare : Error {
    NotASquare() : Error("not a polynomial square") {}
};

struct NotEtale : Error {
    NotEtale() : Error("not étale") {}
};

/// Raised when a computation that is guaranteed by construction fails; it
/// always indicates a bug or a violated genericity assumption upstream.
struct InvariantViolation : Error {
    using Error::Error;
};

struct NotInvertible : Error {
    std::size_t component;
    explicit NotInvertible(std::size_t comp)
        : Error("element is not a unit (zero in component " + std::to_string(comp) + ")"), component(comp)
    {
    }
};

struct FactorizationInconclusive : Error {
    using Error::Error;
};

struct GenericityExhausted : Error {
    std::vector<std::string> attempts;
    explicit GenericityExhausted(std::vector<std::string> tried)
        : Error("no generic Tschirnhaus substitution found after " + std::to_string(tried.size()) +
                " attempts"),
          attempts(std::move(tried))
    {
    }
};

struct DegenerateForm : Error {
    using Error::Error;
};

struct LambdaIsRoot : Error {
    LambdaIsRoot() : Error("λ is a root of ρ") {}
};

}  // namespace qres
