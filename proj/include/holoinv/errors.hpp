#pragma once

#include <stdexcept>
#include <string>

namespace holoinv {

/// Argument outside the mathematical domain of an operation (|z| >= 1, e <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The operation has no formula or certificate family for this domain.
class UnsupportedDomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A map witness does not fit the domain or normalization it is used with.
class WitnessMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computed bound breaks its own invariants. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace holoinv
