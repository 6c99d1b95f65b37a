#pragma once

#include <stdexcept>
#include <string>

namespace bhc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A polynomial family that violates a Bunyakovsky/Schinzel condition.
class InadmissibleFamily : public DomainError {
public:
    using DomainError::DomainError;
};

/// Request exceeds a configured memory or time budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bhc
