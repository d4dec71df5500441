#pragma once

#include <stdexcept>
#include <string>

namespace arithderiv {

// Base of every error raised by the library. kind() is the stable string the
// CLI reports as "error_kind".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Input outside an operation's domain (zero where nonzero is required,
// composite where a prime is required, non-coprime moduli, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// No square root exists modulo the requested prime power.
class ResidueError : public Error {
public:
    explicit ResidueError(const std::string& what) : Error("residue", what) {}
};

// The result exists but is too large to materialize.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error("capacity", what) {}
};

// A valuation was handed to an operation that only covers another class of the
// dynamics (e.g. kappa_profile on an eventually-zero start).
class ClassificationError : public Error {
public:
    explicit ClassificationError(const std::string& what) : Error("classification", what) {}
};

// A witness sequence does not converge to the requested point.
class GeneratorError : public Error {
public:
    explicit GeneratorError(const std::string& what) : Error("generator", what) {}
};

}  // namespace arithderiv
