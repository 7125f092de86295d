#pragma once

#include <stdexcept>
#include <string>

namespace kcollapse {

/// Bad arguments: dimension mismatch, parameter out of range, malformed input.
class UsageError : public std::runtime_error
{
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition of a check was not met by the input.
class PreconditionError : public std::runtime_error
{
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed. This always indicates a bug, never bad input.
class InvariantError : public std::runtime_error
{
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested value cannot be represented exactly in the rational backend.
class InexactError : public std::runtime_error
{
public:
    explicit InexactError(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration would exceed the caller's budget and no sampler was supplied.
class BudgetExceeded : public std::runtime_error
{
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kcollapse
