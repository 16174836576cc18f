#pragma once

#include <stdexcept>
#include <string>

namespace essr {

// Exit codes used by the command-line front end.
enum class ErrorKind { Domain = 2, Validation = 2, Resource = 3, Numeric = 4, Unsupported = 2 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] virtual const char* category() const noexcept = 0;

private:
    ErrorKind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
    const char* category() const noexcept override { return "domain"; }
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
    const char* category() const noexcept override { return "validation"; }
};

/// Raised when a computation would exceed a configured size cap.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorKind::Resource, what) {}
    const char* category() const noexcept override { return "resource"; }
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
    const char* category() const noexcept override { return "numeric"; }
};

/// The operation is not defined for this map variant (e.g. exact transfer
/// operator on a smooth map).
class UnsupportedVariant : public Error {
public:
    explicit UnsupportedVariant(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
    const char* category() const noexcept override { return "unsupported"; }
};

}  // namespace essr
