#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pacba {

/// A broken invariant, reported as data. `field` is a JSON-style path such as
/// `crops[0].area` so clients can highlight the offending input.
struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

std::string describe(const std::vector<Violation>& violations);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document (bad JSON, wrong types, unknown enumeration text).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed catalog whose content breaks an integrity rule.
class IntegrityError : public Error {
public:
    explicit IntegrityError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a finance function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An option that neither matches a catalog combination nor carries
/// user-supplied benefits and investments.
class UnresolvableOptionError : public Error {
public:
    UnresolvableOptionError(std::string field, const std::string& message)
        : Error(message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class StorageError : public Error {
public:
    using Error::Error;
};

}  // namespace pacba
