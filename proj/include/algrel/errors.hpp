#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace algrel {

/// Operands live in polynomial rings with different numbers of variables.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the mathematical domain of the operation
/// (a level that does not exist, a state above its component cap, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed user input: bad documents, inconsistent probability tables.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured enumeration budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::uint64_t requested, std::uint64_t budget)
        : std::runtime_error(what + " (requested " + std::to_string(requested) + ", budget " +
                             std::to_string(budget) + ")"),
          requested_(requested), budget_(budget) {}

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t requested_;
    std::uint64_t budget_;
};

}  // namespace algrel
