#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace omega {

// Domain errors carry a stable machine-readable name; the CLI prints the
// name verbatim on stderr and exits with code 3.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Comparison or arithmetic between two genuinely irrational values of
// different representations (quadratic surd vs. log-linear) is undecidable
// within this library and is rejected, never guessed.
struct IncomparableKindsError : Error {
    explicit IncomparableKindsError(const std::string& m) : Error("IncomparableKinds", m) {}
};

// A value or intermediate result falls outside what the exact kernels
// support (oversized exponents, non-prime log keys, products of logs, ...).
struct UnsupportedValueError : Error {
    explicit UnsupportedValueError(const std::string& m) : Error("UnsupportedValue", m) {}
};

struct BoundTooLargeError : Error {
    explicit BoundTooLargeError(const std::string& m) : Error("BoundTooLargeForBudget", m) {}
};

struct NotCoprimeError : Error {
    NotCoprimeError(std::uint64_t g, const std::string& m)
        : Error("NotCoprime", m), gcd_value(g) {}
    std::uint64_t gcd_value;
};

struct CeilingExceededError : Error {
    explicit CeilingExceededError(const std::string& m) : Error("CeilingExceeded", m) {}
};

struct NotNormalizedError : Error {
    explicit NotNormalizedError(const std::string& m) : Error("NotNormalized", m) {}
};

struct InsufficientElementsError : Error {
    explicit InsufficientElementsError(const std::string& m) : Error("InsufficientElements", m) {}
};

struct InvalidProportionsError : Error {
    explicit InvalidProportionsError(const std::string& m) : Error("InvalidProportions", m) {}
};

// Raised when a floor image that was expected to be additively closed is
// not; the offending pair is kept for diagnostics.
struct NotClosedError : Error {
    NotClosedError(std::pair<std::uint64_t, std::uint64_t> w, const std::string& m)
        : Error("NotClosed", m), witness(w) {}
    std::pair<std::uint64_t, std::uint64_t> witness;
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error("IoError", m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};

}  // namespace omega
