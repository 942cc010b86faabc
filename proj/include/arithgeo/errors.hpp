#pragma once

// Error taxonomy shared by every module. Three classes matter to callers:
// invalid input (ParseError/DomainError), exhausted resource budgets
// (BudgetError), and report-merge misuse (MergeError). Genericity and
// promise failures are value-level outcomes, not exceptions.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arithgeo {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Precondition violations: bad degrees, unsupported dimensions, empty input.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& message) : std::runtime_error(message) {}
};

// A computation would exceed a configured budget (enumeration points,
// congruence modulus, prime-scan range). Never silently truncated.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& message) : std::runtime_error(message) {}
};

// DensityReport merge preconditions (cap mismatch, overlapping prime sets,
// different systems).
class MergeError : public std::runtime_error {
public:
    explicit MergeError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace arithgeo
