#pragma once

#include <stdexcept>
#include <string>

namespace orthodeck {

/// Elastic constants outside the admissible set (non-positive modulus, broken symmetry, ...).
class InvalidMaterial : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Constants are admissible one by one but the compliance block is singular or indefinite.
class DegenerateMaterial : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the plate.
class DomainError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A root bracket, scan or factorization failed. The message names the branch and bracket.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A property that the theory guarantees was observed to fail.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& what)
        : std::runtime_error(format(source, line, what)), line_(line) {}

    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, int line, const std::string& what) {
        if (line > 0) return source + ":" + std::to_string(line) + ": " + what;
        return source + ": " + what;
    }

    int line_;
};

}  // namespace orthodeck
