#pragma once

#include <stdexcept>
#include <string>

namespace henon {

// Coefficient magnitude left the representable range during an algebraic
// operation (composition blow-up at desk scale).
class CoefficientOverflow : public std::runtime_error {
public:
    explicit CoefficientOverflow(const std::string& what) : std::runtime_error(what) {}
};

// Symbolic expansion was requested past the configured degree cap.
class ExpansionTooLarge : public std::runtime_error {
public:
    ExpansionTooLarge(const std::string& what, long attempted)
        : std::runtime_error(what), attempted_degree(attempted) {}
    long attempted_degree;
};

class PreconditionViolated : public std::runtime_error {
public:
    explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

// The sampled invariance check of a computed filtration radius failed.
// Signals a bound bug, not a mathematical failure.
class SelfCheckFailed : public std::runtime_error {
public:
    explicit SelfCheckFailed(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace henon
