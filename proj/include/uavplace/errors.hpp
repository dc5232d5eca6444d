#pragma once

#include <stdexcept>
#include <string>

namespace uavplace {

// Invariant violation in user-supplied data (scenario, bounds, config).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed file. `field` names the offending key when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& field, const std::string& what)
        : std::runtime_error(what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Nonpositive distance, frequency, power, ...
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter combination that cannot be evaluated (e.g. 2^(R|I|/B) overflows).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Query on an object in the wrong state (projection onto an empty region).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uavplace
