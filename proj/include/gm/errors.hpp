#pragma once

#include <stdexcept>
#include <string>

namespace gm {

/// Input violates a type invariant (norm, angle range, matrix positivity, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense representation would exceed the desk-scale cap of 20 qubits.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The requested solver does not apply to this input; use the oracle instead.
class UnsupportedInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace gm
