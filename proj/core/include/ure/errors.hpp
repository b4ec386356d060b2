#pragma once

#include <stdexcept>
#include <string>

namespace ure {

/// Invalid input data or configuration. CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rank correlation is undefined (fewer than two samples, or a constant list).
class UndefinedCorrelationError : public InputError {
public:
    using InputError::InputError;
};

/// A violated internal invariant. CLI maps this to exit code 3.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace ure
