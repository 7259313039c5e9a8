#pragma once

#include <stdexcept>
#include <string>

namespace lampsep {

// An operation's input contract was violated (bad parameters, mismatched
// valuations, out-of-range indices, ...).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation would exceed a configured resource cap and was refused.
struct cap_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certificate failed re-validation.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lampsep
