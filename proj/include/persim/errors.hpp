#pragma once

#include <stdexcept>
#include <string>

namespace persim {

// Mismatched plane dimensions, empty inputs and the like.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Out-of-domain parameter values (non-positive sigma, bad config keys, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inputs on which a statistic is undefined (constant sequence, all ties).
struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// File-system level failures: missing file, unwritable path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A file opened fine but its contents could not be understood.
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Manifest validation failure; the message lists every offending row.
struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace persim
