#pragma once

#include <stdexcept>
#include <string>

namespace strelay {

// Invalid configuration: infeasible parameters, bad field order, etc.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroCapacityError : ConfigError {
    using ConfigError::ConfigError;
};

struct FieldTooSmallError : ConfigError {
    using ConfigError::ConfigError;
};

struct CodeLengthExceedsFieldError : ConfigError {
    using ConfigError::ConfigError;
};

struct DimensionError : ConfigError {
    using ConfigError::ConfigError;
};

// Runtime failures while encoding/decoding.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientSymbolsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecodeInconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompleteHistoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SequencingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Erasure pattern exceeds the per-window budget the code was built for.
struct ChannelContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Encoder/decoder disagreement; indicates a bug, never expected in a valid run.
struct InternalFault : std::logic_error {
    using std::logic_error::logic_error;
};

struct EnumerationTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace strelay
