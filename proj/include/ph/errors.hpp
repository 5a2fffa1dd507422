#pragma once

#include <stdexcept>
#include <string>

namespace ph {

/// Root of the library error hierarchy.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Received element encoding is the wrong size or decodes outside [2, p-2].
struct RangeError : Error {
    using Error::Error;
};

/// Received element is in range but fails the order-q subgroup check.
struct SubgroupError : Error {
    using Error::Error;
};

/// A state-machine entry point was invoked out of phase by the caller.
struct StateError : Error {
    using Error::Error;
};

/// Received tag-set size disagrees with the configured membership cap m.
struct SizeError : Error {
    using Error::Error;
};

/// More memberships supplied than the padded array can hold.
struct CapacityError : Error {
    using Error::Error;
};

/// Bad group parameters, credential files, or CLI configuration.
struct ConfigError : Error {
    using Error::Error;
};

enum class FormatErrorKind { Version, Type, Length, Truncation };

/// Wire bytes failed to decode. Carries the rejection category.
struct FormatError : Error {
    FormatError(FormatErrorKind k, const std::string& msg) : Error(msg), kind(k) {}
    FormatErrorKind kind;
};

inline const char* to_string(FormatErrorKind k) {
    switch (k) {
        case FormatErrorKind::Version: return "version";
        case FormatErrorKind::Type: return "type";
        case FormatErrorKind::Length: return "length";
        case FormatErrorKind::Truncation: return "truncation";
    }
    return "?";
}

} // namespace ph
