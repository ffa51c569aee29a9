#pragma once

#include <stdexcept>
#include <string>

namespace morita {

enum class ErrorKind {
    field_mismatch,
    invalid_complex,
    degree_mismatch,
    not_a_cycle,
    invalid_generator,
    unbounded_enumeration,
    not_augmented,
    invalid_map,
    unsupported,
    not_invertible,
    incompatible_action,
    parse_error,
    invalid_cw,
    unknown_space,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::field_mismatch: return "field mismatch";
    case ErrorKind::invalid_complex: return "invalid complex";
    case ErrorKind::degree_mismatch: return "degree mismatch";
    case ErrorKind::not_a_cycle: return "not a cycle";
    case ErrorKind::invalid_generator: return "invalid generator";
    case ErrorKind::unbounded_enumeration: return "unbounded enumeration";
    case ErrorKind::not_augmented: return "not augmented";
    case ErrorKind::invalid_map: return "invalid algebra map";
    case ErrorKind::unsupported: return "unsupported input";
    case ErrorKind::not_invertible: return "not invertible";
    case ErrorKind::incompatible_action: return "incompatible action";
    case ErrorKind::parse_error: return "parse error";
    case ErrorKind::invalid_cw: return "invalid CW complex";
    case ErrorKind::unknown_space: return "unknown space";
    }
    return "error";
}

/// Every validation failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace morita
