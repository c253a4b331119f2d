#pragma once

#include <stdexcept>
#include <string>

namespace quadriga {

// Non-halting branches of the underlying algorithms are surfaced as typed
// errors; the library never hangs on malformed input.
enum class ErrorKind {
    InvalidSymbol,
    TruncatedCode,
    MalformedCode,
    MalformedPairing,
    Arity,
    Parameter,
    DepthTooLarge,
    StoppingViolation,
    ZeroMass,
    PrecisionCap,
    InvalidCode,
    SearchTooLarge,
    InvalidCharacter,
    Precision,
    ConstructionSoundness,
    NotFound,
    ExactValueRequired,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidSymbol: return "invalid-symbol";
        case ErrorKind::TruncatedCode: return "truncated-code";
        case ErrorKind::MalformedCode: return "malformed-code";
        case ErrorKind::MalformedPairing: return "malformed-pairing";
        case ErrorKind::Arity: return "arity";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::DepthTooLarge: return "depth-too-large";
        case ErrorKind::StoppingViolation: return "stopping-guarantee-violated";
        case ErrorKind::ZeroMass: return "zero-mass";
        case ErrorKind::PrecisionCap: return "precision-cap";
        case ErrorKind::InvalidCode: return "invalid-code";
        case ErrorKind::SearchTooLarge: return "search-too-large";
        case ErrorKind::InvalidCharacter: return "invalid-character";
        case ErrorKind::Precision: return "precision";
        case ErrorKind::ConstructionSoundness: return "construction-soundness";
        case ErrorKind::NotFound: return "not-found";
        case ErrorKind::ExactValueRequired: return "exact-value-required";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace quadriga
