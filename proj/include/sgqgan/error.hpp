#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgqgan {

enum class ErrorKind {
    ZeroVector,
    DimensionMismatch,
    DomainError,
    DegenerateBaseline,
    InvalidAmplitudes,
    InvalidDensityMatrix,
    NotUnitary,
    InsufficientProbes,
    LengthMismatch,
    ParseError,
    SchemaError,
    RangeError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; the kind tells callers what failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // Same kind, message prefixed with where it happened ("trial 3: iteration 7: ...").
    Error with_context(const std::string& context) const {
        return Error(kind_, context + ": " + what());
    }

private:
    ErrorKind kind_;
};

}  // namespace sgqgan
