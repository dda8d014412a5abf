#include "sgqgan/error.hpp"

namespace sgqgan {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
        case ErrorKind::InvalidAmplitudes: return "InvalidAmplitudes";
        case ErrorKind::InvalidDensityMatrix: return "InvalidDensityMatrix";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::InsufficientProbes: return "InsufficientProbes";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace sgqgan
