#include "optomech/error.hpp"

namespace optomech {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "invalid parameter";
        case ErrorKind::DegenerateSolution: return "degenerate solution";
        case ErrorKind::SingularResponse: return "singular response";
        case ErrorKind::DifferentiationFailure: return "differentiation failure";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::Windowing: return "windowing";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace optomech
