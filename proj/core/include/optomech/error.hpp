#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

enum class ErrorKind {
    InvalidParameter,
    DegenerateSolution,
    SingularResponse,
    DifferentiationFailure,
    Divergence,
    Windowing,
    Config,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace optomech
