// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace dhnf {

enum class ErrorKind {
    GradeTooSmall,
    DegenerateCubic,
    SingularBlock,
    NonUniqueSolve,
    UncoveredCase,
    KernelViolation,
    NotInSpan,
    BadLinearPart,
    RealityViolation,
    PostRationalityCheck,
    Schema,
};

const char* to_string(ErrorKind kind);

/// Error raised by the normalization modules; kind() identifies the failure class.
class EngineError : public std::runtime_error {
public:
    EngineError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace dhnf
