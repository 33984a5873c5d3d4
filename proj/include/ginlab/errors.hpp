#pragma once

#include <stdexcept>
#include <string>

namespace ginlab {

/// Failure categories. The CLI maps each one to a process exit code.
enum class ErrorKind {
    Validation = 2,
    NotBulk = 3,
    Numerical = 4,
    MissingArtifact = 5,
};

class GinlabError : public std::runtime_error {
public:
    GinlabError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

#define GINLAB_DEFINE_ERROR(Name, Kind)                                        \
    class Name : public GinlabError {                                          \
    public:                                                                    \
        explicit Name(const std::string& what)                                 \
            : GinlabError(ErrorKind::Kind, what) {}                            \
    };

// Input validation
GINLAB_DEFINE_ERROR(ValidationError, Validation)
GINLAB_DEFINE_ERROR(WeightSumError, Validation)
GINLAB_DEFINE_ERROR(DuplicateAtomError, Validation)
GINLAB_DEFINE_ERROR(NonpositiveParamError, Validation)
GINLAB_DEFINE_ERROR(DimensionError, Validation)
GINLAB_DEFINE_ERROR(DegenerateSpectrumError, Validation)

// Test point is outside the region where the bulk analysis applies
GINLAB_DEFINE_ERROR(NotBulkError, NotBulk)
GINLAB_DEFINE_ERROR(AtomCollisionError, NotBulk)

// Numerical failures
GINLAB_DEFINE_ERROR(ConvergenceError, Numerical)
GINLAB_DEFINE_ERROR(EmptyLevelSetError, Numerical)
GINLAB_DEFINE_ERROR(InsufficientDataError, Numerical)
GINLAB_DEFINE_ERROR(InfeasibleError, Numerical)
GINLAB_DEFINE_ERROR(ResidualError, Numerical)

GINLAB_DEFINE_ERROR(MissingArtifactError, MissingArtifact)

#undef GINLAB_DEFINE_ERROR

}  // namespace ginlab
