#pragma once

#include <stdexcept>
#include <string>

namespace biorth {

// Bad input: the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateSingularity : ConfigError {
    using ConfigError::ConfigError;
};
struct NonnegativeIntegerResidue : ConfigError {
    using ConfigError::ConfigError;
};
struct MissingCanonicalPoint : ConfigError {
    using ConfigError::ConfigError;
};
struct NotSingleValued : ConfigError {
    using ConfigError::ConfigError;
};
struct WindowTooSmall : ConfigError {
    using ConfigError::ConfigError;
};

// The data is legal but the construction breaks down (a pivot, determinant
// or denominator vanished). The CLI maps these to exit code 3.
struct Degenerate : std::runtime_error {
    std::string where;
    Degenerate(std::string w, const std::string& msg) : std::runtime_error(w + ": " + msg), where(std::move(w)) {}
};

struct SingularStep : Degenerate {
    int index;
    SingularStep(std::string w, const std::string& msg, int idx) : Degenerate(std::move(w), msg), index(idx) {}
};

struct DegenerateDeterminant : Degenerate {
    using Degenerate::Degenerate;
};
struct NonConvergent : Degenerate {
    using Degenerate::Degenerate;
};
struct MultipleRoot : Degenerate {
    using Degenerate::Degenerate;
};
struct CoordinateOnSingularity : Degenerate {
    using Degenerate::Degenerate;
};
struct SingularTransform : Degenerate {
    using Degenerate::Degenerate;
};

}  // namespace biorth
