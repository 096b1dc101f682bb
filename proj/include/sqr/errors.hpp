#pragma once

#include <stdexcept>
#include <string>

namespace sqr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidGrid : Error { using Error::Error; };
struct InvalidKnotCount : Error { using Error::Error; };
struct OutOfSpan : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct InvalidProblem : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct SingularNormalEquations : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DegeneratePenalty : Error { using Error::Error; };
struct SelectionFailed : Error { using Error::Error; };
struct SpectrumFailed : Error { using Error::Error; };
struct IngestError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace sqr
