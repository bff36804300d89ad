#pragma once

#include <stdexcept>
#include <string>

namespace mfeit {

// Validation-type failures (bad input, bad geometry, bad config).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures (singular systems, divergence, step collapse).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveRadius : ValidationError {
    double theta;
    explicit NonPositiveRadius(double th)
        : ValidationError("star shape radius is non-positive at theta=" + std::to_string(th)),
          theta(th) {}
};

struct DegenerateShape : ValidationError {
    using ValidationError::ValidationError;
};

struct TooFewNodes : ValidationError {
    using ValidationError::ValidationError;
};

struct CurvesTouch : ValidationError {
    using ValidationError::ValidationError;
};

struct IncompatibleFlux : ValidationError {
    using ValidationError::ValidationError;
};

struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct SingularSystem : NumericError {
    using NumericError::NumericError;
};

struct IllConditioned : NumericError {
    using NumericError::NumericError;
};

struct Diverged : NumericError {
    using NumericError::NumericError;
};

struct StepCollapse : NumericError {
    using NumericError::NumericError;
};

struct EigSolveFailure : NumericError {
    using NumericError::NumericError;
};

}  // namespace mfeit
