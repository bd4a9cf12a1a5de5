#pragma once

#include <stdexcept>
#include <string>

namespace sqi {

// Base class for every condition this library reports by throwing.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// hilbert module
struct InvalidStateVector : Error { using Error::Error; };
struct InvalidOperator : Error { using Error::Error; };
struct InvalidEffect : Error { using Error::Error; };
struct InvalidDensityOperator : Error { using Error::Error; };
struct BasisMismatch : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };
struct CoefficientsNotNormalized : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ExpectationOutOfRange : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };

// interferometer module
struct InvalidPathPair : Error { using Error::Error; };
struct InvalidElement : Error { using Error::Error; };
struct ZeroSurvival : Error { using Error::Error; };
struct NoSweptPhase : Error { using Error::Error; };
struct AmbiguousSweptPhase : Error { using Error::Error; };

// detection module
struct LayoutMismatch : Error { using Error::Error; };
struct IncompleteFamily : Error { using Error::Error; };
struct MissingOutcome : Error { using Error::Error; };
struct DegenerateDistribution : Error { using Error::Error; };

// scenarios module
struct UnknownScenario : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };

} // namespace sqi
