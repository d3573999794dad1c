#pragma once

#include <stdexcept>
#include <string>

namespace teloinv {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A probability density does not integrate to 1 within tolerance.
struct NonNormalizedDensity : Error { using Error::Error; };

/// Spectral shift lambda_N came out nonpositive (N too small for lambda).
struct DegenerateLambda : Error { using Error::Error; };

/// A Laplace transform was evaluated left of its abscissa of convergence.
struct AbscissaViolation : Error { using Error::Error; };

/// The envelope supremum diverges (lambda >= decay rate of the density).
struct UnboundedEnvelope : Error { using Error::Error; };

/// A time stepper produced values outside the stable range.
struct StabilityViolation : Error { using Error::Error; };

/// Conservation residual of a solver exceeded its tolerance.
struct MassDrift : Error { using Error::Error; };

/// A Monte Carlo lineage failed to terminate within the division guard.
struct NonTermination : Error { using Error::Error; };

/// A numeric transform was requested on a series that does not cover
/// enough mass for the tail correction to be meaningful.
struct InsufficientHorizon : Error { using Error::Error; };

/// The explicit cemetery transform requires an integer Gamma shape.
struct NonIntegerShape : Error { using Error::Error; };

/// The point p lies outside the validity region of the link map.
struct OutsideP_N : Error { using Error::Error; };

/// Catastrophic cancellation consumed the configured precision.
struct PrecisionExhausted : Error { using Error::Error; };

/// Kernel bandwidth outside (0, sqrt(log 2)).
struct BandwidthOutOfRange : Error { using Error::Error; };

/// Bandwidth selection on a sample with zero spread.
struct ZeroSpread : Error { using Error::Error; };

/// Regression requested with fewer than three points.
struct InsufficientPoints : Error { using Error::Error; };

/// Malformed configuration file or unknown key/value.
struct ConfigError : Error { using Error::Error; };

}  // namespace teloinv
