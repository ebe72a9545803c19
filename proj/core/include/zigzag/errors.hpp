#ifndef ZIGZAG_ERRORS_HPP
#define ZIGZAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zigzag {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A critical point with |p''| below the Morse floor, or no isolated roots at all.
struct MorseViolation : Error {
    using Error::Error;
};

/// Root bracketing found an odd count or adjacent critical points of the same kind.
struct GridTooCoarse : Error {
    using Error::Error;
};

/// The global maximum of V is not unique (within value_tol).
struct H01Violated : Error {
    using Error::Error;
};

/// Refreshment rate vanishes at a minimum where the refreshed prefactor was requested.
struct AlphaVanishes : Error {
    using Error::Error;
};

/// Prefactor requested for the rank-1 minimum, whose saddle is the fictive one.
struct FictiveSaddle : Error {
    using Error::Error;
};

/// No factor-10 separation between the n0-th and (n0+1)-th squared singular values.
struct GapNotFound : Error {
    using Error::Error;
};

/// The projected W matrix is numerically singular.
struct WSingular : Error {
    using Error::Error;
};

/// The number of eigenvalues in the small window differs from n0.
struct CountMismatch : Error {
    using Error::Error;
};

/// Least-squares decay fit residual too large to trust the rate.
struct FitUnstable : Error {
    using Error::Error;
};

/// Config file rejected; message carries the offending line number.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace zigzag

#endif
