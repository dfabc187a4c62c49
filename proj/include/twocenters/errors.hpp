#ifndef TWOCENTERS_ERRORS_HPP
#define TWOCENTERS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twocenters {

/// Base class for all failures raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input value (mass ratio, energy sign, tolerance, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at one of the two attracting centers.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Coordinate transformation requested on a locus where the chart degenerates.
class ChartSingularity : public Error {
public:
    using Error::Error;
};

/// Energy outside the band an operation is defined on.
class BandError : public Error {
public:
    using Error::Error;
};

/// Energy coincides with a band transition value (within tolerance).
class BandEdgeError : public Error {
public:
    using Error::Error;
};

/// Conserved-quantity drift exceeded the accepted bound during integration.
class ToleranceExceeded : public Error {
public:
    using Error::Error;
};

/// Initial condition does not satisfy the zero-level constraint.
class NonzeroQError : public Error {
public:
    using Error::Error;
};

/// Requested integral-plane point carries no motion (or none for the component).
class InadmissiblePoint : public Error {
public:
    using Error::Error;
};

/// Oscillation cell has a double-root turning point; the period diverges.
class DegenerateCell : public Error {
public:
    using Error::Error;
};

/// Point sits on a critical curve where cells degenerate.
class CriticalPointError : public Error {
public:
    using Error::Error;
};

/// Two independent cycle-counting methods disagreed on a closed orbit.
class InconsistentCounts : public Error {
public:
    using Error::Error;
};

/// No return to the initial state within tolerance near the predicted time.
class NoClosure : public Error {
public:
    using Error::Error;
};

/// A certification run failed; details in the message.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

/// Operation is undefined at equal masses by convention.
class ExplicitlyDegenerate : public Error {
public:
    using Error::Error;
};

} // namespace twocenters

#endif
