#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace debranges {

/// Base class for all numerical failures raised by this library.
class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Power-series inversion requested on a series with vanishing constant term.
class SingularSeriesError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

/// An evaluator returned a non-finite value.
class EvaluationError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

/// An iterative scheme hit its resolution cap before reaching tolerance.
/// Carries the best estimate obtained so far.
class ConvergenceError : public NumericsError {
public:
    ConvergenceError(const std::string& what, std::complex<double> best,
                     double residual)
        : NumericsError(what), best_estimate(best), residual(residual) {}
    std::complex<double> best_estimate;
    double residual;
};

/// Raised when an integral or node sum shows non-decreasing block
/// contributions, i.e. the quantity diverges.  Deliberately triggered by
/// the A,B-not-in-H(E) diagnostic.
class DivergenceSignal : public NumericsError {
public:
    DivergenceSignal(const std::string& what, double partial, double window)
        : NumericsError(what), partial_sum(partial), window(window) {}
    double partial_sum;
    double window;
};

/// Phase derivative was found non-positive where monotonicity is required.
class MonotonicityError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

/// Argument outside the numerically supported range.
class RangeError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

/// A point claimed to be a node fails the node criterion.
class InvalidNodeError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

/// A node where B' is numerically indistinguishable from zero.
class DegenerateNodeError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

} // namespace debranges
