/** \file    errors.h
    \brief   Exception types raised by the toric library
*/
#pragma once
#include <stdexcept>
#include <string>

namespace toric {

/// Base class of all errors raised by the library
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Matrix or vector dimensions do not fit together
class ShapeError : public Error { using Error::Error; };

/// A matrix that must have full rank does not
class RankError : public Error { using Error::Error; };

/// The presentation is not smooth: no integral right inverse or a vertex with |det| != 1
class NonSmoothError : public Error { using Error::Error; };

/// A point lies outside the domain of an operation
class DomainError : public Error { using Error::Error; };

/// An iterative solver failed to reach its tolerance
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double bestResidual) :
        Error(msg), residual(bestResidual) {}
    double residual;  ///< smallest residual reached before giving up
};

/// A matrix is too ill-conditioned to be inverted reliably
class ConditioningError : public Error { using Error::Error; };

/// Supplied data violate an identity of the presentation (for instance B A != I)
class ValidationError : public Error { using Error::Error; };

/// The anchor set supplied to kappa_from_level does not pin down kappa
class AnchorError : public Error { using Error::Error; };

/// Configuration or command-line input could not be parsed
class ParseError : public Error { using Error::Error; };

}  // namespace toric
