#pragma once

#include <stdexcept>
#include <string>

namespace gidar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (branch cut, bad parameter).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Numerical Laplace inversion produced a non-finite value or missed tolerance.
class InversionError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Root finder could not bracket or converge.
class RootError : public Error {
public:
    using Error::Error;
};

/// Input data cannot support the requested estimate (e.g. constant series).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// The ratio transform does not define a probability law.
class InvalidLawError : public Error {
public:
    using Error::Error;
};

class UnsupportedFamilyError : public Error {
public:
    using Error::Error;
};

}  // namespace gidar
